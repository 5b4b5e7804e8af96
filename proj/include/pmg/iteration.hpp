#ifndef PMG_ITERATION_HPP
#define PMG_ITERATION_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmg/linalg.hpp"

namespace pmg {

struct IterationResult {
  Vector z;
  index_t n_iterations = 0;  // iterations to reach eps * ||r0||
  double rate = 0.0;         // asymptotic geometric-mean residual reduction
  bool converged = false;
};

struct IterationError : std::runtime_error {
  IterationResult partial;
  IterationError(const std::string& what, IterationResult r)
      : std::runtime_error(what), partial(std::move(r)) {}
};

struct RateMeasurement {
  index_t tail = 20;     // extra cycles measured past convergence
  double floor = 1e-13;  // stop the tail at floor * ||r0||
  index_t warmup = 5;    // fallback: skip min(warmup, N/2) cycles
};

/// Asymptotic residual-reduction factor of a linear cycle, measured on the
/// homogeneous problem (f = 0) with per-step renormalization: the iterate is
/// exactly the error, so the quotients ||A z_{i}|| / ||A z_{i-1}|| converge
/// to the spectral radius of the cycle's error propagator without hitting
/// the floating-point floor. Stops once a sliding geometric-mean window
/// stabilizes.
struct RateProbe {
  index_t window = 10;
  double drift_tol = 2e-4;
  index_t min_cycles = 60;
  index_t max_cycles = 600;
};

inline double measure_asymptotic_rate(
    const std::function<Vector(const Vector&, const Vector&)>& cycle,
    const CsrMatrix& a, const Vector& z_start, const RateProbe& probe = {}) {
  const Vector zero(a.n_rows, 0.0);
  Vector z = z_start;
  {
    const double r0 = norm2(spmv(a, z));
    if (r0 == 0.0)
      throw std::invalid_argument("measure_asymptotic_rate: start vector in kernel");
    scale(1.0 / r0, z);
  }
  std::vector<double> logq;
  double prev_mean = -1.0;
  for (index_t i = 0; i < probe.max_cycles; ++i) {
    z = cycle(zero, z);
    const double q = norm2(spmv(a, z));
    if (q == 0.0) return 0.0;
    scale(1.0 / q, z);
    logq.push_back(std::log(q));
    // compare disjoint windows; overlapping ones barely move by construction
    if (logq.size() >= probe.min_cycles && logq.size() % probe.window == 0) {
      double s = 0.0;
      for (index_t j = logq.size() - probe.window; j < logq.size(); ++j)
        s += logq[j];
      const double mean = std::exp(s / static_cast<double>(probe.window));
      if (prev_mean >= 0.0 && std::abs(mean - prev_mean) < probe.drift_tol)
        return mean;
      prev_mean = mean;
    }
  }
  return prev_mean;
}

/// Iterate a linear fixed-point cycle until ||f - A z|| <= eps ||f - A z0||.
/// N_it counts iterations to the stopping rule; the reported rate is the
/// geometric-mean residual reduction over a post-convergence tail (the first
/// cycles run super-asymptotically and would bias the plain mean).
inline IterationResult iterate_to_tolerance(
    const std::function<Vector(const Vector&, const Vector&)>& cycle,
    const CsrMatrix& a, const Vector& f, const Vector& z0, double eps = 1e-8,
    index_t max_iter = 500, const RateMeasurement& rm = {}) {
  if (!(eps > 0.0 && eps < 1.0))
    throw std::invalid_argument("iterate_to_tolerance: eps must be in (0,1)");
  Vector z = z0;
  auto residual_norm = [&](const Vector& v) {
    Vector r = spmv(a, v);
    for (index_t j = 0; j < r.size(); ++j) r[j] = f[j] - r[j];
    return norm2(r);
  };
  std::vector<double> res{residual_norm(z)};
  if (res[0] == 0.0)
    throw std::invalid_argument("iterate_to_tolerance: initial residual is zero");
  index_t n_it = 0;
  while (true) {
    z = cycle(f, z);
    res.push_back(residual_norm(z));
    const index_t n = res.size() - 1;
    if (res[n] > 10.0 * res[0]) {
      IterationResult r{std::move(z), n, 0.0, false};
      throw IterationError("iterate_to_tolerance: divergence (residual grew 10x)",
                           std::move(r));
    }
    if (n_it == 0 && res[n] <= eps * res[0]) n_it = n;
    if (n_it == 0 && n >= max_iter) {
      IterationResult r{std::move(z), n, 0.0, false};
      r.rate = std::exp(std::log(res[n] / res[0]) / static_cast<double>(n));
      throw IterationError("iterate_to_tolerance: max_iter exceeded",
                           std::move(r));
    }
    if (n_it > 0 && (n - n_it >= rm.tail || res[n] <= rm.floor * res[0])) break;
  }
  const index_t n = res.size() - 1;
  double rate;
  if (n - n_it >= 3) {
    rate = std::exp(std::log(res[n] / res[n_it]) / static_cast<double>(n - n_it));
  } else {
    const index_t w = std::min<index_t>(rm.warmup, n / 2);
    rate = std::exp(std::log(res[n] / res[w]) / static_cast<double>(n - w));
  }
  return {std::move(z), n_it, rate, true};
}

}  // namespace pmg

#endif
