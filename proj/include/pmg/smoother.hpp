#ifndef PMG_SMOOTHER_HPP
#define PMG_SMOOTHER_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pmg/assembly.hpp"
#include "pmg/linalg.hpp"

namespace pmg {

enum class SmootherKind { kJacobi, kChebyshev4 };

struct SmootherConfig {
  SmootherKind kind = SmootherKind::kChebyshev4;
  index_t steps = 1;
  double omega = 0.0;        // 0 means auto-select
  double safety = 1.05;      // omega = 1 / (safety * rho_hat)
};

/// Damped Jacobi: z^i = z^{i-1} + omega D^{-1}(f - A z^{i-1}).
inline Vector jacobi_sweep(const CsrMatrix& a, const Vector& d_diag,
                           double omega, const Vector& f, const Vector& z0,
                           index_t m) {
  if (m < 1) throw std::invalid_argument("jacobi_sweep: m must be >= 1");
  if (omega <= 0.0) throw std::invalid_argument("jacobi_sweep: omega must be > 0");
  Vector z = z0;
  for (index_t i = 0; i < m; ++i) {
    Vector r = spmv(a, z);
    for (index_t j = 0; j < z.size(); ++j)
      z[j] += omega * (f[j] - r[j]) / d_diag[j];
  }
  return z;
}

/// Fourth-kind Chebyshev polynomial smoother:
///   w^0 = 0,
///   w^i = ((2i-3)/(2i+1)) w^{i-1} + ((8i-4)/(2i+1)) omega D^{-1}(f - A z^{i-1}),
///   z^i = z^{i-1} + w^i.
/// Error propagates by P_m(omega D^{-1} A).
inline Vector chebyshev4_sweep(const CsrMatrix& a, const Vector& d_diag,
                               double omega, const Vector& f, const Vector& z0,
                               index_t m) {
  if (m < 1) throw std::invalid_argument("chebyshev4_sweep: m must be >= 1");
  Vector z = z0;
  Vector w(z.size(), 0.0);
  for (index_t i = 1; i <= m; ++i) {
    const double c_w = (2.0 * i - 3.0) / (2.0 * i + 1.0);
    const double c_r = (8.0 * i - 4.0) / (2.0 * i + 1.0) * omega;
    Vector r = spmv(a, z);
    for (index_t j = 0; j < z.size(); ++j) {
      w[j] = c_w * w[j] + c_r * (f[j] - r[j]) / d_diag[j];
      z[j] += w[j];
    }
  }
  return z;
}

/// P_m(x): P_0 = 1, P_1 = 1 - 4x/3,
/// P_i = ((4i-2)/(2i+1))(1-2x) P_{i-1} - ((2i-3)/(2i+1)) P_{i-2}.
inline double poly_pm_eval(index_t m, double x) {
  if (m == 0) return 1.0;
  double pm1 = 1.0;
  double p = 1.0 - 4.0 * x / 3.0;
  for (index_t i = 2; i <= m; ++i) {
    const double pn = (4.0 * i - 2.0) / (2.0 * i + 1.0) * (1.0 - 2.0 * x) * p -
                      (2.0 * i - 3.0) / (2.0 * i + 1.0) * pm1;
    pm1 = p;
    p = pn;
  }
  return p;
}

/// Spectral radius estimate of D^{-1} A through the symmetric similar
/// operator D^{-1/2} A D^{-1/2}.
inline double estimate_damped_radius(const CsrMatrix& a, const Vector& d_diag,
                                     std::uint64_t seed = 1234,
                                     double tol = 1e-6, index_t max_iter = 5000) {
  Vector dis(d_diag.size());
  for (index_t i = 0; i < d_diag.size(); ++i) {
    if (!(d_diag[i] > 0.0))
      throw std::invalid_argument("estimate_damped_radius: nonpositive diagonal");
    dis[i] = 1.0 / std::sqrt(d_diag[i]);
  }
  auto apply = [&](const Vector& v) {
    Vector t(v.size());
    for (index_t i = 0; i < v.size(); ++i) t[i] = dis[i] * v[i];
    Vector s = spmv(a, t);
    for (index_t i = 0; i < v.size(); ++i) s[i] *= dis[i];
    return s;
  };
  return power_iteration_symmetric(apply, a.n_rows, tol, max_iter, seed);
}

/// omega = 1 / (safety * rho_hat(D^{-1}A)); keeps omega * rho <= 1 with margin.
inline double select_omega(const CsrMatrix& a, const Vector& d_diag,
                           std::uint64_t seed = 1234, double safety = 1.05) {
  return 1.0 / (safety * estimate_damped_radius(a, d_diag, seed));
}

/// Smoothing ratio S = ||M^{-1/2} A P_m(omega D^{-1}A) e||_{A,0} / ||e||_{A,1}
/// for a seeded, normalized random error vector e. P_m is applied through the
/// smoother's error-propagation identity (zero right-hand side).
inline double smoothing_ratio(const AssembledLevel& level, double omega,
                              index_t m, std::uint64_t seed) {
  Rng rng(seed);
  Vector e = rng.uniform_pm1_vector(level.A.n_rows);
  scale(1.0 / norm2(e), e);
  const Vector zero(e.size(), 0.0);
  const Vector y = chebyshev4_sweep(level.A, level.D_diag, omega, zero, e, m);
  Vector t = spmv(level.A, y);
  for (index_t i = 0; i < t.size(); ++i) t[i] /= std::sqrt(level.M_diag[i]);
  return norm2(t) / a_norm(level.A, 1, e);
}

}  // namespace pmg

#endif
