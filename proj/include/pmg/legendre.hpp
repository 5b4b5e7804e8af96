#ifndef PMG_LEGENDRE_HPP
#define PMG_LEGENDRE_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pmg/linalg.hpp"

namespace pmg {
namespace legendre {

constexpr int kMaxDegree = 64;
constexpr double kPi = 3.14159265358979323846;

/// l_sigma(xi) on [-1,1] by the three-term recurrence; l_sigma(1) = 1.
inline double eval(int sigma, double xi) {
  if (sigma < 0 || sigma > kMaxDegree)
    throw std::invalid_argument("legendre::eval: degree out of range");
  if (xi < -1.0 || xi > 1.0)
    throw std::invalid_argument("legendre::eval: xi outside [-1,1]");
  if (sigma == 0) return 1.0;
  double lm = 1.0, l = xi;
  for (int s = 2; s <= sigma; ++s) {
    const double ln = ((2 * s - 1) * xi * l - (s - 1) * lm) / s;
    lm = l;
    l = ln;
  }
  return l;
}

/// Derivative l'_sigma(xi) via the recurrence
/// (1-xi^2) l'_s = s (l_{s-1} - xi l_s), with pointwise limits at xi = +-1.
inline double deriv(int sigma, double xi) {
  if (sigma < 0 || sigma > kMaxDegree)
    throw std::invalid_argument("legendre::deriv: degree out of range");
  if (xi < -1.0 || xi > 1.0)
    throw std::invalid_argument("legendre::deriv: xi outside [-1,1]");
  if (sigma == 0) return 0.0;
  const double omx2 = 1.0 - xi * xi;
  if (omx2 < 1e-12) {
    const double end = 0.5 * sigma * (sigma + 1);
    return xi > 0.0 ? end : ((sigma % 2 == 0) ? -end : end);
  }
  return sigma * (eval(sigma - 1, xi) - xi * eval(sigma, xi)) / omx2;
}

/// Values l_0..l_max at xi in one recurrence pass.
inline void eval_all(int max_degree, double xi, std::vector<double>& out) {
  out.resize(max_degree + 1);
  out[0] = 1.0;
  if (max_degree >= 1) out[1] = xi;
  for (int s = 2; s <= max_degree; ++s)
    out[s] = ((2 * s - 1) * xi * out[s - 1] - (s - 1) * out[s - 2]) / s;
}

/// Derivatives l'_0..l'_max at xi via l'_s = l'_{s-2} + (2s-1) l_{s-1}.
inline void deriv_all(int max_degree, double xi, std::vector<double>& out) {
  std::vector<double> l;
  eval_all(max_degree, xi, l);
  out.assign(max_degree + 1, 0.0);
  if (max_degree >= 1) out[1] = 1.0;
  for (int s = 2; s <= max_degree; ++s)
    out[s] = out[s - 2] + (2 * s - 1) * l[s - 1];
}

/// (l_sigma, l_sigma')_{[-1,1]} = 2/(2 sigma + 1) delta.
inline double reference_mass_entry(int sigma, int sigma_p) {
  if (sigma < 0 || sigma_p < 0)
    throw std::invalid_argument("reference_mass_entry: negative degree");
  return sigma == sigma_p ? 2.0 / (2 * sigma + 1) : 0.0;
}

/// (l'_sigma, l'_sigma')_{[-1,1]} = min(min+1) for even degree gap, else 0.
inline double reference_stiff_entry(int sigma, int sigma_p) {
  if (sigma < 0 || sigma_p < 0)
    throw std::invalid_argument("reference_stiff_entry: negative degree");
  if ((sigma - sigma_p) % 2 != 0) return 0.0;
  const double t = std::min(sigma, sigma_p);
  return t * (t + 1);
}

struct QuadratureRule {
  std::vector<double> nodes;    // in (-1,1)
  std::vector<double> weights;  // positive, sum to 2
};

/// Gauss-Legendre rule with q nodes: roots of l_q by Newton iteration.
inline QuadratureRule gauss_rule(int q) {
  if (q < 1 || q > kMaxDegree)
    throw std::invalid_argument("gauss_rule: order out of range");
  QuadratureRule rule;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  for (int i = 0; i < (q + 1) / 2; ++i) {
    // Chebyshev-based initial guess for the i-th root (descending)
    double x = std::cos(kPi * (i + 0.75) / (q + 0.5));
    for (int it = 0; it < 100; ++it) {
      const double f = eval(q, x);
      const double df = deriv(q, x);
      const double dx = f / df;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const double dl = deriv(q, x);
    const double w = 2.0 / ((1.0 - x * x) * dl * dl);
    rule.nodes[i] = -x;
    rule.nodes[q - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[q - 1 - i] = w;
  }
  if (q % 2 == 1) rule.nodes[q / 2] = 0.0;
  return rule;
}

}  // namespace legendre
}  // namespace pmg

#endif
