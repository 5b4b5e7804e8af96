#ifndef PMG_KRYLOV_HPP
#define PMG_KRYLOV_HPP

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "pmg/iteration.hpp"
#include "pmg/linalg.hpp"

namespace pmg {

struct GmresConfig {
  double rel_tol = 1e-8;
  index_t max_iterations = 2000;  // full GMRES, no restart
  bool monitor_orthogonality = false;
};

struct GmresResult {
  Vector u;
  index_t iterations = 0;
  bool converged = false;
  double true_relative_residual = 0.0;
  double ortho_defect = 0.0;  // max |V^T V - I| when monitored
};

using Preconditioner = std::function<Vector(const Vector&)>;

/// Right-preconditioned full GMRES with modified Gram-Schmidt and Givens
/// rotations. The reported residual is the true residual of the original
/// system.
inline GmresResult gmres_solve(const CsrMatrix& a, const Vector& f,
                               const Preconditioner& prec = nullptr,
                               const GmresConfig& config = {}) {
  const index_t n = a.n_rows;
  if (f.size() != n) throw std::invalid_argument("gmres_solve: size mismatch");
  const double fnorm = norm2(f);
  GmresResult out;
  out.u.assign(n, 0.0);
  if (fnorm == 0.0) {
    out.converged = true;
    return out;
  }

  auto apply_op = [&](const Vector& v) {
    return prec ? spmv(a, prec(v)) : spmv(a, v);
  };

  std::vector<Vector> basis;       // v_1 .. v_{j+1}
  std::vector<std::vector<double>> hess;  // hess[j] = column j (size j+2)
  std::vector<double> cs, sn, g;

  Vector r = f;  // x0 = 0
  double beta = norm2(r);
  scale(1.0 / beta, r);
  basis.push_back(std::move(r));
  g.push_back(beta);

  index_t j = 0;
  for (; j < config.max_iterations; ++j) {
    Vector w = apply_op(basis[j]);
    std::vector<double> h(j + 2, 0.0);
    for (index_t i = 0; i <= j; ++i) {
      h[i] = dot(w, basis[i]);
      axpy(-h[i], basis[i], w);
    }
    h[j + 1] = norm2(w);
    if (h[j + 1] > 0.0) scale(1.0 / h[j + 1], w);
    basis.push_back(std::move(w));

    // apply existing rotations, then a new one to zero h[j+1]
    for (index_t i = 0; i < j; ++i) {
      const double t = cs[i] * h[i] + sn[i] * h[i + 1];
      h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
      h[i] = t;
    }
    const double denom = std::hypot(h[j], h[j + 1]);
    cs.push_back(denom == 0.0 ? 1.0 : h[j] / denom);
    sn.push_back(denom == 0.0 ? 0.0 : h[j + 1] / denom);
    h[j] = denom;
    h[j + 1] = 0.0;
    g.push_back(-sn[j] * g[j]);
    g[j] = cs[j] * g[j];
    hess.push_back(std::move(h));

    if (std::abs(g[j + 1]) <= config.rel_tol * fnorm) {
      ++j;
      break;
    }
  }

  // back substitution for y, then u = (prec?) V y
  const index_t m = j;
  std::vector<double> y(m, 0.0);
  for (index_t i = m; i-- > 0;) {
    double s = g[i];
    for (index_t l = i + 1; l < m; ++l) s -= hess[l][i] * y[l];
    y[i] = s / hess[i][i];
  }
  Vector vy(n, 0.0);
  for (index_t i = 0; i < m; ++i) axpy(y[i], basis[i], vy);
  out.u = prec ? prec(vy) : vy;
  out.iterations = m;

  Vector res = spmv(a, out.u);
  for (index_t i = 0; i < n; ++i) res[i] = f[i] - res[i];
  out.true_relative_residual = norm2(res) / fnorm;
  out.converged = out.true_relative_residual <= config.rel_tol * 1.000001;

  if (config.monitor_orthogonality) {
    double defect = 0.0;
    for (index_t i = 0; i < basis.size(); ++i)
      for (index_t l = i; l < basis.size(); ++l) {
        const double v = dot(basis[i], basis[l]) - (i == l ? 1.0 : 0.0);
        defect = std::max(defect, std::abs(v));
      }
    out.ortho_defect = defect;
  }

  if (!out.converged && m >= config.max_iterations)
    throw IterationError("gmres_solve: max_iterations exceeded",
                         {out.u, out.iterations, 0.0, false});
  return out;
}

}  // namespace pmg

#endif
