// Test-only numerical oracles, independent of the library's solve paths.
#ifndef PMG_TESTS_TEST_ORACLES_HPP
#define PMG_TESTS_TEST_ORACLES_HPP

#include <cmath>
#include <vector>

#include "pmg/dense.hpp"
#include "pmg/linalg.hpp"

namespace pmg_test {

using pmg::DenseMatrix;
using pmg::index_t;
using pmg::Vector;

/// Eigenvalues of a symmetric matrix by the cyclic Jacobi rotation method.
inline std::vector<double> jacobi_eigenvalues(DenseMatrix a, double tol = 1e-13,
                                              int max_sweeps = 100) {
  const index_t n = a.n;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (index_t i = 0; i < n; ++i)
      for (index_t j = i + 1; j < n; ++j) off += a(i, j) * a(i, j);
    double diag = 0.0;
    for (index_t i = 0; i < n; ++i) diag += a(i, i) * a(i, i);
    if (off <= tol * tol * std::max(diag, 1.0)) break;
    for (index_t p = 0; p < n; ++p) {
      for (index_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (index_t k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (index_t k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  std::vector<double> ev(n);
  for (index_t i = 0; i < n; ++i) ev[i] = a(i, i);
  return ev;
}

inline double max_abs_eigenvalue(const DenseMatrix& a) {
  double m = 0.0;
  for (double v : jacobi_eigenvalues(a)) m = std::max(m, std::abs(v));
  return m;
}

inline DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix c(a.n);
  for (index_t i = 0; i < a.n; ++i)
    for (index_t k = 0; k < a.n; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (index_t j = 0; j < a.n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline DenseMatrix dense_identity(index_t n) {
  DenseMatrix m(n);
  for (index_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

/// Dense P_m(B) via the fourth-kind Chebyshev recursion.
inline DenseMatrix dense_poly_pm(const DenseMatrix& b, index_t m) {
  const index_t n = b.n;
  DenseMatrix prev = dense_identity(n);
  if (m == 0) return prev;
  DenseMatrix cur(n);  // I - (4/3) B
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j < n; ++j)
      cur(i, j) = (i == j ? 1.0 : 0.0) - 4.0 / 3.0 * b(i, j);
  for (index_t s = 2; s <= m; ++s) {
    DenseMatrix im2b(n);  // I - 2B
    for (index_t i = 0; i < n; ++i)
      for (index_t j = 0; j < n; ++j)
        im2b(i, j) = (i == j ? 1.0 : 0.0) - 2.0 * b(i, j);
    DenseMatrix next = matmul(im2b, cur);
    const double ca = (4.0 * s - 2.0) / (2.0 * s + 1.0);
    const double cb = (2.0 * s - 3.0) / (2.0 * s + 1.0);
    for (index_t i = 0; i < n; ++i)
      for (index_t j = 0; j < n; ++j)
        next(i, j) = ca * next(i, j) - cb * prev(i, j);
    prev = cur;
    cur = next;
  }
  return cur;
}

inline Vector dense_apply(const DenseMatrix& a, const Vector& x) {
  Vector y(a.n, 0.0);
  for (index_t i = 0; i < a.n; ++i)
    for (index_t j = 0; j < a.n; ++j) y[i] += a(i, j) * x[j];
  return y;
}

}  // namespace pmg_test

#endif
