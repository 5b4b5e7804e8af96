#ifndef PMG_DENSE_HPP
#define PMG_DENSE_HPP

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pmg/linalg.hpp"

namespace pmg {

struct SingularMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Row-major square dense matrix.
struct DenseMatrix {
  index_t n = 0;
  std::vector<double> data;  // n*n

  DenseMatrix() = default;
  explicit DenseMatrix(index_t n_) : n(n_), data(n_ * n_, 0.0) {}

  double& operator()(index_t i, index_t j) { return data[i * n + j]; }
  double operator()(index_t i, index_t j) const { return data[i * n + j]; }

  static DenseMatrix from_csr(const CsrMatrix& a) {
    if (a.n_rows != a.n_cols) throw std::invalid_argument("from_csr: not square");
    DenseMatrix m(a.n_rows);
    for (index_t r = 0; r < a.n_rows; ++r)
      for (index_t p = a.row_offsets[r]; p < a.row_offsets[r + 1]; ++p)
        m(r, a.col_indices[p]) = a.values[p];
    return m;
  }
};

/// LDL^T factorization with symmetric diagonal pivoting. Intended for the
/// coarsest-level solve; refuses systems above 20000 unknowns.
class DenseFactorization {
 public:
  static constexpr index_t kMaxSize = 20000;

  explicit DenseFactorization(DenseMatrix a) : n_(a.n), m_(std::move(a)), perm_(n_) {
    if (n_ > kMaxSize)
      throw std::invalid_argument("DenseFactorization: system too large for a dense solve");
    for (index_t i = 0; i < n_; ++i) perm_[i] = i;
    factor();
  }

  explicit DenseFactorization(const CsrMatrix& a)
      : DenseFactorization(DenseMatrix::from_csr(a)) {}

  index_t size() const { return n_; }
  const std::vector<double>& pivots() const { return pivots_; }

  bool positive_definite() const {
    for (double d : pivots_)
      if (d <= 0.0) return false;
    return true;
  }

  Vector solve(const Vector& b) const {
    if (b.size() != n_) throw std::invalid_argument("solve: size mismatch");
    Vector y(n_);
    for (index_t i = 0; i < n_; ++i) y[i] = b[perm_[i]];
    // forward: L y = Pb
    for (index_t i = 0; i < n_; ++i) {
      double s = y[i];
      const double* row = &m_.data[i * n_];
      for (index_t j = 0; j < i; ++j) s -= row[j] * y[j];
      y[i] = s;
    }
    for (index_t i = 0; i < n_; ++i) y[i] /= pivots_[i];
    // backward: L^T x = y
    for (index_t ii = n_; ii-- > 0;) {
      double s = y[ii];
      for (index_t j = ii + 1; j < n_; ++j) s -= m_.data[j * n_ + ii] * y[j];
      y[ii] = s;
    }
    Vector x(n_);
    for (index_t i = 0; i < n_; ++i) x[perm_[i]] = y[i];
    return x;
  }

 private:
  void factor() {
    double scale = 0.0;
    for (index_t i = 0; i < n_; ++i) scale = std::max(scale, std::abs(m_(i, i)));
    if (scale == 0.0) scale = 1.0;
    pivots_.resize(n_);
    std::vector<double> c(n_);  // column k scaled by 1/d
    for (index_t k = 0; k < n_; ++k) {
      // symmetric pivot: largest remaining |diagonal|
      index_t piv = k;
      for (index_t i = k + 1; i < n_; ++i)
        if (std::abs(m_(i, i)) > std::abs(m_(piv, piv))) piv = i;
      if (piv != k) swap_sym(k, piv);  // piv > k by construction
      const double d = m_(k, k);
      if (std::abs(d) <= 1e-14 * scale)
        throw SingularMatrixError("DenseFactorization: zero pivot (singular matrix)");
      pivots_[k] = d;
      for (index_t j = k + 1; j < n_; ++j) c[j] = m_(j, k) / d;
      // rank-1 update of the trailing lower triangle
      for (index_t i = k + 1; i < n_; ++i) {
        const double aik = m_(i, k);
        double* rowi = &m_.data[i * n_];
        for (index_t j = k + 1; j <= i; ++j) rowi[j] -= aik * c[j];
      }
      // store L in column k
      for (index_t i = k + 1; i < n_; ++i) m_(i, k) = c[i];
    }
  }

  // Symmetric swap of k and piv (piv > k) with only the lower triangle kept
  // valid: permute the computed L rows, then reflect the trailing block.
  void swap_sym(index_t k, index_t piv) {
    std::swap(perm_[k], perm_[piv]);
    for (index_t j = 0; j < k; ++j) std::swap(m_(k, j), m_(piv, j));
    std::swap(m_(k, k), m_(piv, piv));
    for (index_t i = k + 1; i < piv; ++i) std::swap(m_(i, k), m_(piv, i));
    for (index_t i = piv + 1; i < n_; ++i) std::swap(m_(i, k), m_(i, piv));
  }

  index_t n_;
  DenseMatrix m_;
  std::vector<index_t> perm_;
  std::vector<double> pivots_;
};

/// Exact solve for coarsest-level and reference systems.
inline Vector direct_solve(const CsrMatrix& a, const Vector& b) {
  if (a.n_rows != a.n_cols) throw std::invalid_argument("direct_solve: not square");
  DenseFactorization f(a);
  return f.solve(b);
}

}  // namespace pmg

#endif
