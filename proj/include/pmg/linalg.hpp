#ifndef PMG_LINALG_HPP
#define PMG_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace pmg {

using Vector = std::vector<double>;
using index_t = std::size_t;

// ---------------------------------------------------------------- vectors

inline double dot(const Vector& a, const Vector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  double s = 0.0;
  for (index_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(const Vector& a) { return std::sqrt(dot(a, a)); }

inline void axpy(double alpha, const Vector& x, Vector& y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
  for (index_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

inline void scale(double alpha, Vector& x) {
  for (double& v : x) v *= alpha;
}

// Deterministic uniform(-1,1) stream; splitmix64 keeps results identical
// across platforms (std::uniform_real_distribution is not pinned by the
// standard).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  double uniform_pm1() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z ^= z >> 31;
    const double u = static_cast<double>(z >> 11) * 0x1.0p-53;  // [0,1)
    return 2.0 * u - 1.0;
  }

  Vector uniform_pm1_vector(index_t n) {
    Vector v(n);
    for (double& x : v) x = uniform_pm1();
    return v;
  }

 private:
  std::uint64_t state_;
};

// ---------------------------------------------------------------- CSR

struct Triplet {
  index_t row;
  index_t col;
  double value;
};

/// Compressed sparse row matrix with strictly increasing column indices per
/// row (canonical form). Immutable after construction in normal use.
struct CsrMatrix {
  index_t n_rows = 0;
  index_t n_cols = 0;
  std::vector<index_t> row_offsets;  // size n_rows + 1
  std::vector<index_t> col_indices;
  std::vector<double> values;

  index_t nnz() const { return values.size(); }

  static CsrMatrix identity(index_t n) {
    CsrMatrix a;
    a.n_rows = a.n_cols = n;
    a.row_offsets.resize(n + 1);
    a.col_indices.resize(n);
    a.values.assign(n, 1.0);
    for (index_t i = 0; i <= n; ++i) a.row_offsets[i] = i;
    for (index_t i = 0; i < n; ++i) a.col_indices[i] = i;
    return a;
  }

  /// Build from triplets: duplicates are accumulated, rows sorted by column.
  static CsrMatrix from_triplets(index_t n_rows, index_t n_cols,
                                 std::vector<Triplet> t) {
    for (const Triplet& e : t) {
      if (e.row >= n_rows || e.col >= n_cols)
        throw std::invalid_argument("from_triplets: index out of range");
    }
    std::sort(t.begin(), t.end(), [](const Triplet& a, const Triplet& b) {
      return std::tie(a.row, a.col) < std::tie(b.row, b.col);
    });
    CsrMatrix a;
    a.n_rows = n_rows;
    a.n_cols = n_cols;
    a.row_offsets.assign(n_rows + 1, 0);
    for (index_t i = 0; i < t.size();) {
      index_t j = i + 1;
      double v = t[i].value;
      while (j < t.size() && t[j].row == t[i].row && t[j].col == t[i].col)
        v += t[j++].value;
      a.col_indices.push_back(t[i].col);
      a.values.push_back(v);
      ++a.row_offsets[t[i].row + 1];
      i = j;
    }
    for (index_t r = 0; r < n_rows; ++r)
      a.row_offsets[r + 1] += a.row_offsets[r];
    return a;
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : values) m = std::max(m, std::abs(v));
    return m;
  }

  /// Remove entries with |a_ij| <= rel_tol * max|a_ij|.
  void drop_small(double rel_tol) {
    const double thresh = rel_tol * max_abs();
    std::vector<index_t> offs(n_rows + 1, 0);
    index_t w = 0;
    for (index_t r = 0; r < n_rows; ++r) {
      for (index_t p = row_offsets[r]; p < row_offsets[r + 1]; ++p) {
        if (std::abs(values[p]) > thresh) {
          col_indices[w] = col_indices[p];
          values[w] = values[p];
          ++w;
        }
      }
      offs[r + 1] = w;
    }
    col_indices.resize(w);
    values.resize(w);
    row_offsets = std::move(offs);
  }

  Vector diagonal() const {
    if (n_rows != n_cols) throw std::invalid_argument("diagonal: not square");
    Vector d(n_rows, 0.0);
    for (index_t r = 0; r < n_rows; ++r)
      for (index_t p = row_offsets[r]; p < row_offsets[r + 1]; ++p)
        if (col_indices[p] == r) d[r] = values[p];
    return d;
  }

  CsrMatrix transposed() const {
    std::vector<Triplet> t;
    t.reserve(nnz());
    for (index_t r = 0; r < n_rows; ++r)
      for (index_t p = row_offsets[r]; p < row_offsets[r + 1]; ++p)
        t.push_back({col_indices[p], r, values[p]});
    return from_triplets(n_cols, n_rows, std::move(t));
  }

  double operator()(index_t r, index_t c) const {
    for (index_t p = row_offsets[r]; p < row_offsets[r + 1]; ++p)
      if (col_indices[p] == c) return values[p];
    return 0.0;
  }

  /// Principal submatrix on a sorted index subset (rows and columns alike).
  CsrMatrix submatrix(const std::vector<index_t>& keep) const {
    std::vector<index_t> where(n_cols, static_cast<index_t>(-1));
    for (index_t i = 0; i < keep.size(); ++i) where[keep[i]] = i;
    CsrMatrix a;
    a.n_rows = a.n_cols = keep.size();
    a.row_offsets.assign(keep.size() + 1, 0);
    for (index_t i = 0; i < keep.size(); ++i) {
      const index_t r = keep[i];
      for (index_t p = row_offsets[r]; p < row_offsets[r + 1]; ++p) {
        const index_t c = where[col_indices[p]];
        if (c != static_cast<index_t>(-1)) {
          a.col_indices.push_back(c);
          a.values.push_back(values[p]);
          ++a.row_offsets[i + 1];
        }
      }
    }
    for (index_t i = 0; i < keep.size(); ++i)
      a.row_offsets[i + 1] += a.row_offsets[i];
    return a;
  }
};

inline index_t nnz(const CsrMatrix& a) { return a.nnz(); }

/// y = A x with a fixed per-row summation order (deterministic).
inline Vector spmv(const CsrMatrix& a, const Vector& x) {
  if (a.n_cols != x.size()) throw std::invalid_argument("spmv: size mismatch");
  Vector y(a.n_rows, 0.0);
  for (index_t r = 0; r < a.n_rows; ++r) {
    double s = 0.0;
    for (index_t p = a.row_offsets[r]; p < a.row_offsets[r + 1]; ++p)
      s += a.values[p] * x[a.col_indices[p]];
    y[r] = s;
  }
  return y;
}

/// ||v||_{A,s} = sqrt(v^T A^s v); s = 0 is the Euclidean norm, s = 1 the
/// energy norm.
inline double a_norm(const CsrMatrix& a, int s, const Vector& v) {
  if (s == 0) return norm2(v);
  if (s != 1) throw std::invalid_argument("a_norm: s must be 0 or 1");
  const double q = dot(v, spmv(a, v));
  if (q < 0.0) throw std::runtime_error("a_norm: negative quadratic form (matrix not SPD)");
  return std::sqrt(q);
}

// ---------------------------------------------------------------- spectra

struct NonConvergenceError : std::runtime_error {
  double best_estimate;
  NonConvergenceError(const std::string& what, double best)
      : std::runtime_error(what), best_estimate(best) {}
};

/// Dominant eigenvalue of a symmetric operator by power iteration with a
/// seeded uniform(-1,1) start vector.
inline double power_iteration_symmetric(
    const std::function<Vector(const Vector&)>& apply, index_t n, double tol,
    index_t max_iter, std::uint64_t seed) {
  if (tol <= 0.0) throw std::invalid_argument("power_iteration: tol must be > 0");
  Rng rng(seed);
  Vector v = rng.uniform_pm1_vector(n);
  scale(1.0 / norm2(v), v);
  double lambda = 0.0;
  for (index_t it = 0; it < max_iter; ++it) {
    Vector w = apply(v);
    const double nl = norm2(w);
    if (nl == 0.0) return 0.0;  // operator annihilates the start vector
    scale(1.0 / nl, w);
    if (std::abs(nl - lambda) <= tol * nl) return nl;
    lambda = nl;
    v = std::move(w);
  }
  throw NonConvergenceError("power_iteration: no convergence in " +
                                std::to_string(max_iter) + " iterations",
                            lambda);
}

inline double power_iteration_symmetric(const CsrMatrix& a, double tol = 1e-6,
                                        index_t max_iter = 5000,
                                        std::uint64_t seed = 1234) {
  return power_iteration_symmetric(
      [&a](const Vector& v) { return spmv(a, v); }, a.n_rows, tol, max_iter,
      seed);
}

}  // namespace pmg

#endif
