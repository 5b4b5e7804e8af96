#ifndef PMG_DG_SPACE_HPP
#define PMG_DG_SPACE_HPP

#include <algorithm>
#include <array>
#include <stdexcept>
#include <vector>

#include "pmg/legendre.hpp"
#include "pmg/mesh.hpp"

namespace pmg {

using MultiIndex = std::array<int, 3>;  // degrees per axis; unused axes 0

inline int max_degree(const MultiIndex& s, int dim) {
  int m = 0;
  for (int i = 0; i < dim; ++i) m = std::max(m, s[i]);
  return m;
}

/// Local basis order: by shell ||sigma||_inf ascending, lexicographic within
/// a shell. Level k-1 indices are a prefix of level k (hierarchical nesting).
inline std::vector<MultiIndex> local_basis_order(int k, int dim) {
  if (k < 0) throw std::invalid_argument("local_basis_order: negative degree");
  std::vector<MultiIndex> all;
  MultiIndex s{0, 0, 0};
  // enumerate lexicographically, then stable-partition by shell
  while (true) {
    all.push_back(s);
    int i = dim - 1;
    while (i >= 0) {
      if (++s[i] <= k) break;
      s[i] = 0;
      --i;
    }
    if (i < 0) break;
  }
  std::stable_sort(all.begin(), all.end(),
                   [dim](const MultiIndex& a, const MultiIndex& b) {
                     return max_degree(a, dim) < max_degree(b, dim);
                   });
  return all;
}

/// Broken tensor polynomial space U_k(T_h) with the (element, sigma) -> index
/// map. Numbering is element-major with the shell-ordered local basis.
class DgSpace {
 public:
  DgSpace(const TensorMesh& mesh, int level)
      : mesh_(&mesh), k_(level), basis_(local_basis_order(level, mesh.dim())) {
    if (level < 1) throw std::invalid_argument("DgSpace: level must be >= 1");
    if (level > legendre::kMaxDegree)
      throw std::invalid_argument("DgSpace: level above the degree cap");
  }

  const TensorMesh& mesh() const { return *mesh_; }
  int level() const { return k_; }
  int dim() const { return mesh_->dim(); }

  index_t local_dim() const { return basis_.size(); }  // (k+1)^d
  index_t global_dim() const { return mesh_->n_elements() * local_dim(); }
  const std::vector<MultiIndex>& local_basis() const { return basis_; }

  index_t global_index(index_t elem, index_t local) const {
    return elem * local_dim() + local;
  }

  /// Pointwise evaluation sum_sigma c_(T,sigma) Psi_T^sigma(x) for the
  /// element containing x.
  double evaluate(const Vector& coeffs, const Point& x) const {
    if (coeffs.size() != global_dim())
      throw std::invalid_argument("evaluate: coefficient size mismatch");
    const index_t elem = mesh_->locate(x);
    const Point xi = mesh_->affine_map_inverse(elem, x);
    std::array<std::vector<double>, 3> l1;
    for (int i = 0; i < dim(); ++i) legendre::eval_all(k_, xi[i], l1[i]);
    double v = 0.0;
    for (index_t b = 0; b < basis_.size(); ++b) {
      double phi = 1.0;
      for (int i = 0; i < dim(); ++i) phi *= l1[i][basis_[b][i]];
      v += coeffs[global_index(elem, b)] * phi;
    }
    return v;
  }

 private:
  const TensorMesh* mesh_;
  int k_;
  std::vector<MultiIndex> basis_;
};

}  // namespace pmg

#endif
