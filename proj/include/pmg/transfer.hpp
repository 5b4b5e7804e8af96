#ifndef PMG_TRANSFER_HPP
#define PMG_TRANSFER_HPP

#include <stdexcept>
#include <vector>

#include "pmg/dg_space.hpp"
#include "pmg/linalg.hpp"

namespace pmg {

/// Prolongation (natural injection, 0/1 entries) and its transpose.
struct TransferPair {
  CsrMatrix P;  // fine x coarse
  CsrMatrix R;  // coarse x fine, R = P^T
};

/// Global indices of the coarse space's DOFs inside the fine space. With
/// element-major numbering and the shell-ordered local basis the coarse
/// locals are a per-element prefix.
inline std::vector<index_t> coarse_dof_indices(const DgSpace& fine,
                                               const DgSpace& coarse) {
  if (&fine.mesh() != &coarse.mesh())
    throw std::invalid_argument("coarse_dof_indices: spaces on different meshes");
  if (coarse.level() > fine.level())
    throw std::invalid_argument("coarse_dof_indices: coarse level above fine");
  const index_t nf = fine.local_dim();
  const index_t nc = coarse.local_dim();
  std::vector<index_t> idx;
  idx.reserve(coarse.global_dim());
  for (index_t e = 0; e < fine.mesh().n_elements(); ++e)
    for (index_t l = 0; l < nc; ++l) idx.push_back(e * nf + l);
  return idx;
}

inline TransferPair build_transfer(const DgSpace& fine, const DgSpace& coarse) {
  if (fine.level() != coarse.level() + 1)
    throw std::invalid_argument("build_transfer: levels must differ by one");
  const auto idx = coarse_dof_indices(fine, coarse);
  std::vector<Triplet> t;
  t.reserve(idx.size());
  for (index_t c = 0; c < idx.size(); ++c) t.push_back({idx[c], c, 1.0});
  TransferPair pair;
  pair.P = CsrMatrix::from_triplets(fine.global_dim(), coarse.global_dim(),
                                    std::move(t));
  pair.R = pair.P.transposed();
  return pair;
}

/// Inherited coarse operator: principal submatrix of the fine matrix on the
/// coarse DOF indices (index slicing, no multiplication).
inline CsrMatrix extract_inherited(const CsrMatrix& a_fine, const DgSpace& fine,
                                   const DgSpace& coarse) {
  if (a_fine.n_rows != fine.global_dim())
    throw std::invalid_argument("extract_inherited: matrix/space mismatch");
  return a_fine.submatrix(coarse_dof_indices(fine, coarse));
}

/// Restrict a fine vector to coarse DOFs (apply R).
inline Vector restrict_vector(const Vector& fine_v,
                              const std::vector<index_t>& coarse_idx) {
  Vector out(coarse_idx.size());
  for (index_t i = 0; i < coarse_idx.size(); ++i) out[i] = fine_v[coarse_idx[i]];
  return out;
}

/// Prolongate a coarse vector into a fine one (apply P).
inline void prolongate_add(const Vector& coarse_v,
                           const std::vector<index_t>& coarse_idx,
                           Vector& fine_v) {
  for (index_t i = 0; i < coarse_idx.size(); ++i)
    fine_v[coarse_idx[i]] += coarse_v[i];
}

}  // namespace pmg

#endif
