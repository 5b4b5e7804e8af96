#ifndef PMG_MULTIGRID_HPP
#define PMG_MULTIGRID_HPP

#include <cmath>
#include <cstdint>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "pmg/assembly.hpp"
#include "pmg/iteration.hpp"
#include "pmg/dense.hpp"
#include "pmg/dg_space.hpp"
#include "pmg/smoother.hpp"
#include "pmg/transfer.hpp"

namespace pmg {

enum class BilinearForm { kInherited, kNonInherited };

/// Smoothing-step schedule over hierarchy levels.
struct MSchedule {
  enum Kind { kConstant, kLevelDegree, kCeilPow } kind = kConstant;
  index_t constant = 1;
  double gamma = 1.0;

  static MSchedule fixed(index_t m) { return {kConstant, m, 1.0}; }
  static MSchedule level_degree() { return {kLevelDegree, 0, 1.0}; }
  static MSchedule ceil_pow(double gamma) { return {kCeilPow, 0, gamma}; }

  index_t at(int degree) const {
    switch (kind) {
      case kConstant:
        return constant;
      case kLevelDegree:
        return static_cast<index_t>(degree);
      case kCeilPow:
        return static_cast<index_t>(
            std::ceil(std::pow(static_cast<double>(degree), gamma)));
    }
    return constant;
  }
};

struct HierarchyConfig {
  int levels = 2;  // K, 2 <= K <= p; coarsest degree = p - K + 1
  BilinearForm form = BilinearForm::kNonInherited;
  MSchedule schedule = MSchedule::fixed(1);
  PenaltyConfig penalty;
  double omega_safety = 1.05;
  std::uint64_t omega_seed = 1234;
};

struct MgLevel {
  int k = 0;
  std::unique_ptr<DgSpace> space;
  CsrMatrix A;
  Vector D_diag;
  Vector M_diag;
  double omega = 0.0;
  index_t m = 1;
  std::vector<index_t> coarse_idx;  // next-coarser DOFs inside this level
};

/// p-hierarchy on a fixed mesh: levels p down to p-K+1, coarsest solved
/// directly. Immutable after construction.
class MgHierarchy {
 public:
  MgHierarchy(const DgSpace& fine_space, const CsrMatrix& a_fine,
              const Vector& m_diag_fine, const HierarchyConfig& config)
      : config_(config) {
    const int p = fine_space.level();
    const int K = config.levels;
    if (K < 2) throw std::invalid_argument("MgHierarchy: need at least two levels");
    if (p - K + 1 < 1)
      throw std::invalid_argument("MgHierarchy: coarsest degree would drop below 1");

    levels_.resize(K);
    for (int i = 0; i < K; ++i) {
      MgLevel& lvl = levels_[i];
      lvl.k = p - i;
      lvl.space = std::make_unique<DgSpace>(fine_space.mesh(), lvl.k);
      lvl.m = config.schedule.at(lvl.k);
      if (i == 0) {
        lvl.A = a_fine;
        lvl.M_diag = m_diag_fine;
      } else if (config.form == BilinearForm::kInherited) {
        lvl.A = extract_inherited(levels_[i - 1].A, *levels_[i - 1].space,
                                  *lvl.space);
        lvl.M_diag = restrict_vector(levels_[i - 1].M_diag,
                                     levels_[i - 1].coarse_idx);
      } else {
        lvl.A = assemble_stiffness(*lvl.space, config.penalty);
        lvl.M_diag = assemble_mass_diag(*lvl.space);
      }
      lvl.D_diag = lvl.A.diagonal();
      lvl.omega = select_omega(lvl.A, lvl.D_diag, config.omega_seed,
                               config.omega_safety);
      if (i + 1 < K) {
        DgSpace coarse(fine_space.mesh(), lvl.k - 1);
        lvl.coarse_idx = coarse_dof_indices(*lvl.space, coarse);
      }
    }
    coarse_solver_ = std::make_unique<DenseFactorization>(levels_.back().A);
  }

  index_t n_levels() const { return levels_.size(); }
  const MgLevel& level(index_t i) const { return levels_[i]; }
  const CsrMatrix& fine_matrix() const { return levels_.front().A; }
  const HierarchyConfig& config() const { return config_; }

  /// One W-cycle from level index `li` (two recursive corrections, the
  /// second warm-started from the first). `m_of(li)` gives the smoothing
  /// steps for level index li.
  template <class MOf>
  Vector wcycle_at(index_t li, const Vector& f, const Vector& z0,
                   const MOf& m_of) const {
    const MgLevel& lvl = levels_[li];
    if (li + 1 == levels_.size()) return coarse_solver_->solve(f);
    const index_t m = m_of(li);
    Vector z = chebyshev4_sweep(lvl.A, lvl.D_diag, lvl.omega, f, z0, m);
    Vector r = spmv(lvl.A, z);
    for (index_t j = 0; j < r.size(); ++j) r[j] = f[j] - r[j];
    Vector rc = restrict_vector(r, lvl.coarse_idx);
    Vector e = wcycle_at(li + 1, rc, Vector(rc.size(), 0.0), m_of);
    e = wcycle_at(li + 1, rc, e, m_of);
    prolongate_add(e, lvl.coarse_idx, z);
    return chebyshev4_sweep(lvl.A, lvl.D_diag, lvl.omega, f, z, m);
  }

  Vector wcycle(const Vector& f, const Vector& z0) const {
    return wcycle_at(0, f, z0,
                     [this](index_t li) { return levels_[li].m; });
  }

  /// W-cycle with a schedule other than the one baked in at build time.
  Vector wcycle(const Vector& f, const Vector& z0,
                const MSchedule& schedule) const {
    return wcycle_at(0, f, z0, [this, &schedule](index_t li) {
      return schedule.at(levels_[li].k);
    });
  }

  /// One two-level iteration: m pre-sweeps, exact coarse correction on the
  /// next level, m post-sweeps. Uses the hierarchy's direct solver, so the
  /// hierarchy must have exactly two levels.
  Vector two_level(const Vector& f, const Vector& z0, index_t m) const {
    if (levels_.size() != 2)
      throw std::invalid_argument("two_level: build the hierarchy with K = 2");
    const MgLevel& lvl = levels_[0];
    Vector z = chebyshev4_sweep(lvl.A, lvl.D_diag, lvl.omega, f, z0, m);
    Vector r = spmv(lvl.A, z);
    for (index_t j = 0; j < r.size(); ++j) r[j] = f[j] - r[j];
    const Vector rc = restrict_vector(r, lvl.coarse_idx);
    const Vector e = coarse_solver_->solve(rc);
    prolongate_add(e, lvl.coarse_idx, z);
    return chebyshev4_sweep(lvl.A, lvl.D_diag, lvl.omega, f, z, m);
  }

  /// C_O = sum_k nnz(A_k) / nnz(A_p) over the hierarchy's levels.
  double operator_complexity() const {
    double total = 0.0;
    for (const MgLevel& lvl : levels_) total += static_cast<double>(lvl.A.nnz());
    return total / static_cast<double>(levels_.front().A.nnz());
  }

 private:
  HierarchyConfig config_;
  std::vector<MgLevel> levels_;
  std::unique_ptr<DenseFactorization> coarse_solver_;
};

}  // namespace pmg

#endif
