#ifndef PMG_ASSEMBLY_HPP
#define PMG_ASSEMBLY_HPP

#include <array>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "pmg/dg_space.hpp"
#include "pmg/legendre.hpp"
#include "pmg/linalg.hpp"
#include "pmg/mesh.hpp"

namespace pmg {

/// Interior penalty weight alpha = alpha0 k^2 / h.
struct PenaltyConfig {
  double alpha0 = 10.0;
};

constexpr double kDropTol = 1e-12;

using ScalarField = std::function<double(const Point&)>;
using VectorField = std::function<std::array<double, 3>(const Point&)>;

namespace detail {

/// 1D reference blocks on one physical element of size h, computed by
/// (k+2)-point Gauss quadrature: mass[s][t] = (psi_s, psi_t)_T and
/// stiff[s][t] = (psi_s', psi_t')_T, plus endpoint traces of values and
/// physical derivatives.
struct Blocks1d {
  int k;
  double h;
  std::vector<std::vector<double>> mass, stiff;
  std::vector<double> val_lo, val_hi, der_lo, der_hi;

  Blocks1d(int k_, double h_) : k(k_), h(h_) {
    const auto rule = legendre::gauss_rule(k + 2);
    const int nd = k + 1;
    mass.assign(nd, std::vector<double>(nd, 0.0));
    stiff.assign(nd, std::vector<double>(nd, 0.0));
    std::vector<double> lv, ld;
    for (index_t q = 0; q < rule.nodes.size(); ++q) {
      legendre::eval_all(k, rule.nodes[q], lv);
      legendre::deriv_all(k, rule.nodes[q], ld);
      const double wm = rule.weights[q] * 0.5 * h;        // dx = (h/2) dxi
      const double ws = rule.weights[q] * 2.0 / h;        // (2/h)^2 * (h/2)
      for (int s = 0; s < nd; ++s)
        for (int t = 0; t < nd; ++t) {
          mass[s][t] += wm * lv[s] * lv[t];
          stiff[s][t] += ws * ld[s] * ld[t];
        }
    }
    val_lo.resize(nd);
    val_hi.resize(nd);
    der_lo.resize(nd);
    der_hi.resize(nd);
    for (int s = 0; s < nd; ++s) {
      val_lo[s] = legendre::eval(s, -1.0);
      val_hi[s] = legendre::eval(s, 1.0);
      der_lo[s] = legendre::deriv(s, -1.0) * 2.0 / h;
      der_hi[s] = legendre::deriv(s, 1.0) * 2.0 / h;
    }
  }
};

/// One basis function's face data along the normal axis: jump coefficient
/// J = [u] and weighted normal derivative G = {grad u . n}.
struct FaceTrace {
  const std::vector<double>* val;
  const std::vector<double>* der;
  double jump_sign;
  double avg_weight;  // 1/2 interior, 1 boundary
  double normal_sign;

  double J(int s) const { return jump_sign * (*val)[s]; }
  double G(int s) const { return avg_weight * normal_sign * (*der)[s]; }
};

}  // namespace detail

/// SIPDG stiffness matrix (Poisson, homogeneous Dirichlet), assembled from
/// volume quadrature plus consistency and penalty face terms, then filtered
/// by the global drop tolerance.
inline CsrMatrix assemble_stiffness(const DgSpace& space,
                                    const PenaltyConfig& penalty = {}) {
  const TensorMesh& mesh = space.mesh();
  const int d = space.dim();
  const int k = space.level();
  const double h = mesh.h();
  const double alpha = penalty.alpha0 * k * k / h;
  const auto& basis = space.local_basis();
  const index_t nb = basis.size();
  const detail::Blocks1d b1(k, h);

  std::vector<Triplet> trips;
  std::vector<double> block(nb * nb);
  // eager cutoff well below any genuine entry, well above quadrature noise
  const double scale = 2.0 * penalty.alpha0 * k * k * std::pow(h, d - 2) * d;
  const double cutoff = 1e-14 * scale;

  auto tangential_mass = [&](const MultiIndex& sa, const MultiIndex& sb,
                             int axis) {
    double m = 1.0;
    for (int j = 0; j < d; ++j)
      if (j != axis) m *= b1.mass[sa[j]][sb[j]];
    return m;
  };

  auto emit_block = [&](index_t elem_row, index_t elem_col) {
    for (index_t a = 0; a < nb; ++a)
      for (index_t b = 0; b < nb; ++b) {
        const double v = block[a * nb + b];
        if (std::abs(v) > cutoff)
          trips.push_back({space.global_index(elem_row, a),
                           space.global_index(elem_col, b), v});
      }
  };

  // face contribution into `block` for (v in elem_row side, u in elem_col side)
  auto add_face_terms = [&](const detail::FaceTrace& tv,
                            const detail::FaceTrace& tu, int axis) {
    for (index_t a = 0; a < nb; ++a) {
      const int sa = basis[a][axis];
      for (index_t b = 0; b < nb; ++b) {
        const int sb = basis[b][axis];
        const double f = -tu.G(sb) * tv.J(sa) - tv.G(sa) * tu.J(sb) +
                         alpha * tu.J(sb) * tv.J(sa);
        block[a * nb + b] += f * tangential_mass(basis[a], basis[b], axis);
      }
    }
  };

  // self blocks: volume + all adjacent face self-terms
  std::vector<std::vector<const Face*>> elem_faces(mesh.n_elements());
  for (const Face& f : mesh.faces()) {
    elem_faces[f.elem_a].push_back(&f);
    if (f.kind == Face::kInterior) elem_faces[f.elem_b].push_back(&f);
  }

  for (index_t e = 0; e < mesh.n_elements(); ++e) {
    std::fill(block.begin(), block.end(), 0.0);
    for (index_t a = 0; a < nb; ++a)
      for (index_t b = 0; b < nb; ++b) {
        double v = 0.0;
        for (int i = 0; i < d; ++i) {
          double t = b1.stiff[basis[a][i]][basis[b][i]];
          for (int j = 0; j < d; ++j)
            if (j != i) t *= b1.mass[basis[a][j]][basis[b][j]];
          v += t;
        }
        block[a * nb + b] = v;
      }
    for (const Face* f : elem_faces[e]) {
      detail::FaceTrace t;
      if (f->kind == Face::kBoundary) {
        t = {f->outward_positive ? &b1.val_hi : &b1.val_lo,
             f->outward_positive ? &b1.der_hi : &b1.der_lo, 1.0, 1.0,
             f->outward_positive ? 1.0 : -1.0};
      } else if (f->elem_a == e) {
        // this element sits on the minus side; normal points away from it
        t = {&b1.val_hi, &b1.der_hi, 1.0, 0.5, 1.0};
      } else {
        t = {&b1.val_lo, &b1.der_lo, -1.0, 0.5, 1.0};
      }
      add_face_terms(t, t, f->axis);
    }
    emit_block(e, e);
  }

  // cross blocks per interior face
  for (const Face& f : mesh.faces()) {
    if (f.kind != Face::kInterior) continue;
    const detail::FaceTrace ta{&b1.val_hi, &b1.der_hi, 1.0, 0.5, 1.0};
    const detail::FaceTrace tb{&b1.val_lo, &b1.der_lo, -1.0, 0.5, 1.0};
    std::fill(block.begin(), block.end(), 0.0);
    add_face_terms(ta, tb, f.axis);  // rows in elem_a, cols in elem_b
    emit_block(f.elem_a, f.elem_b);
    std::fill(block.begin(), block.end(), 0.0);
    add_face_terms(tb, ta, f.axis);
    emit_block(f.elem_b, f.elem_a);
  }

  CsrMatrix a = CsrMatrix::from_triplets(space.global_dim(), space.global_dim(),
                                         std::move(trips));
  a.drop_small(kDropTol);
  return a;
}

/// Diagonal of the mass matrix by quadrature (analytically Pi_i h/(2s_i+1)).
inline Vector assemble_mass_diag(const DgSpace& space) {
  const int d = space.dim();
  const detail::Blocks1d b1(space.level(), space.mesh().h());
  const auto& basis = space.local_basis();
  Vector m(space.global_dim());
  for (index_t e = 0; e < space.mesh().n_elements(); ++e)
    for (index_t b = 0; b < basis.size(); ++b) {
      double v = 1.0;
      for (int i = 0; i < d; ++i) v *= b1.mass[basis[b][i]][basis[b][i]];
      m[space.global_index(e, b)] = v;
    }
  return m;
}

/// Load vector (f, Psi_T^sigma) by (k+2)^d-point Gauss quadrature.
inline Vector assemble_load(const DgSpace& space, const ScalarField& f) {
  const TensorMesh& mesh = space.mesh();
  const int d = space.dim();
  const int k = space.level();
  const double h = mesh.h();
  const auto rule = legendre::gauss_rule(k + 2);
  const index_t nq = rule.nodes.size();
  const auto& basis = space.local_basis();

  // tabulate 1D values at the quadrature nodes
  std::vector<std::vector<double>> lv(nq);
  for (index_t q = 0; q < nq; ++q) legendre::eval_all(k, rule.nodes[q], lv[q]);

  index_t nq_total = 1;
  for (int i = 0; i < d; ++i) nq_total *= nq;
  const double jac = std::pow(0.5 * h, d);

  Vector out(space.global_dim(), 0.0);
  for (index_t e = 0; e < mesh.n_elements(); ++e) {
    const Point xl = mesh.element_lower(e);
    for (index_t qq = 0; qq < nq_total; ++qq) {
      std::array<index_t, 3> qi{0, 0, 0};
      index_t rem = qq;
      for (int i = 0; i < d; ++i) {
        qi[i] = rem % nq;
        rem /= nq;
      }
      Point x{0.0, 0.0, 0.0};
      double w = jac;
      for (int i = 0; i < d; ++i) {
        x[i] = xl[i] + 0.5 * h * (rule.nodes[qi[i]] + 1.0);
        w *= rule.weights[qi[i]];
      }
      const double fv = w * f(x);
      for (index_t b = 0; b < basis.size(); ++b) {
        double phi = 1.0;
        for (int i = 0; i < d; ++i) phi *= lv[qi[i]][basis[b][i]];
        out[space.global_index(e, b)] += fv * phi;
      }
    }
  }
  return out;
}

/// Per-level assembled operators.
struct AssembledLevel {
  CsrMatrix A;
  Vector M_diag;
  Vector D_diag;
  int k = 0;
  const DgSpace* space = nullptr;
};

inline AssembledLevel assemble_level(const DgSpace& space,
                                     const PenaltyConfig& penalty = {}) {
  AssembledLevel lvl;
  lvl.A = assemble_stiffness(space, penalty);
  lvl.M_diag = assemble_mass_diag(space);
  lvl.D_diag = lvl.A.diagonal();
  lvl.k = space.level();
  lvl.space = &space;
  for (double dii : lvl.D_diag)
    if (!(dii > 0.0))
      throw std::runtime_error("assemble_level: nonpositive stiffness diagonal");
  return lvl;
}

/// Closed-form interior stencil entry (independent oracle for the quadrature
/// assembly). Valid for elements whose faces are all interior.
inline double stencil_oracle_entry(index_t elem, const MultiIndex& sigma,
                                   index_t elem_p, const MultiIndex& sigma_p,
                                   int k, const PenaltyConfig& penalty,
                                   const TensorMesh& mesh) {
  const int d = mesh.dim();
  const double h = mesh.h();
  const auto ca = mesh.element_coords(elem);
  const auto cb = mesh.element_coords(elem_p);
  for (int i = 0; i < d; ++i) {
    if (ca[i] == 0 || ca[i] + 1 == mesh.cells_per_axis() || cb[i] == 0 ||
        cb[i] + 1 == mesh.cells_per_axis())
      throw std::invalid_argument("stencil_oracle_entry: boundary element");
  }
  int diff_axis = -1;
  int n_diff = 0;
  int step = 0;
  for (int i = 0; i < d; ++i) {
    if (ca[i] != cb[i]) {
      ++n_diff;
      diff_axis = i;
      step = static_cast<int>(cb[i]) - static_cast<int>(ca[i]);
    }
  }
  const double a0k2 = penalty.alpha0 * k * k;

  if (n_diff == 0) {
    // same element: sum over axes of the 1D same-element entry times the
    // tangential mass factors (Kronecker in the other axes)
    double v = 0.0;
    for (int i = 0; i < d; ++i) {
      bool others_equal = true;
      for (int j = 0; j < d; ++j)
        if (j != i && sigma[j] != sigma_p[j]) others_equal = false;
      if (!others_equal) continue;
      if ((sigma[i] - sigma_p[i]) % 2 != 0) continue;
      const double lo = std::min(sigma[i], sigma_p[i]);
      const double hi = std::max(sigma[i], sigma_p[i]);
      double t = (2.0 * a0k2 + lo * (lo + 1) - hi * (hi + 1)) / h;
      for (int j = 0; j < d; ++j)
        if (j != i) t *= h / (2.0 * sigma[j] + 1.0);
      v += t;
    }
    return v;
  }
  if (n_diff == 1 && std::abs(step) == 1) {
    // axis neighbor: 1D cross entry with the 1D-derived sign, times the
    // tangential mass factors
    for (int j = 0; j < d; ++j)
      if (j != diff_axis && sigma[j] != sigma_p[j]) return 0.0;
    const double s = sigma[diff_axis], sp = sigma_p[diff_axis];
    const int sign_deg = (step > 0) ? sigma_p[diff_axis] : sigma[diff_axis];
    const double sign = (sign_deg % 2 == 0) ? -1.0 : 1.0;  // (-1)^{deg+1}
    double v = sign * (2.0 * a0k2 - s * (s + 1) - sp * (sp + 1)) / (2.0 * h);
    for (int j = 0; j < d; ++j)
      if (j != diff_axis) v *= h / (2.0 * sigma[j] + 1.0);
    return v;
  }
  throw std::invalid_argument("stencil_oracle_entry: elements are not equal or axis neighbors");
}

/// Energy and L2 discretization-error norms against an exact solution.
/// energy^2 = sum_T |grad(u-u_h)|^2 + (k^2/h) sum_F |[u-u_h]|^2.
inline std::pair<double, double> dg_error_norms(const DgSpace& space,
                                                const Vector& u_h,
                                                const ScalarField& u_exact,
                                                const VectorField& grad_u_exact) {
  const TensorMesh& mesh = space.mesh();
  const int d = space.dim();
  const int k = space.level();
  const double h = mesh.h();
  const auto rule = legendre::gauss_rule(k + 3);
  const index_t nq = rule.nodes.size();
  const auto& basis = space.local_basis();

  std::vector<std::vector<double>> lv(nq), ld(nq);
  for (index_t q = 0; q < nq; ++q) {
    legendre::eval_all(k, rule.nodes[q], lv[q]);
    legendre::deriv_all(k, rule.nodes[q], ld[q]);
  }

  double energy2 = 0.0, l22 = 0.0;

  index_t nq_total = 1;
  for (int i = 0; i < d; ++i) nq_total *= nq;
  const double jac = std::pow(0.5 * h, d);

  for (index_t e = 0; e < mesh.n_elements(); ++e) {
    const Point xl = mesh.element_lower(e);
    for (index_t qq = 0; qq < nq_total; ++qq) {
      std::array<index_t, 3> qi{0, 0, 0};
      index_t rem = qq;
      for (int i = 0; i < d; ++i) {
        qi[i] = rem % nq;
        rem /= nq;
      }
      Point x{0.0, 0.0, 0.0};
      double w = jac;
      for (int i = 0; i < d; ++i) {
        x[i] = xl[i] + 0.5 * h * (rule.nodes[qi[i]] + 1.0);
        w *= rule.weights[qi[i]];
      }
      double vh = 0.0;
      std::array<double, 3> gh{0.0, 0.0, 0.0};
      for (index_t b = 0; b < basis.size(); ++b) {
        const double c = u_h[space.global_index(e, b)];
        double phi = 1.0;
        for (int i = 0; i < d; ++i) phi *= lv[qi[i]][basis[b][i]];
        vh += c * phi;
        for (int i = 0; i < d; ++i) {
          double g = ld[qi[i]][basis[b][i]] * 2.0 / h;
          for (int j = 0; j < d; ++j)
            if (j != i) g *= lv[qi[j]][basis[b][j]];
          gh[i] += c * g;
        }
      }
      const double diff = u_exact(x) - vh;
      l22 += w * diff * diff;
      const auto ge = grad_u_exact(x);
      for (int i = 0; i < d; ++i) {
        const double gd = ge[i] - gh[i];
        energy2 += w * gd * gd;
      }
    }
  }

  // face jumps
  index_t nq_face = 1;
  for (int i = 0; i < d - 1; ++i) nq_face *= nq;
  const double face_jac = std::pow(0.5 * h, d - 1);
  std::vector<double> lv_hi(k + 1), lv_lo(k + 1);
  legendre::eval_all(k, 1.0, lv_hi);
  legendre::eval_all(k, -1.0, lv_lo);

  auto trace_value = [&](index_t elem, bool at_upper, int axis,
                         const std::array<index_t, 3>& qi) {
    double v = 0.0;
    for (index_t b = 0; b < basis.size(); ++b) {
      double phi = at_upper ? lv_hi[basis[b][axis]] : lv_lo[basis[b][axis]];
      int t = 0;
      for (int j = 0; j < d; ++j)
        if (j != axis) phi *= lv[qi[t++]][basis[b][j]];
      v += u_h[space.global_index(elem, b)] * phi;
    }
    return v;
  };

  const double jump_weight = static_cast<double>(k) * k / h;
  for (const Face& f : mesh.faces()) {
    for (index_t qq = 0; qq < nq_face; ++qq) {
      std::array<index_t, 3> qi{0, 0, 0};
      index_t rem = qq;
      for (int i = 0; i < d - 1; ++i) {
        qi[i] = rem % nq;
        rem /= nq;
      }
      double w = face_jac;
      for (int i = 0; i < d - 1; ++i) w *= rule.weights[qi[i]];
      double jump;
      if (f.kind == Face::kInterior) {
        jump = trace_value(f.elem_a, true, f.axis, qi) -
               trace_value(f.elem_b, false, f.axis, qi);
        // exact solution is single-valued: its jump vanishes
      } else {
        const Point xl = mesh.element_lower(f.elem_a);
        Point x{0.0, 0.0, 0.0};
        int t = 0;
        for (int j = 0; j < d; ++j) {
          if (j == f.axis) {
            x[j] = xl[j] + (f.outward_positive ? h : 0.0);
          } else {
            x[j] = xl[j] + 0.5 * h * (rule.nodes[qi[t]] + 1.0);
            ++t;
          }
        }
        jump = u_exact(x) - trace_value(f.elem_a, f.outward_positive, f.axis, qi);
      }
      energy2 += jump_weight * w * jump * jump;
    }
  }

  return {std::sqrt(energy2), std::sqrt(l22)};
}

}  // namespace pmg

#endif
