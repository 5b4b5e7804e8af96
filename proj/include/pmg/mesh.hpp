#ifndef PMG_MESH_HPP
#define PMG_MESH_HPP

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "pmg/linalg.hpp"

namespace pmg {

using Point = std::array<double, 3>;  // unused trailing coordinates are 0

struct Face {
  enum Kind { kInterior, kBoundary };
  int axis = 0;       // normal direction
  Kind kind = kInterior;
  index_t elem_a = 0;  // for interior: smaller lexicographic index; normal
  index_t elem_b = 0;  // points from elem_a to elem_b (the +axis neighbor)
  bool outward_positive = true;  // boundary only: normal sign along axis
};

/// Uniform Cartesian tensor mesh of a box with equal cells per axis.
class TensorMesh {
 public:
  TensorMesh(int dim, Point lower, Point upper, index_t n_per_axis)
      : dim_(dim), lower_(lower), upper_(upper), n_(n_per_axis) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("TensorMesh: dim must be 1, 2 or 3");
    if (n_per_axis < 1) throw std::invalid_argument("TensorMesh: need at least one cell per axis");
    double h0 = (upper[0] - lower[0]) / static_cast<double>(n_per_axis);
    if (!(h0 > 0.0)) throw std::invalid_argument("TensorMesh: degenerate box");
    for (int i = 1; i < dim; ++i) {
      const double hi = (upper[i] - lower[i]) / static_cast<double>(n_per_axis);
      if (std::abs(hi - h0) > 1e-12 * std::abs(h0))
        throw std::invalid_argument("TensorMesh: only equal edge sizes per axis are supported");
    }
    h_ = h0;
    n_elements_ = 1;
    for (int i = 0; i < dim; ++i) n_elements_ *= n_;
    build_faces();
  }

  int dim() const { return dim_; }
  double h() const { return h_; }
  index_t cells_per_axis() const { return n_; }
  index_t n_elements() const { return n_elements_; }
  const Point& lower() const { return lower_; }
  const Point& upper() const { return upper_; }
  const std::vector<Face>& faces() const { return faces_; }

  index_t n_interior_faces() const { return n_interior_; }
  index_t n_boundary_faces() const { return faces_.size() - n_interior_; }

  /// Lexicographic element id (x fastest).
  index_t element_id(const std::array<index_t, 3>& c) const {
    index_t id = 0;
    for (int i = dim_; i-- > 0;) id = id * n_ + c[i];
    return id;
  }

  std::array<index_t, 3> element_coords(index_t id) const {
    std::array<index_t, 3> c{0, 0, 0};
    for (int i = 0; i < dim_; ++i) {
      c[i] = id % n_;
      id /= n_;
    }
    return c;
  }

  Point element_lower(index_t id) const {
    const auto c = element_coords(id);
    Point p{0.0, 0.0, 0.0};
    for (int i = 0; i < dim_; ++i) p[i] = lower_[i] + h_ * static_cast<double>(c[i]);
    return p;
  }

  /// x = F_T(xi), xi in [-1,1]^d.
  Point affine_map(index_t elem, const Point& xi) const {
    const Point xl = element_lower(elem);
    Point x{0.0, 0.0, 0.0};
    for (int i = 0; i < dim_; ++i) {
      if (xi[i] < -1.0 || xi[i] > 1.0)
        throw std::invalid_argument("affine_map: reference point outside [-1,1]^d");
      x[i] = xl[i] + 0.5 * h_ * (xi[i] + 1.0);
    }
    return x;
  }

  /// xi = F_T^{-1}(x); throws when x lies outside the element.
  Point affine_map_inverse(index_t elem, const Point& x) const {
    const Point xl = element_lower(elem);
    Point xi{0.0, 0.0, 0.0};
    for (int i = 0; i < dim_; ++i) {
      xi[i] = 2.0 * (x[i] - xl[i]) / h_ - 1.0;
      if (xi[i] < -1.0 - 1e-12 || xi[i] > 1.0 + 1e-12)
        throw std::invalid_argument("affine_map_inverse: point outside element");
      xi[i] = std::clamp(xi[i], -1.0, 1.0);
    }
    return xi;
  }

  /// Element containing x (ties resolved toward the lower cell).
  index_t locate(const Point& x) const {
    std::array<index_t, 3> c{0, 0, 0};
    for (int i = 0; i < dim_; ++i) {
      const double t = (x[i] - lower_[i]) / h_;
      if (t < -1e-12 || t > static_cast<double>(n_) + 1e-12)
        throw std::invalid_argument("locate: point outside the domain");
      const auto ci = static_cast<long long>(std::floor(t));
      c[i] = static_cast<index_t>(std::clamp<long long>(ci, 0, static_cast<long long>(n_) - 1));
    }
    return element_id(c);
  }

  double face_measure() const {
    double m = 1.0;
    for (int i = 0; i < dim_ - 1; ++i) m *= h_;
    return m;
  }

 private:
  void build_faces() {
    // axis-major, then lexicographic over the face grid: deterministic
    for (int axis = 0; axis < dim_; ++axis) {
      std::array<index_t, 3> tang{0, 0, 0};  // transverse extents
      index_t n_transverse = 1;
      for (int i = 0, t = 0; i < dim_; ++i)
        if (i != axis) {
          tang[t++] = n_;
          n_transverse *= n_;
        }
      for (index_t layer = 0; layer <= n_; ++layer) {
        for (index_t t = 0; t < n_transverse; ++t) {
          std::array<index_t, 3> c{0, 0, 0};
          index_t rem = t;
          for (int i = 0; i < dim_; ++i) {
            if (i == axis) continue;
            c[i] = rem % n_;
            rem /= n_;
          }
          Face f;
          f.axis = axis;
          if (layer == 0 || layer == n_) {
            f.kind = Face::kBoundary;
            c[axis] = (layer == 0) ? 0 : n_ - 1;
            f.elem_a = f.elem_b = element_id(c);
            f.outward_positive = (layer == n_);
          } else {
            f.kind = Face::kInterior;
            c[axis] = layer - 1;
            f.elem_a = element_id(c);
            c[axis] = layer;
            f.elem_b = element_id(c);
            ++n_interior_;
          }
          faces_.push_back(f);
        }
      }
    }
  }

  int dim_;
  Point lower_, upper_;
  index_t n_;
  double h_ = 0.0;
  index_t n_elements_ = 0;
  index_t n_interior_ = 0;
  std::vector<Face> faces_;
};

inline TensorMesh build_mesh(int dim, const Point& lower, const Point& upper,
                             index_t n_per_axis) {
  return TensorMesh(dim, lower, upper, n_per_axis);
}

/// Unit box (0,1)^d helper.
inline TensorMesh unit_mesh(int dim, index_t n_per_axis) {
  return TensorMesh(dim, {0.0, 0.0, 0.0}, {1.0, 1.0, 1.0}, n_per_axis);
}

}  // namespace pmg

#endif
