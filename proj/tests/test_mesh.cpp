#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "pmg/mesh.hpp"

using namespace pmg;
using Catch::Approx;

TEST_CASE("mesh counting") {
  SECTION("1D, 4 cells on (-1,1)") {
    TensorMesh m(1, {-1, 0, 0}, {1, 1, 1}, 4);
    CHECK(m.n_elements() == 4);
    CHECK(m.h() == Approx(0.5));
    CHECK(m.n_interior_faces() == 3);
    CHECK(m.n_boundary_faces() == 2);
  }
  SECTION("2D, 2x2 on the unit square") {
    TensorMesh m = unit_mesh(2, 2);
    CHECK(m.n_elements() == 4);
    CHECK(m.h() == Approx(0.5));
    CHECK(m.faces().size() == 12);
    CHECK(m.n_interior_faces() == 4);
    CHECK(m.n_boundary_faces() == 8);
  }
  SECTION("3D, 2x2x2") {
    TensorMesh m = unit_mesh(3, 2);
    CHECK(m.n_elements() == 8);
    CHECK(m.faces().size() == 36);  // d n^{d-1} (n+1)
  }
}

TEST_CASE("mesh rejects bad input") {
  CHECK_THROWS_AS(TensorMesh(1, {0, 0, 0}, {1, 1, 1}, 0), std::invalid_argument);
  CHECK_THROWS_AS(TensorMesh(2, {0, 0, 0}, {0, 1, 1}, 4), std::invalid_argument);
  CHECK_THROWS_AS(TensorMesh(0, {0, 0, 0}, {1, 1, 1}, 4), std::invalid_argument);
  // anisotropic boxes produce unequal edge sizes
  CHECK_THROWS_AS(TensorMesh(2, {0, 0, 0}, {1, 2, 1}, 4), std::invalid_argument);
}

TEST_CASE("element ordering is lexicographic with x fastest") {
  TensorMesh m = unit_mesh(2, 3);
  CHECK(m.element_id({0, 0, 0}) == 0);
  CHECK(m.element_id({1, 0, 0}) == 1);
  CHECK(m.element_id({0, 1, 0}) == 3);
  const auto c = m.element_coords(5);
  CHECK(c[0] == 2);
  CHECK(c[1] == 1);
}

TEST_CASE("affine map") {
  TensorMesh m(1, {0, 0, 0}, {1, 0, 0}, 4);
  const index_t t = m.locate({0.3, 0, 0});
  SECTION("corners and center") {
    const Point lo = m.affine_map(t, {-1, 0, 0});
    CHECK(lo[0] == Approx(0.25));
    const Point mid = m.affine_map(t, {0, 0, 0});
    CHECK(mid[0] == Approx(0.375));
  }
  SECTION("formula substitution: T=[0.25,0.5], xi=0.5 -> 0.4375") {
    const Point x = m.affine_map(t, {0.5, 0, 0});
    CHECK(x[0] == Approx(0.4375));
  }
  SECTION("round trip") {
    for (double xi : {-1.0, -0.3, 0.0, 0.77, 1.0}) {
      const Point x = m.affine_map(t, {xi, 0, 0});
      const Point back = m.affine_map_inverse(t, x);
      CHECK(back[0] == Approx(xi).margin(1e-14));
    }
  }
  SECTION("inverse rejects points outside the element") {
    CHECK_THROWS_AS(m.affine_map_inverse(t, {0.8, 0, 0}), std::invalid_argument);
  }
  SECTION("map rejects reference points outside the cube") {
    CHECK_THROWS_AS(m.affine_map(t, {1.5, 0, 0}), std::invalid_argument);
  }
}

TEST_CASE("interior faces appear once with symmetric neighbor relation") {
  TensorMesh m = unit_mesh(2, 4);
  std::map<std::pair<index_t, index_t>, int> seen;
  for (const Face& f : m.faces()) {
    if (f.kind != Face::kInterior) continue;
    CHECK(f.elem_a < f.elem_b);  // fixed orientation, a -> b
    ++seen[{f.elem_a, f.elem_b}];
    const auto ca = m.element_coords(f.elem_a);
    const auto cb = m.element_coords(f.elem_b);
    int diffs = 0;
    for (int i = 0; i < 2; ++i) diffs += (ca[i] != cb[i]);
    CHECK(diffs == 1);
    CHECK(cb[f.axis] == ca[f.axis] + 1);
  }
  for (const auto& [key, count] : seen) CHECK(count == 1);
  CHECK(seen.size() == m.n_interior_faces());
}

TEST_CASE("total face measure matches the analytic value") {
  // 2D box (0,1)^2 with n=5: interior measure 2*5*4*h + boundary 4*5*h
  TensorMesh m = unit_mesh(2, 5);
  double interior = 0.0, boundary = 0.0;
  for (const Face& f : m.faces())
    (f.kind == Face::kInterior ? interior : boundary) += m.face_measure();
  CHECK(interior == Approx(2.0 * 4.0 * 5.0 * 0.2).margin(1e-12));
  CHECK(boundary == Approx(4.0).margin(1e-12));
}

TEST_CASE("locate") {
  TensorMesh m = unit_mesh(2, 4);
  CHECK(m.locate({0.01, 0.01, 0}) == 0);
  CHECK(m.locate({0.99, 0.99, 0}) == 15);
  CHECK_THROWS_AS(m.locate({1.5, 0.5, 0}), std::invalid_argument);
}
