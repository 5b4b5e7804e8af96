#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "pmg/assembly.hpp"
#include "pmg/dense.hpp"
#include "pmg/dg_space.hpp"
#include "pmg/linalg.hpp"
#include "pmg/matrix_market.hpp"
#include "pmg/mesh.hpp"
#include "test_oracles.hpp"

using namespace pmg;
using Catch::Approx;

namespace {

CsrMatrix diag_matrix(const Vector& d) {
  std::vector<Triplet> t;
  for (index_t i = 0; i < d.size(); ++i) t.push_back({i, i, d[i]});
  return CsrMatrix::from_triplets(d.size(), d.size(), t);
}

}  // namespace

TEST_CASE("spmv basics") {
  CHECK(spmv(CsrMatrix::identity(3), {1, 2, 3}) == Vector{1, 2, 3});

  CsrMatrix zero;
  zero.n_rows = zero.n_cols = 4;
  zero.row_offsets.assign(5, 0);
  CHECK(spmv(zero, {1, 2, 3, 4}) == Vector{0, 0, 0, 0});

  const CsrMatrix a = CsrMatrix::from_triplets(
      2, 2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 1, 3.0}});
  CHECK(spmv(a, {1, 1}) == Vector{3, 3});

  CHECK_THROWS_AS(spmv(a, {1, 2, 3}), std::invalid_argument);
}

TEST_CASE("spmv is deterministic") {
  Rng rng(99);
  std::vector<Triplet> t;
  for (int i = 0; i < 300; ++i)
    t.push_back({static_cast<index_t>(i % 17), static_cast<index_t>((i * 7) % 13),
                 rng.uniform_pm1()});
  const CsrMatrix a = CsrMatrix::from_triplets(17, 13, t);
  const Vector x = rng.uniform_pm1_vector(13);
  const Vector y1 = spmv(a, x), y2 = spmv(a, x);
  for (index_t i = 0; i < y1.size(); ++i) CHECK(y1[i] == y2[i]);
}

TEST_CASE("csr canonical form and duplicate accumulation") {
  const CsrMatrix a = CsrMatrix::from_triplets(
      2, 3, {{1, 2, 1.0}, {0, 1, 2.0}, {1, 0, 3.0}, {0, 1, 0.5}});
  CHECK(a.nnz() == 3);
  CHECK(a(0, 1) == 2.5);
  CHECK(a(1, 0) == 3.0);
  for (index_t r = 0; r < a.n_rows; ++r)
    for (index_t p = a.row_offsets[r] + 1; p < a.row_offsets[r + 1]; ++p)
      CHECK(a.col_indices[p] > a.col_indices[p - 1]);
  CHECK_THROWS_AS(CsrMatrix::from_triplets(2, 2, {{2, 0, 1.0}}),
                  std::invalid_argument);
}

TEST_CASE("drop_small removes entries below the relative threshold") {
  CsrMatrix a = CsrMatrix::from_triplets(
      2, 2, {{0, 0, 1.0}, {0, 1, 1e-14}, {1, 1, 0.5}});
  a.drop_small(1e-12);
  CHECK(a.nnz() == 2);
  CHECK(a(0, 1) == 0.0);
  CHECK(a(0, 0) == 1.0);
}

TEST_CASE("a_norm") {
  CHECK(a_norm(CsrMatrix::identity(2), 0, {3, 4}) == Approx(5.0));
  CHECK(a_norm(CsrMatrix::identity(2), 1, {3, 4}) == Approx(5.0));
  CHECK(a_norm(diag_matrix({4, 9}), 1, {1, 1}) == Approx(std::sqrt(13.0)));
  CHECK_THROWS_AS(a_norm(CsrMatrix::identity(2), 2, {1, 1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(a_norm(diag_matrix({-1, 1}), 1, {1, 0}), std::runtime_error);
}

TEST_CASE("a_norm squared equals dot(v, Av)") {
  TensorMesh mesh = unit_mesh(1, 8);
  DgSpace space(mesh, 3);
  const CsrMatrix a = assemble_stiffness(space);
  Rng rng(3);
  const Vector v = rng.uniform_pm1_vector(a.n_rows);
  const double n1 = a_norm(a, 1, v);
  CHECK(n1 * n1 == Approx(dot(v, spmv(a, v))).epsilon(1e-14));
}

TEST_CASE("power iteration on diagonal matrices") {
  const CsrMatrix d = diag_matrix({1, 2, 5});
  CHECK(power_iteration_symmetric(d) == Approx(5.0).epsilon(1e-5));
  CHECK(power_iteration_symmetric(CsrMatrix::identity(7)) == Approx(1.0));
  CHECK_THROWS_AS(power_iteration_symmetric(d, -1.0), std::invalid_argument);
}

TEST_CASE("power iteration error carries best estimate") {
  const CsrMatrix d = diag_matrix({1.0, 1.0 - 1e-9});
  try {
    power_iteration_symmetric(d, 1e-16, 3, 7);
    FAIL("expected NonConvergenceError");
  } catch (const NonConvergenceError& e) {
    CHECK(e.best_estimate == Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("power iteration agrees with the dense eigensolver oracle") {
  // 1D stiffness matrices at a few degrees, all well below 2000 rows
  for (int k : {1, 2, 4}) {
    TensorMesh mesh(1, {-1, 0, 0}, {1, 1, 1}, 16);
    DgSpace space(mesh, k);
    const CsrMatrix a = assemble_stiffness(space);
    const Vector d = a.diagonal();
    Vector dis(d.size());
    for (index_t i = 0; i < d.size(); ++i) dis[i] = 1.0 / std::sqrt(d[i]);
    DenseMatrix b(a.n_rows);
    for (index_t r = 0; r < a.n_rows; ++r)
      for (index_t p = a.row_offsets[r]; p < a.row_offsets[r + 1]; ++p)
        b(r, a.col_indices[p]) = dis[r] * a.values[p] * dis[a.col_indices[p]];
    const double oracle = pmg_test::max_abs_eigenvalue(b);
    const double estimate = power_iteration_symmetric(
        [&](const Vector& v) {
          Vector t(v.size());
          for (index_t i = 0; i < v.size(); ++i) t[i] = dis[i] * v[i];
          Vector s = spmv(a, t);
          for (index_t i = 0; i < v.size(); ++i) s[i] *= dis[i];
          return s;
        },
        a.n_rows, 1e-8, 20000, 1234);
    CHECK(estimate == Approx(oracle).epsilon(1e-4));
  }
}

TEST_CASE("direct solve") {
  CHECK(direct_solve(CsrMatrix::identity(3), {1, 2, 3}) == Vector{1, 2, 3});
  const Vector x = direct_solve(diag_matrix({2, 4}), {2, 4});
  CHECK(x[0] == Approx(1.0));
  CHECK(x[1] == Approx(1.0));

  // 1D level-1 system
  TensorMesh mesh(1, {-1, 0, 0}, {1, 1, 1}, 16);
  DgSpace space(mesh, 1);
  const CsrMatrix a = assemble_stiffness(space);
  Rng rng(5);
  const Vector f = rng.uniform_pm1_vector(a.n_rows);
  const Vector u = direct_solve(a, f);
  Vector r = spmv(a, u);
  for (index_t i = 0; i < r.size(); ++i) r[i] = f[i] - r[i];
  CHECK(norm2(r) <= 1e-10 * norm2(f));
}

TEST_CASE("direct solve rejects singular systems") {
  const CsrMatrix s = CsrMatrix::from_triplets(
      2, 2, {{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}});
  CHECK_THROWS_AS(direct_solve(s, {1.0, 1.0}), SingularMatrixError);
}

TEST_CASE("dense factorization solves indefinite symmetric systems") {
  // symmetric, requires pivoting to stay stable
  Rng rng(11);
  const index_t n = 40;
  DenseMatrix m(n);
  for (index_t i = 0; i < n; ++i)
    for (index_t j = 0; j <= i; ++j) {
      const double v = rng.uniform_pm1();
      m(i, j) = m(j, i) = v;
    }
  for (index_t i = 0; i < n; ++i) m(i, i) += (i % 2 == 0 ? 2.0 : -2.0);
  DenseMatrix copy = m;
  DenseFactorization f(std::move(m));
  for (index_t c = 0; c < n; c += 7) {
    Vector b(n, 0.0);
    b[c] = 1.0;
    const Vector x = f.solve(b);
    const Vector ax = pmg_test::dense_apply(copy, x);
    for (index_t i = 0; i < n; ++i)
      CHECK(ax[i] == Approx(b[i]).margin(1e-12));
  }
}

TEST_CASE("dense factorization rejects oversized systems") {
  CHECK_THROWS_AS(DenseFactorization(DenseMatrix(20001)), std::invalid_argument);
}

TEST_CASE("nnz") {
  CHECK(nnz(CsrMatrix::identity(5)) == 5);
  CsrMatrix zero;
  zero.n_rows = zero.n_cols = 3;
  zero.row_offsets.assign(4, 0);
  CHECK(nnz(zero) == 0);
}

TEST_CASE("interior element row block of 1D k=2 has 23 stored entries") {
  TensorMesh mesh = unit_mesh(1, 8);
  DgSpace space(mesh, 2);
  const CsrMatrix a = assemble_stiffness(space, {10.0});
  // element 4 is interior; its rows span globals 12..14
  index_t count = 0;
  for (index_t r = 12; r < 15; ++r) count += a.row_offsets[r + 1] - a.row_offsets[r];
  CHECK(count == 23);
}

TEST_CASE("matrix market round trip") {
  TensorMesh mesh = unit_mesh(1, 4);
  DgSpace space(mesh, 2);
  const CsrMatrix a = assemble_stiffness(space);
  std::stringstream ss;
  write_matrix_market(ss, a);
  CHECK(ss.str().rfind("%%MatrixMarket matrix coordinate real general", 0) == 0);
  const CsrMatrix b = read_matrix_market(ss);
  REQUIRE(b.n_rows == a.n_rows);
  REQUIRE(b.nnz() == a.nnz());
  for (index_t i = 0; i < a.nnz(); ++i) {
    CHECK(a.col_indices[i] == b.col_indices[i]);
    CHECK(a.values[i] == b.values[i]);  // %.17g is lossless for doubles
  }
}

TEST_CASE("matrix market rejects malformed input") {
  std::stringstream ss("not a matrix market file\n1 1 0\n");
  CHECK_THROWS_AS(read_matrix_market(ss), std::runtime_error);
}
