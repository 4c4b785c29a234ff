#include <doctest.h>

#include <random>

#include "frobcat/fp.hpp"

using namespace frobcat;

namespace {

// Independent rank oracle: plain forward elimination on an int matrix,
// written without FpMatrix so the rref path is cross-checked, not echoed.
int rank_oracle(std::vector<std::vector<int>> m, int p) {
  int rows = static_cast<int>(m.size());
  int cols = rows ? static_cast<int>(m[0].size()) : 0;
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] % p != 0) { piv = i; break; }
    if (piv < 0) continue;
    std::swap(m[r], m[piv]);
    for (int i = r + 1; i < rows; ++i) {
      while (m[i][c] % p != 0) {
        for (int j = 0; j < cols; ++j) m[i][j] = ((m[i][j] - m[r][j]) % p + p) % p;
      }
    }
    ++r;
  }
  return r;
}

FpMatrix random_matrix(int p, int rows, int cols, std::mt19937_64& rng) {
  FpMatrix m(p, rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, static_cast<int>(rng() % p));
  return m;
}

}  // namespace

TEST_CASE("rref on the 2x2 example over F2") {
  // [[1,1],[0,1]] -> identity, pivots {0,1}.
  FpMatrix m = FpMatrix::from_rows(2, {{1, 1}, {0, 1}});
  RrefResult r = rref(m);
  CHECK(r.rank == 2);
  CHECK(r.pivots == std::vector<int>{0, 1});
  CHECK(r.reduced == FpMatrix::identity(2, 2));
}

TEST_CASE("rref is idempotent and pivots strictly increase") {
  std::mt19937_64 rng(7);
  for (int p : {2, 3, 5}) {
    for (int t = 0; t < 20; ++t) {
      FpMatrix m = random_matrix(p, 4, 6, rng);
      RrefResult r1 = rref(m);
      RrefResult r2 = rref(r1.reduced);
      CHECK(r1.reduced == r2.reduced);
      CHECK(r1.rank == r2.rank);
      for (size_t i = 1; i < r1.pivots.size(); ++i) CHECK(r1.pivots[i - 1] < r1.pivots[i]);
      CHECK(r1.rank == rank_oracle([&] {
              std::vector<std::vector<int>> v(m.rows(), std::vector<int>(m.cols()));
              for (int i = 0; i < m.rows(); ++i)
                for (int j = 0; j < m.cols(); ++j) v[i][j] = m.at(i, j);
              return v;
            }(),
            p));
    }
  }
}

TEST_CASE("kernel of [[1,1]] over F2 is span{(1,1)}") {
  FpMatrix m = FpMatrix::from_rows(2, {{1, 1}});
  Subspace k = kernel_basis(m);
  CHECK(k.dim() == 1);
  CHECK(k.contains_vector({1, 1}));
  CHECK_FALSE(k.contains_vector({1, 0}));
}

TEST_CASE("kernel vectors annihilate and rank-nullity holds") {
  std::mt19937_64 rng(11);
  for (int p : {2, 3, 5, 7}) {
    for (int t = 0; t < 15; ++t) {
      FpMatrix m = random_matrix(p, 3, 5, rng);
      Subspace k = kernel_basis(m);
      CHECK(k.dim() + m.rank() == m.cols());
      for (int i = 0; i < k.dim(); ++i) {
        auto v = k.basis().row(i);
        auto mv = m.mul_vec(v);
        CHECK(std::all_of(mv.begin(), mv.end(), [](uint8_t x) { return x == 0; }));
      }
    }
  }
}

TEST_CASE("solve returns a particular solution with free variables zeroed") {
  // x + y = 1 over F2: particular solution (1,0) since y is free.
  FpMatrix m = FpMatrix::from_rows(2, {{1, 1}});
  auto x = solve(m, {1});
  REQUIRE(x.has_value());
  CHECK(*x == std::vector<uint8_t>{1, 0});

  // Inconsistent system detected.
  FpMatrix m2 = FpMatrix::from_rows(2, {{1, 1}, {1, 1}});
  CHECK_FALSE(solve(m2, {1, 0}).has_value());
}

TEST_CASE("solve_matrix and solve_left round-trip") {
  std::mt19937_64 rng(3);
  for (int p : {2, 5}) {
    for (int t = 0; t < 10; ++t) {
      FpMatrix a = random_matrix(p, 4, 3, rng);
      FpMatrix x = random_matrix(p, 3, 2, rng);
      FpMatrix b = a.mul(x);
      auto sol = solve_matrix(a, b);
      REQUIRE(sol.has_value());
      CHECK(a.mul(*sol) == b);

      FpMatrix y = random_matrix(p, 2, 4, rng);
      FpMatrix c = y.mul(a);
      auto soll = solve_left(a, c);
      REQUIRE(soll.has_value());
      CHECK(soll->mul(a) == c);
    }
  }
}

TEST_CASE("quotient map: projection o section = id and kernel = relations") {
  std::mt19937_64 rng(19);
  for (int p : {2, 3}) {
    for (int t = 0; t < 15; ++t) {
      int n = 5;
      FpMatrix rel_rows = random_matrix(p, 2, n, rng);
      Subspace rel = Subspace::from_rows(rel_rows);
      QuotientMap qm = quotient_map(n, rel, p);
      CHECK(qm.quotient_dim == n - rel.dim());
      CHECK(qm.projection.mul(qm.section) == FpMatrix::identity(p, qm.quotient_dim));
      CHECK(kernel_basis(qm.projection) == rel);
    }
  }
}

TEST_CASE("quotient by the full space and by zero") {
  Subspace zero(2, 3);
  QuotientMap q0 = quotient_map(3, zero, 2);
  CHECK(q0.quotient_dim == 3);
  CHECK(q0.projection == FpMatrix::identity(2, 3));

  Subspace all = Subspace::full(2, 3);
  QuotientMap q1 = quotient_map(3, all, 2);
  CHECK(q1.quotient_dim == 0);
  CHECK(q1.projection.rows() == 0);
}

TEST_CASE("subspace sum, intersection, containment") {
  Subspace a = Subspace::from_rows(FpMatrix::from_rows(2, {{1, 0, 0}, {0, 1, 0}}));
  Subspace b = Subspace::from_rows(FpMatrix::from_rows(2, {{0, 1, 0}, {0, 0, 1}}));
  CHECK(a.sum(b).dim() == 3);
  Subspace c = a.intersect(b);
  CHECK(c.dim() == 1);
  CHECK(c.contains_vector({0, 1, 0}));
  CHECK(a.contains(c));
  CHECK(b.contains(c));
}

TEST_CASE("inverse over F5") {
  FpMatrix m = FpMatrix::from_rows(5, {{1, 2}, {3, 4}});
  auto inv = m.inverse();
  REQUIRE(inv.has_value());
  CHECK(m.mul(*inv) == FpMatrix::identity(5, 2));
  CHECK(inv->mul(m) == FpMatrix::identity(5, 2));
  FpMatrix sing = FpMatrix::from_rows(5, {{1, 2}, {2, 4}});
  CHECK_FALSE(sing.inverse().has_value());
}

TEST_CASE("zero-dimensional matrices behave") {
  FpMatrix a(2, 0, 3), b(2, 3, 0);
  CHECK(a.rank() == 0);
  CHECK(kernel_basis(a).dim() == 3);
  CHECK(kernel_basis(b).dim() == 0);
  FpMatrix ab = b.mul(a);  // 3x3 zero
  CHECK(ab.rows() == 3);
  CHECK(ab.is_zero());
  CHECK(b.transpose().rows() == 0);
}

TEST_CASE("kron matches the action index convention") {
  // kron(A, I_n) acts on index a*n+b by A on the first factor.
  FpMatrix a = FpMatrix::from_rows(2, {{0, 1}, {1, 0}});
  FpMatrix id2 = FpMatrix::identity(2, 2);
  FpMatrix k = a.kron(id2);
  std::vector<uint8_t> v = {1, 0, 0, 0};  // e_{0*2+0}
  auto kv = k.mul_vec(v);
  CHECK(kv == std::vector<uint8_t>{0, 0, 1, 0});  // e_{1*2+0}
}
