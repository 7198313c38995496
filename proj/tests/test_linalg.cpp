#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "taurec/linalg.hpp"

using namespace taurec;

TEST_CASE("rref of a rank-one matrix") {
  Matrix m = Matrix::from_rows({{1, 2}, {2, 4}});
  auto [r, pivots] = rref(m);
  CHECK(r == Matrix::from_rows({{1, 2}, {0, 0}}));
  CHECK(pivots == std::vector<std::size_t>{0});
  CHECK(rank(m) == 1);
}

TEST_CASE("kernel basis") {
  Matrix k = kernel_basis(Matrix::from_rows({{1, 2}, {2, 4}}));
  REQUIRE(k.cols() == 1);
  CHECK(k == Matrix::from_rows({{-2}, {1}}));
  CHECK((Matrix::from_rows({{1, 2}, {2, 4}}) * k).is_zero());
}

TEST_CASE("solve consistent and inconsistent systems") {
  Matrix a = Matrix::from_rows({{1, 0}, {0, 0}});
  auto x = solve(a, Matrix::from_rows({{1}, {0}}));
  REQUIRE(x);
  CHECK(*x == Matrix::from_rows({{1}, {0}}));
  CHECK_FALSE(solve(a, Matrix::from_rows({{0}, {1}})));
}

TEST_CASE("F_5 arithmetic") {
  Field f5 = Field::prime(5);
  Matrix m = Matrix::from_rows({{2}}, f5);
  auto inv = inverse(m);
  REQUIRE(inv);
  CHECK((*inv)(0, 0) == 3);
  CHECK(rank(Matrix::from_rows({{1, 2}, {3, 1}}, f5)) == 1);
  CHECK(rank(Matrix::from_rows({{1, 2}, {3, 1}})) == 2);
  CHECK_THROWS_AS(Field::prime(6), Error);
}

TEST_CASE("mixed field tags are rejected") {
  Matrix a = Matrix::identity(2), b = Matrix::identity(2, Field::prime(3));
  CHECK_THROWS_AS(a * b, FieldMismatch);
  CHECK_THROWS_AS(solve(a, b), FieldMismatch);
}

TEST_CASE("subspace operations") {
  Matrix u = Matrix::from_rows({{1}, {0}, {0}});
  Matrix v = Matrix::from_rows({{1}, {1}, {0}});
  CHECK(subspace_sum(u, v).cols() == 2);
  CHECK(subspace_intersection(u, v).cols() == 0);
  CHECK(subspace_intersection(subspace_sum(u, v), Matrix::from_rows({{0}, {1}, {0}})).cols() == 1);
  CHECK(subspace_contains(subspace_sum(u, v), Matrix::from_rows({{3}, {-2}, {0}})));
  CHECK_FALSE(subspace_contains(u, v));
  Matrix f = Matrix::from_rows({{1, 0, 0}, {0, 0, 0}});
  // preimage of 0 under the first coordinate projection
  CHECK(subspace_preimage(f, Matrix(2, 0)).cols() == 2);
  CHECK(subspace_complement(subspace_sum(u, v)).cols() == 1);
}

TEST_CASE("characteristic polynomial and rational roots") {
  Matrix m = Matrix::from_rows({{2, 1, 0}, {0, 2, 0}, {1, 0, 3}});
  Polynomial p = characteristic_polynomial(m);
  // (x-2)^2 (x-3) = x^3 - 7x^2 + 16x - 12
  CHECK(p == Polynomial{-12, 16, -7, 1});
  auto roots = field_roots(p, Field());
  REQUIRE(roots);
  CHECK(*roots == std::vector<Rational>{2, 3});
  CHECK(is_nilpotent(Matrix::from_rows({{0, 1}, {0, 0}})));
  CHECK_FALSE(is_nilpotent(m));
}

TEST_CASE("random rank identities") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> d(-2, 2);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix m(4, 5);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 5; ++j) m.set(i, j, d(rng));
    CHECK(rank(m) + kernel_basis(m).cols() == 5);
    CHECK((m * kernel_basis(m)).is_zero());
    CHECK(rank(m) == rank(m.transpose()));
  }
}
