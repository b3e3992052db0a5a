#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qcov/matrix.hpp"

using namespace qcov;

namespace {

Mat random_mat(const PrimeField& F, std::mt19937_64& rng, std::size_t r, std::size_t c) {
  Mat m(r, c);
  std::uniform_int_distribution<fp_t> dist(0, F.p() - 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

}  // namespace

TEST_CASE("prime field basics") {
  CHECK(is_prime(2));
  CHECK(is_prime(32003));
  CHECK_FALSE(is_prime(32001));
  CHECK_THROWS_AS(PrimeField(6), Error);

  PrimeField F(7);
  CHECK(F.add(5, 4) == 2);
  CHECK(F.sub(2, 5) == 4);
  CHECK(F.mul(3, 5) == 1);
  CHECK(F.inv(3) == 5);
  CHECK(F.reduce(-1) == 6);
  CHECK(F.pow(3, 6) == 1);
  CHECK_THROWS_AS(F.inv(0), Error);
}

TEST_CASE("solve: identity system over p=7") {
  PrimeField F(7);
  Mat a = Mat::identity(2);
  LinSolve s = solve_linear(F, a, Vec{3, 5});
  REQUIRE(s.consistent);
  CHECK(s.particular == Vec{3, 5});
  CHECK(s.kernel.cols() == 0);
}

TEST_CASE("solve: rank-1 map on a 2-space over p=5") {
  PrimeField F(5);
  Mat a(1, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  LinSolve s = solve_linear(F, a, Vec{0});
  REQUIRE(s.consistent);
  CHECK(s.particular == Vec{0, 0});
  REQUIRE(s.kernel.cols() == 1);
  CHECK(s.kernel.col(0) == Vec{4, 1});  // spans {(1,4)} up to scalar
}

TEST_CASE("solve: zero map cannot hit 1") {
  PrimeField F(5);
  Mat a(1, 1);
  LinSolve s = solve_linear(F, a, Vec{1});
  CHECK_FALSE(s.consistent);
}

TEST_CASE("solve: dimension mismatch is a distinct error") {
  PrimeField F(5);
  Mat a(2, 2);
  CHECK_THROWS_AS(solve_linear(F, a, Vec{1}), Error);
}

TEST_CASE("rank and kernel of trivial matrices") {
  PrimeField F(7);
  CHECK(rank(F, Mat(3, 3)) == 0);
  CHECK(kernel_basis(F, Mat::identity(4)).cols() == 0);
  CHECK(kernel_basis(F, Mat(3, 3)).cols() == 3);
  // 0xN and Nx0 behave as maps to/from the zero space.
  CHECK(rank(F, Mat(0, 3)) == 0);
  CHECK(kernel_basis(F, Mat(0, 3)).cols() == 3);
  CHECK(rank(F, Mat(3, 0)) == 0);
  CHECK(inverse(F, Mat(0, 0)).has_value());
}

TEST_CASE("invert [[1,1],[0,1]] over p=7 and multiply back") {
  PrimeField F(7);
  Mat a(2, 2);
  a(0, 0) = 1;
  a(0, 1) = 1;
  a(1, 1) = 1;
  auto inv = inverse(F, a);
  REQUIRE(inv.has_value());
  Mat expect(2, 2);
  expect(0, 0) = 1;
  expect(0, 1) = 6;
  expect(1, 1) = 1;
  CHECK(*inv == expect);
  CHECK(mat_mul(F, *inv, a) == Mat::identity(2));
  CHECK(mat_mul(F, a, *inv) == Mat::identity(2));

  Mat singular(2, 2);
  singular(0, 0) = 1;
  singular(1, 0) = 1;
  CHECK_FALSE(inverse(F, singular).has_value());
  CHECK_THROWS_AS(inverse(F, Mat(2, 3)), Error);
}

TEST_CASE("random properties: solve, kernel, rank, inverse") {
  for (fp_t p : {2u, 5u, 32003u}) {
    PrimeField F(p);
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<std::size_t> dim(0, 6);
    for (int iter = 0; iter < 60; ++iter) {
      std::size_t r = dim(rng), c = dim(rng);
      Mat a = random_mat(F, rng, r, c);

      CHECK(rank(F, a) == rank(F, transpose(a)));

      Mat k = kernel_basis(F, a);
      CHECK(rank(F, a) + k.cols() == c);
      for (std::size_t j = 0; j < k.cols(); ++j)
        CHECK(vec_is_zero(mat_vec(F, a, k.col(j))));

      Vec x(c);
      std::uniform_int_distribution<fp_t> dist(0, p - 1);
      for (auto& v : x) v = dist(rng);
      Vec b = mat_vec(F, a, x);
      LinSolve s = solve_linear(F, a, b);
      REQUIRE(s.consistent);
      CHECK(mat_vec(F, a, s.particular) == b);

      if (r == c && r > 0) {
        auto inv = inverse(F, a);
        if (inv) CHECK(mat_mul(F, *inv, a) == Mat::identity(r));
      }
    }
  }
}

TEST_CASE("row space insert/contains") {
  PrimeField F(5);
  RowSpace rs(F, 3);
  CHECK(rs.insert(Vec{1, 2, 3}));
  CHECK_FALSE(rs.insert(Vec{2, 4, 1}));  // 2x the first
  CHECK(rs.insert(Vec{0, 1, 0}));
  CHECK(rs.dim() == 2);
  CHECK(rs.contains(Vec{1, 0, 3}));
  CHECK_FALSE(rs.contains(Vec{0, 0, 1}));
}
