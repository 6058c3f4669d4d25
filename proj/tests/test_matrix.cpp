#include "doctest.h"

#include <random>

#include "modinv/matrix.hpp"

using namespace modinv;

namespace {

Matrix random_matrix(const Field& F, std::size_t n, std::mt19937& rng)
{
  std::uniform_int_distribution<std::uint32_t> d(0, F.q() - 1);
  Matrix m(F, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      m.set(i, j, d(rng));
  return m;
}

} // namespace

TEST_CASE("inverse and determinant agree with products")
{
  std::mt19937 rng(7);
  for (std::uint32_t q : {2u, 3u, 4u, 9u}) {
    Field F = Field::from_order(q);
    for (int trial = 0; trial < 40; ++trial) {
      Matrix a = random_matrix(F, 4, rng);
      Matrix b = random_matrix(F, 4, rng);
      CHECK(determinant(a * b) == F.mul(determinant(a), determinant(b)));
      if (is_invertible(a)) {
        CHECK((a * inverse(a)).is_identity());
        CHECK((inverse(a) * a).is_identity());
      } else {
        CHECK(determinant(a) == 0);
        CHECK_THROWS_AS(inverse(a), Error);
      }
    }
  }
}

TEST_CASE("elementary factors multiply back to the matrix")
{
  std::mt19937 rng(11);
  Field F = Field::from_order(9);
  int seen = 0;
  while (seen < 30) {
    Matrix g = random_matrix(F, 5, rng);
    if (!is_invertible(g))
      continue;
    ++seen;
    Matrix prod = Matrix::identity(F, 5);
    for (const auto& op : elementary_factors(g))
      prod = prod * elementary_matrix(F, 5, op);
    CHECK(prod == g);
  }
}

TEST_CASE("nullspace rows are killed and have the right count")
{
  Field F = Field::from_order(5);
  Matrix m = Matrix::parse(F, "1,2,3,4;2,4,1,3");
  Matrix n = nullspace(m);
  CHECK(n.rows() == 4 - rank(m));
  CHECK((m * n.transpose()).is_zero());
}

TEST_CASE("element order")
{
  Field F = Field::from_order(3);
  Matrix j = Matrix::parse(F, "1,1;0,1");
  CHECK(element_order(j) == 3);
  Matrix w = Matrix::parse(F, "0,2;1,0");
  CHECK(element_order(w) == 4);
  CHECK(Matrix::parse(F, j.to_string()) == j);
}

TEST_CASE("FpSpan counts F_p dimension")
{
  Field F = Field::from_order(4);
  FpSpan s(F, 2);
  CHECK(s.insert({1, 0}));
  CHECK(s.insert({F.generator(), 0}));
  CHECK_FALSE(s.insert({F.add(1, F.generator()), 0}));
  CHECK(s.dimension() == 2);
  CHECK(s.contains({F.add(1, F.generator()), 0}));
  CHECK_FALSE(s.contains({0, 1}));
}
