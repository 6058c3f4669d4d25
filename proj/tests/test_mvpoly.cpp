#include "doctest.h"

#include <random>

#include "modinv/mvpoly.hpp"

using namespace modinv;

namespace {

Polynomial random_poly(const Field& F, const VariableSpace& S, std::mt19937& rng, int terms, int maxexp)
{
  std::uniform_int_distribution<std::uint32_t> c(0, F.q() - 1);
  std::uniform_int_distribution<std::uint32_t> e(0, static_cast<std::uint32_t>(maxexp));
  std::vector<Term> ts;
  for (int i = 0; i < terms; ++i) {
    Monomial m;
    for (std::size_t v = 0; v < S.size(); ++v) {
      m.e[v] = e(rng);
      m.deg += m.e[v];
    }
    ts.push_back({m, c(rng)});
  }
  return Polynomial::from_terms(F, S, ts);
}

std::vector<std::vector<std::uint32_t>> all_points(const Field& F, std::size_t n)
{
  std::vector<std::vector<std::uint32_t>> pts{{}};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& p : pts)
      for (std::uint32_t a = 0; a < F.q(); ++a) {
        auto v = p;
        v.push_back(a);
        next.push_back(v);
      }
    pts = next;
  }
  return pts;
}

Matrix random_invertible(const Field& F, std::size_t n, std::mt19937& rng)
{
  std::uniform_int_distribution<std::uint32_t> d(0, F.q() - 1);
  while (true) {
    Matrix m(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m.set(i, j, d(rng));
    if (is_invertible(m))
      return m;
  }
}

} // namespace

TEST_CASE("grevlex order on three variables")
{
  auto mono = [](std::uint32_t a, std::uint32_t b, std::uint32_t c) {
    Monomial m;
    m.e[0] = a;
    m.e[1] = b;
    m.e[2] = c;
    m.deg = a + b + c;
    return m;
  };
  CHECK(grevlex_greater(mono(1, 0, 0), mono(0, 1, 0)));
  CHECK(grevlex_greater(mono(0, 2, 0), mono(1, 0, 1)));
  CHECK(grevlex_greater(mono(1, 1, 0), mono(2, 0, 0)) == false);
  CHECK(grevlex_greater(mono(0, 0, 3), mono(5, 0, 0)) == false);
  CHECK(grevlex_greater(mono(0, 0, 1), mono(5, 0, 0)) == false);
}

TEST_CASE("arithmetic agrees with pointwise evaluation")
{
  std::mt19937 rng(3);
  for (std::uint32_t q : {3u, 4u, 5u}) {
    Field F = Field::from_order(q);
    VariableSpace S = VariableSpace::generic(3);
    auto pts = all_points(F, 3);
    for (int trial = 0; trial < 10; ++trial) {
      Polynomial f = random_poly(F, S, rng, 6, 3);
      Polynomial g = random_poly(F, S, rng, 5, 3);
      Polynomial sum = f + g;
      Polynomial prod = f * g;
      Polynomial pw = f.pow(q + 2);
      for (const auto& x : pts) {
        CHECK(sum.evaluate(x) == F.add(f.evaluate(x), g.evaluate(x)));
        CHECK(prod.evaluate(x) == F.mul(f.evaluate(x), g.evaluate(x)));
        CHECK(pw.evaluate(x) == F.pow(f.evaluate(x), q + 2));
      }
      CHECK(f.pow(7) == f * f * f * f * f * f * f);
      CHECK(f.q_power(1) == f.pow(q));
    }
  }
}

TEST_CASE("action by elementary factors equals substitution and evaluation")
{
  std::mt19937 rng(5);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    Field F = Field::from_order(q);
    VariableSpace S = VariableSpace::generic(3);
    auto pts = all_points(F, 3);
    for (int trial = 0; trial < 8; ++trial) {
      Polynomial f = random_poly(F, S, rng, 5, 2 * static_cast<int>(q));
      Matrix g = random_invertible(F, 3, rng);
      Matrix h = random_invertible(F, 3, rng);
      Polynomial fg = act(f, g);
      CHECK(fg == act_by_substitution(f, g));
      for (const auto& x : pts)
        CHECK(fg.evaluate(x) == f.evaluate(matvec(g, x)));
      CHECK(act(f, g * h) == act(fg, h));
    }
  }
}

TEST_CASE("division")
{
  std::mt19937 rng(9);
  Field F = Field::from_order(7);
  VariableSpace S = VariableSpace::generic(3);
  for (int trial = 0; trial < 10; ++trial) {
    Polynomial a = random_poly(F, S, rng, 4, 3);
    Polynomial b = random_poly(F, S, rng, 3, 2);
    if (b.is_zero() || a.is_zero())
      continue;
    CHECK(exact_divide(a * b, b) == a);
    DivisionResult d = divide(a + Polynomial::variable(F, S, 0), b);
    CHECK(d.quotient * b + d.remainder == a + Polynomial::variable(F, S, 0));
  }
  Polynomial x = Polynomial::variable(F, S, 0);
  Polynomial y = Polynomial::variable(F, S, 1);
  try {
    (void)exact_divide(x, y);
    FAIL("expected inexact division");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InexactDivision);
  }
  try {
    (void)exact_divide(x, Polynomial(F, S));
    FAIL("expected division by zero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("text round trip over GF(9)")
{
  std::mt19937 rng(13);
  Field F = Field::from_order(9);
  VariableSpace S = VariableSpace::symplectic(2);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial f = random_poly(F, S, rng, 5, 4);
    CHECK(parse_polynomial(F, S, f.to_string()) == f);
  }
  Polynomial g = parse_polynomial(F, S, "x1^2*y2 - 2*t*x2 + (1+t)");
  CHECK(g.size() == 3);
  CHECK(Polynomial(F, S).to_string() == "0");
  CHECK_THROWS_AS(parse_polynomial(F, S, "x3"), Error);
  CHECK_THROWS_AS(parse_polynomial(F, S, "x1 +"), Error);
}

TEST_CASE("symplectic variable layout")
{
  VariableSpace S = VariableSpace::symplectic(3);
  CHECK(S.names() == std::vector<std::string>{"y1", "y2", "y3", "x3", "x2", "x1"});
  CHECK(S.y(1) == 0);
  CHECK(S.x(1) == 5);
  CHECK(S.x(3) == 3);
}

TEST_CASE("mixed spaces are rejected")
{
  Field F = Field::from_order(2);
  Polynomial a = Polynomial::variable(F, VariableSpace::generic(2), 0);
  Polynomial b = Polynomial::variable(F, VariableSpace::generic(3), 0);
  CHECK_THROWS_AS(a + b, Error);
  Polynomial c = Polynomial::variable(Field::from_order(3), VariableSpace::generic(2), 0);
  CHECK_THROWS_AS(a * c, Error);
}
