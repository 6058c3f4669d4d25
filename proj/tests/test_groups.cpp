#include "doctest.h"

#include <set>

#include "modinv/groups.hpp"

using namespace modinv;

namespace {

std::set<std::string> keys_of(const std::vector<Matrix>& ms)
{
  std::set<std::string> s;
  for (const auto& m : ms)
    s.insert(m.key());
  return s;
}

// All n x n matrices over a small field satisfying a predicate.
template <typename Pred>
std::vector<Matrix> brute_force(const Field& F, std::size_t n, Pred pred)
{
  std::vector<Matrix> out;
  std::uint64_t total = ipow(F.q(), n * n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Matrix m(F, n, n);
    std::uint64_t x = idx;
    for (std::size_t i = 0; i < n * n; ++i) {
      m.set(i / n, i % n, static_cast<std::uint32_t>(x % F.q()));
      x /= F.q();
    }
    if (pred(m))
      out.push_back(m);
  }
  return out;
}

bool stabilizes_flag_block(const Matrix& g, std::size_t k)
{
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t r = k; r < g.rows(); ++r)
      if (g(r, c) != 0)
        return false;
  return true;
}

} // namespace

TEST_CASE("order formulas")
{
  CHECK(gl_order(2, 3) == 48);
  CHECK(sp_order(1, 3) == 24);
  CHECK(sp_order(2, 2) == 720);
  CHECK(pk_order(2, 2, 3) == 27);
  CHECK(gk_order(2, 1, 2) == 48);
  CHECK(gk_order(2, 2, 3) == 1296);
  CHECK(usp_order(2, 3) == 81);
}

TEST_CASE("enumerated orders match closed forms")
{
  Field F2 = Field::from_order(2);
  Field F3 = Field::from_order(3);
  Field F4 = Field::from_order(4);
  auto check = [](const MatrixGroup& g) {
    CAPTURE(g.name());
    CHECK(BigInt(g.enumerated().order()) == *g.claimed_order());
  };
  check(MatrixGroup::trivial(F2, 3));
  check(gl_group(1, F3));
  check(gl_group(2, F2));
  check(gl_group(2, F3));
  check(gl_group(3, F2));
  check(gl_group(2, F4));
  check(unipotent_upper(2, F3));
  check(unipotent_upper(4, F2));
  check(unipotent_upper(3, F4));
  check(sp_group(1, F2));
  check(sp_group(1, F3));
  check(sp_group(1, F4));
  check(sp_group(2, F2));
  check(usp_group(2, F2));
  check(usp_group(2, F3));
  check(usp_group(2, F4));
  check(p_k_subgroup(1, 1, F2));
  check(p_k_subgroup(2, 1, F3));
  check(p_k_subgroup(2, 2, F3));
  check(parabolic_g_k(1, 1, F3));
  check(parabolic_g_k(2, 1, F2));
  check(parabolic_g_k(2, 2, F3));
  check(stabilizer_sp(2, 1, F3));
  check(o3_example(F3));
  check(o4_example(F3));
}

TEST_CASE("symplectic groups agree with brute-force filtering")
{
  Field F2 = Field::from_order(2);
  auto sp4 = brute_force(F2, 4, [](const Matrix& m) { return is_symplectic(m); });
  CHECK(sp4.size() == 720);
  CHECK(keys_of(sp4) == keys_of(sp_group(2, F2).enumerated().elements()));

  auto usp4 = brute_force(F2, 4, [](const Matrix& m) {
    for (std::size_t i = 0; i < 4; ++i) {
      if (m(i, i) != 1)
        return false;
      for (std::size_t j = 0; j < i; ++j)
        if (m(i, j) != 0)
          return false;
    }
    return is_symplectic(m);
  });
  CHECK(keys_of(usp4) == keys_of(usp_group(2, F2).enumerated().elements()));

  Field F3 = Field::from_order(3);
  auto sp2 = brute_force(F3, 2, [](const Matrix& m) { return is_symplectic(m); });
  CHECK(keys_of(sp2) == keys_of(sp_group(1, F3).enumerated().elements()));
}

TEST_CASE("parabolics are flag stabilizers inside Sp4")
{
  for (std::uint32_t q : {2u, 3u}) {
    Field F = Field::from_order(q);
    auto sp = sp_group(2, F).enumerated();
    for (std::size_t k : {1u, 2u}) {
      std::vector<Matrix> stab;
      for (const auto& g : sp.elements())
        if (stabilizes_flag_block(g, k))
          stab.push_back(g);
      CAPTURE(q);
      CAPTURE(k);
      CHECK(keys_of(stab) == keys_of(parabolic_g_k(2, k, F).enumerated().elements()));
    }
  }
}

TEST_CASE("P_k from parameters equals the generated group")
{
  for (std::uint32_t q : {2u, 3u, 4u}) {
    Field F = Field::from_order(q);
    for (std::size_t m = 1; m <= 3; ++m)
      for (std::size_t k = 1; k <= m; ++k) {
        if (pk_order(m, k, q) > 20000)
          continue;
        auto direct = p_k_elements(m, k, F);
        CHECK(BigInt(direct.size()) == pk_order(m, k, q));
        CHECK(keys_of(direct) == keys_of(p_k_subgroup(m, k, F).enumerated().elements()));
      }
  }
}

TEST_CASE("P_m is elementary abelian")
{
  Field F = Field::from_order(3);
  auto pm = p_k_subgroup(2, 2, F).enumerated();
  for (const auto& a : pm.elements()) {
    if (!a.is_identity())
      CHECK(element_order(a) == 3);
    for (const auto& b : pm.elements())
      CHECK(a * b == b * a);
  }
}

TEST_CASE("enumeration is independent of generator order and respects the cap")
{
  Field F = Field::from_order(3);
  auto g = gl_group(2, F);
  auto gens = g.generators();
  std::reverse(gens.begin(), gens.end());
  MatrixGroup h(F, 2, gens);
  auto a = g.enumerated().elements();
  auto b = h.enumerated().elements();
  CHECK(a == b);
  try {
    (void)g.enumerated(10);
    FAIL("expected cap error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CapExceeded);
  }
}

TEST_CASE("stabilizers of polynomials")
{
  Field F3 = Field::from_order(3);
  VariableSpace S2 = VariableSpace::symplectic(1);
  Polynomial xi1 = parse_polynomial(F3, S2, "y1^3*x1 - y1*x1^3");
  auto st = stabilizer_of_polynomial(gl_group(2, F3).enumerated(), xi1);
  CHECK(st.order() == 24);
  CHECK(keys_of(st.elements()) == keys_of(sp_group(1, F3).enumerated().elements()));

  VariableSpace S3 = VariableSpace::generic(3);
  Polynomial delta = parse_polynomial(F3, S3, "x2^2 - x1*x3");
  auto o3 = stabilizer_of_polynomial(gl_group(3, F3).enumerated(), delta);
  CHECK(o3.order() == 48);
  for (const auto& a : o3.elements())
    for (const auto& b : o3.generators())
      CHECK(o3.contains(a * b));

  auto triv = stabilizer_of_polynomial(MatrixGroup::trivial(F3, 3).enumerated(), delta);
  CHECK(triv.order() == 1);
}

TEST_CASE("forms")
{
  Field F3 = Field::from_order(3);
  VariableSpace S3 = VariableSpace::generic(3);
  auto delta = FormSpec::quadratic_form(parse_polynomial(F3, S3, "x2^2 - x1*x3"));
  for (std::uint32_t c = 0; c < 3; ++c)
    CHECK(form_preserved(o3_element(F3, c), delta));
  CHECK(form_preserved(Matrix::identity(F3, 3), delta));

  VariableSpace S4 = VariableSpace::generic(4);
  auto u = FormSpec::quadratic_form(parse_polynomial(F3, S4, "x2*x3 - x1*x4"));
  for (std::uint32_t c1 = 0; c1 < 3; ++c1)
    for (std::uint32_t c2 = 0; c2 < 3; ++c2)
      CHECK(form_preserved(o4_element(F3, c1, c2), u));

  auto j = FormSpec::alternating(symplectic_gram(F3, 2));
  auto sp4 = sp_group(2, F3);
  for (const auto& g : sp4.generators())
    CHECK(form_preserved(g, j));
  CHECK_FALSE(form_preserved(Matrix::parse(F3, "2,0,0,0;0,1,0,0;0,0,1,0;0,0,0,1"), j));

  Field F4 = Field::from_order(4);
  auto h = FormSpec::hermitian(Matrix::identity(F4, 2));
  Matrix unitary = Matrix::parse(F4, "0,1;1,0");
  CHECK(form_preserved(unitary, h));
  Matrix scalar_t = Matrix::identity(F4, 2).scaled(F4.generator());
  CHECK(form_preserved(scalar_t, h));
  CHECK_FALSE(form_preserved(Matrix::parse(F4, "1,1;0,1"), h));
  CHECK_THROWS_AS(FormSpec::alternating(Matrix::identity(F3, 2)), Error);
}
