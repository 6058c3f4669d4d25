#include "doctest.h"

#include <random>
#include <set>

#include "modinv/gluing.hpp"

using namespace modinv;

namespace {

std::set<std::string> keys_of(const std::vector<Matrix>& ms)
{
  std::set<std::string> s;
  for (const auto& m : ms)
    s.insert(m.key());
  return s;
}

std::uint64_t max_element_order(const MatrixGroup& g)
{
  std::uint64_t best = 1;
  for (const auto& a : g.elements())
    best = std::max(best, element_order(a));
  return best;
}

} // namespace

TEST_CASE("module dimensions")
{
  Field F2 = Field::from_order(2);
  Field F4 = Field::from_order(4);
  Field F3 = Field::from_order(3);
  CHECK(full_hom_module(1, 1, F2).dimension() == 1);
  CHECK(full_hom_module(2, 2, F2).order() == 16);
  CHECK(full_hom_module(2, 3, F4).dimension() == 12);
  auto sub = subfield_hom_module(1, 1, 2, F4);
  CHECK(sub.dimension() == 1);
  CHECK(sub.mats()[0](0, 0) == 1);
  CHECK(parabolic_module({2}, F3).dimension() == full_hom_module(2, 2, F3).dimension());
  CHECK(parabolic_module({1, 1}, F2).dimension() == 3);
  CHECK(parabolic_module({1, 1}, F3).order() == 27);
  CHECK_THROWS_AS(subfield_hom_module(1, 1, 4, Field::from_order(8)), Error);
  CHECK_THROWS_AS(BimoduleBasis(F2, 1, 1, {Matrix::identity(F2, 1), Matrix::identity(F2, 1)}), Error);
}

TEST_CASE("gluing orders")
{
  Field F2 = Field::from_order(2);
  Field F3 = Field::from_order(3);
  auto zero = glue(gl_group(2, F2), gl_group(1, F2), zero_module(2, 1, F2));
  CHECK(zero.realized.enumerated().order() == 6);

  auto line = glue(MatrixGroup::trivial(F2, 1), MatrixGroup::trivial(F2, 1), full_hom_module(1, 1, F2));
  CHECK(keys_of(line.realized.enumerated().elements()) ==
        keys_of({Matrix::parse(F2, "1,0;0,1"), Matrix::parse(F2, "1,1;0,1")}));

  auto u4 = glue(unipotent_upper(2, F2), unipotent_upper(2, F2), full_hom_module(2, 2, F2));
  CHECK(u4.realized.enumerated().order() == 64);
  CHECK(keys_of(u4.realized.enumerated().elements()) == keys_of(unipotent_upper(4, F2).enumerated().elements()));
  CHECK(u4.m_is_normal());

  auto big = glue(gl_group(2, F3), unipotent_upper(1, F3), full_hom_module(2, 1, F3));
  CHECK(BigInt(big.realized.enumerated().order()) == big.expected_order());
  CHECK(big.expected_order() == 48 * 9);

  auto para = parabolic_glue({1, 1}, F3);
  CHECK(BigInt(para.realized.enumerated().order()) == para.expected_order());
  CHECK(para.expected_order() == 12 * 27 * 12);
  CHECK(para.m_is_normal());
}

TEST_CASE("closure violations are reported")
{
  Field F2 = Field::from_order(2);
  try {
    (void)glue(gl_group(2, F2), gl_group(2, F2), parabolic_module({1, 1}, F2));
    FAIL("expected closure violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ClosureViolation);
  }
  CHECK_THROWS_AS(glue(gl_group(2, F2), gl_group(1, F2), full_hom_module(1, 2, F2)), Error);
}

TEST_CASE("semidirect product law")
{
  Field F2 = Field::from_order(2);
  auto u4 = glue(unipotent_upper(2, F2), unipotent_upper(2, F2), full_hom_module(2, 2, F2));
  auto u4e = u4.realized.enumerated();
  const auto& elems = u4e.elements();
  REQUIRE(elems.size() == 64);
  for (const auto& a : elems)
    for (const auto& b : elems)
      CHECK(realize(semidirect_mul(split(a, 2), split(b, 2))) == a * b);

  Field F3 = Field::from_order(3);
  auto g3 = glue(unipotent_upper(2, F3), gl_group(1, F3), full_hom_module(2, 1, F3));
  auto g3e = g3.realized.enumerated();
  const auto& e3 = g3e.elements();
  std::mt19937 rng(2024);
  std::uniform_int_distribution<std::size_t> pick(0, e3.size() - 1);
  for (int i = 0; i < 10000; ++i) {
    const auto& a = e3[pick(rng)];
    const auto& b = e3[pick(rng)];
    REQUIRE(realize(semidirect_mul(split(a, 2), split(b, 2))) == a * b);
  }
  Triple t = split(e3[5], 2);
  Triple id{Matrix::identity(F3, 2), Matrix(F3, 2, 1), Matrix::identity(F3, 1)};
  CHECK(realize(semidirect_mul(t, id)) == e3[5]);
}

TEST_CASE("thin gluing of the regular module")
{
  struct Case {
    std::uint32_t p, r;
    std::uint64_t order;
  };
  for (auto c : {Case{2, 1, 2 * 4}, Case{2, 2, 4 * 16}, Case{3, 1, 3 * 27}}) {
    Field F = Field::from_order(c.p);
    auto t = thin_glue_regular(c.p, c.r, F);
    std::uint64_t pr = ipow(c.p, c.r);
    CHECK(t.realized.dim() == pr + 1);
    auto e = t.realized.enumerated();
    CHECK(e.order() == c.order);
    CHECK(BigInt(e.order()) == t.expected_order());
    CHECK(max_element_order(e) == pr * c.p);
  }
}

TEST_CASE("diagonal gluing")
{
  Field F3 = Field::from_order(3);
  auto a = diagonal_glue(gl_group(1, F3), full_hom_module(1, 1, F3));
  CHECK(a.realized.enumerated().order() == 6);
  auto b = diagonal_glue(gl_group(2, F3), zero_module(2, 2, F3));
  CHECK(b.realized.enumerated().order() == 48);
  MatrixGroup cp(F3, 2, {Matrix::parse(F3, "1,1;0,1")}, "Cp");
  auto c = diagonal_glue(cp, scalar_identity_module(2, F3));
  CHECK(c.realized.enumerated().order() == 9);
  CHECK(c.m_is_normal());
  BimoduleBasis lower(F3, 2, 2, {Matrix::parse(F3, "0,0;1,0")});
  CHECK_THROWS_AS(diagonal_glue(cp, lower), Error);
}

TEST_CASE("singular alternating forms")
{
  for (std::uint32_t q : {2u, 3u}) {
    Field F = Field::from_order(q);
    // rank 2 on a 3-dimensional space, radical spanned by e1 + e2 + e3
    Matrix B = Matrix::parse(F, q == 2 ? "0,1,1;1,0,1;1,1,0" : "0,1,2;2,0,1;1,2,0");
    auto form = FormSpec::alternating(B);
    auto g = singular_form_group(form);
    CHECK(g.m() == 1);
    CHECK(g.n() == 2);
    auto e = g.realized.enumerated();
    CHECK(e.order() == (q == 2 ? 24u : 432u));
    CHECK(BigInt(e.order()) == g.expected_order());
    Matrix P = *g.basis_change;
    Matrix Pinv = inverse(P);
    for (const auto& h : e.elements())
      CHECK(form_preserved(P * h * Pinv, form));
    for (const auto& h : g.generators_in_original_basis())
      CHECK(form_preserved(h, form));
  }
  Field F2 = Field::from_order(2);
  auto zero = singular_form_group(FormSpec::alternating(Matrix(F2, 2, 2)));
  CHECK(zero.realized.enumerated().order() == 6);
  CHECK_THROWS_AS(singular_form_group(FormSpec::alternating(symplectic_gram(F2, 1))), Error);
}

TEST_CASE("singular symmetric form")
{
  Field F3 = Field::from_order(3);
  auto form = FormSpec::symmetric(Matrix::parse(F3, "1,0,0;0,1,0;0,0,0"));
  auto g = singular_form_group(form);
  auto e = g.realized.enumerated();
  // O_2^+(3) has order 8 (dihedral); radical line gives GL_1(3) and 3^2 homs.
  CHECK(e.order() == 2 * 9 * 8);
  for (const auto& h : g.generators_in_original_basis())
    CHECK(form_preserved(h, form));
}
