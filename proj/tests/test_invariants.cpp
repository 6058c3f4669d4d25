#include "doctest.h"

#include "modinv/error.hpp"
#include "modinv/invariants.hpp"

using namespace modinv;

namespace {

// Every F_q-combination of the given polynomials.
std::vector<Polynomial> fq_span(const std::vector<Polynomial>& vs, const Field& F, const VariableSpace& S)
{
  std::vector<Polynomial> out{Polynomial(F, S)};
  for (const auto& v : vs) {
    std::vector<Polynomial> next;
    for (const auto& w : out)
      for (std::uint32_t c = 0; c < F.q(); ++c)
        next.push_back(w + v.scaled(c));
    out = std::move(next);
  }
  return out;
}

Polynomial brute_orbit(const Polynomial& l, const std::vector<Polynomial>& vs)
{
  Polynomial prod = Polynomial::constant(l.field(), l.space(), 1);
  for (const auto& u : fq_span(vs, l.field(), l.space()))
    prod *= l + u;
  return prod;
}

bool invariant_under_all(const Polynomial& f, const MatrixGroup& g)
{
  MatrixGroup e = g.enumerated();
  for (const auto& h : e.elements())
    if (act_by_substitution(f, h) != f)
      return false;
  return true;
}

Polynomial var(const Field& F, const VariableSpace& S, const std::string& name)
{
  return Polynomial::variable(F, S, static_cast<std::size_t>(S.index_of(name)));
}

} // namespace

TEST_CASE("span product agrees with the brute-force product over the span")
{
  for (auto [p, r] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    Field F = Field::build(p, r);
    VariableSpace S = VariableSpace::generic(4);
    Polynomial x1 = Polynomial::variable(F, S, 0), x2 = Polynomial::variable(F, S, 1);
    Polynomial x3 = Polynomial::variable(F, S, 2), x4 = Polynomial::variable(F, S, 3);
    std::vector<Polynomial> vs{x1 + x2, x3};
    if (F.q() <= 3)
      vs.push_back(x2 - x3.scaled(F.primitive()));
    CHECK(orbit_product_fq(x4, vs) == brute_orbit(x4, vs));
    CHECK(orbit_product_fq(x1, {x2}) == brute_orbit(x1, {x2}));
  }
}

TEST_CASE("dependent span basis is rejected")
{
  Field F = Field::build(3, 1);
  VariableSpace S = VariableSpace::generic(2);
  Polynomial x1 = Polynomial::variable(F, S, 0);
  CHECK_THROWS_AS(span_product(fp_expand({x1, x1.scaled(2)}), F, S), Error);
}

TEST_CASE("Dickson invariants by product agree with the Moore quotient")
{
  for (auto [n, q] : {std::pair{1u, 2u}, {2u, 2u}, {1u, 3u}, {2u, 3u}, {3u, 2u}, {1u, 4u}, {2u, 4u}}) {
    Field F = Field::from_order(q);
    for (std::size_t i = 0; i <= n; ++i) {
      CAPTURE(n);
      CAPTURE(q);
      CAPTURE(i);
      Polynomial d = dickson(n, F, i);
      CHECK(d == moore_dickson(n, F, i));
      CHECK(d.is_homogeneous());
      CHECK(d.degree() == static_cast<std::int64_t>(ipow(q, n) - ipow(q, n - i)));
    }
  }
}

TEST_CASE("small Dickson invariants in closed form")
{
  Field F2 = Field::build(2, 1);
  VariableSpace S = VariableSpace::generic(2);
  CHECK(dickson(2, F2, 1) == parse_polynomial(F2, S, "x1^2 + x1*x2 + x2^2"));
  CHECK(dickson(2, F2, 2) == parse_polynomial(F2, S, "x1^2*x2 + x1*x2^2"));
  CHECK(dickson(2, F2, 2).to_string() == "x1^2*x2 + x1*x2^2");
  Field F3 = Field::build(3, 1);
  VariableSpace S1 = VariableSpace::generic(1);
  CHECK(dickson(1, F3, 1) == parse_polynomial(F3, S1, "2*x1^2"));
  CHECK(dickson(1, F3, 0) == Polynomial::constant(F3, S1, 1));
}

TEST_CASE("Dickson invariants are GL_n invariants")
{
  for (auto [n, q] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}}) {
    Field F = Field::from_order(q);
    MatrixGroup G = gl_group(n, F);
    for (std::size_t i = 1; i <= n; ++i)
      CHECK(invariant_under_all(dickson(n, F, i), G));
  }
}

TEST_CASE("span products are F_q-linear")
{
  for (unsigned q : {2u, 3u, 4u}) {
    Field F = Field::from_order(q);
    const std::size_t m = 2;
    VariableSpace S = VariableSpace::symplectic(m);
    AdditivePolynomial N = n_k_additive(1, m, F);
    Polynomial a = var(F, S, "y1") + var(F, S, "x2").scaled(F.primitive());
    Polynomial b = var(F, S, "y2") * var(F, S, "x1");
    CHECK(N(a + b) == N(a) + N(b));
    for (std::uint32_t c = 0; c < F.q(); ++c)
      CHECK(N(a.scaled(c)) == N(a).scaled(c));
  }
}

TEST_CASE("xi_i is a symplectic invariant")
{
  for (auto [m, q] : {std::pair{1u, 2u}, {1u, 3u}, {2u, 2u}}) {
    Field F = Field::from_order(q);
    MatrixGroup G = sp_group(m, F);
    for (std::int64_t i = 1; i <= 3; ++i)
      CHECK(invariant_under_all(xi(m, F, i), G));
  }
  Field F3 = Field::build(3, 1);
  MatrixGroup G = sp_group(2, F3);
  for (std::int64_t i = 1; i <= 3; ++i)
    for (const auto& g : G.generators())
      CHECK(act(xi(2, F3, i), g) == xi(2, F3, i));
}

TEST_CASE("xi conventions")
{
  Field F = Field::build(3, 1);
  VariableSpace S = VariableSpace::symplectic(1);
  CHECK(xi(1, F, 1) == parse_polynomial(F, S, "y1^3*x1 - y1*x1^3"));
  CHECK(xi(1, F, 0).is_zero());
  CHECK(xi_power(2, F, 0, 3).is_zero());
  CHECK(xi_power(2, F, -1, 1) == -xi(2, F, 1));
  CHECK(xi_power(2, F, -1, 2) == -xi(2, F, 1).q_power(1));
  CHECK(xi_power(2, F, 2, 1) == xi(2, F, 2).q_power(1));
  CHECK_THROWS_AS(xi_power(2, F, -2, 1), Error);
}

TEST_CASE("N_k vanishes on W_k and agrees with the orbit product under P_m")
{
  for (unsigned q : {2u, 3u}) {
    Field F = Field::from_order(q);
    const std::size_t m = 2;
    auto L = pinned_list(m, F);
    for (std::size_t k = 1; k <= m; ++k) {
      for (std::size_t i = 0; i < 2 * m - k; ++i)
        CHECK(n_k(L[i], k, m).is_zero());
      Polynomial nk = n_k(L[2 * m - k], k, m);
      CHECK(nk.degree() == static_cast<std::int64_t>(ipow(q, 2 * m - k)));
    }
    VariableSpace S = VariableSpace::symplectic(m);
    MatrixGroup P = p_k_subgroup(m, m, F);
    for (const char* y : {"y1", "y2"}) {
      OrbitProduct op = orbit_product_under_group(var(F, S, y), P);
      CHECK(op.basis.size() == m * F.r());
      CHECK(op.product == n_k(var(F, S, y), m, m));
    }
    std::vector<Polynomial> W(L.begin(), L.begin() + 3);
    CHECK(n_k(var(F, S, "y1"), 1, m) == brute_orbit(var(F, S, "y1"), W));
  }
}

TEST_CASE("partial Dickson invariants")
{
  Field F = Field::build(2, 1);
  auto L = pinned_list(2, F);
  CHECK(partial_dickson(1, 1, 2, F) == L[0]);
  CHECK(partial_dickson(0, 3, 2, F).is_constant());
  CHECK(partial_dickson(2, 2, 2, F) == moore_dickson_of({L[0], L[1]}, F, VariableSpace::symplectic(2))[2]);
  CHECK_THROWS_AS(partial_dickson(3, 2, 2, F), Error);
}

TEST_CASE("psi on the full hom gluing")
{
  Field F = Field::build(2, 1);
  GluingGroup g11 = glue(MatrixGroup::trivial(F, 1), MatrixGroup::trivial(F, 1), full_hom_module(1, 1, F));
  VariableSpace S = VariableSpace::gluing(1, 1);
  CHECK(psi_of_y(0, g11) == parse_polynomial(F, S, "y1^2 + y1*x1"));
  GluingGroup g12 = glue(MatrixGroup::trivial(F, 1), MatrixGroup::trivial(F, 2), full_hom_module(1, 2, F));
  CHECK(psi_of_y(0, g12).degree() == 4);
  OrbitProduct op = orbit_product_under_group(Polynomial::variable(F, VariableSpace::gluing(1, 2), 0), g12.realized);
  CHECK(op.product == psi_of_y(0, g12));
}

TEST_CASE("psi on U(2) x U(2) = U(4) and on a parabolic gluing")
{
  for (unsigned q : {2u, 3u}) {
    Field F = Field::from_order(q);
    MatrixGroup U2 = unipotent_upper(2, F);
    GluingGroup g = glue(U2, U2, full_hom_module(2, 2, F));
    for (std::size_t j = 0; j < 2; ++j) {
      Polynomial y = Polynomial::variable(F, VariableSpace::gluing(2, 2), j);
      OrbitProduct op = orbit_product_under_group(y, glue(MatrixGroup::trivial(F, 2), MatrixGroup::trivial(F, 2),
                                                          full_hom_module(2, 2, F)).realized);
      CHECK(psi_of_y(j, g) == op.product);
      CHECK(psi_substitute(y, g) == op.product);
    }
    GluingGroup para = parabolic_glue({1, 1}, F);
    VariableSpace S = VariableSpace::gluing(2, 2);
    Polynomial x1 = var(F, S, "x1"), x2 = var(F, S, "x2");
    CHECK(psi_of_y(0, para) == brute_orbit(var(F, S, "y1"), {x1, x2}));
    CHECK(psi_of_y(1, para) == brute_orbit(var(F, S, "y2"), {x2}));
    CHECK(flag_substitute(var(F, S, "y2"), para, 0) == brute_orbit(var(F, S, "y2"), {x1, x2}));
  }
}

TEST_CASE("Kuhn-Mitchell generators for the flag (1,1)")
{
  for (unsigned q : {2u, 3u}) {
    Field F = Field::from_order(q);
    VariableSpace S = VariableSpace::generic(2);
    Polynomial x1 = Polynomial::variable(F, S, 0), x2 = Polynomial::variable(F, S, 1);
    auto h = kuhn_mitchell({x1, x2}, {1, 1});
    REQUIRE(h.size() == 2);
    CHECK(h[0] == -(x1.pow(q) - x2.pow(q - 1) * x1).pow(q - 1));
    CHECK(h[1] == -x2.pow(q - 1));
    MatrixGroup P = parabolic_gl_group({1, 1}, F);
    for (const auto& f : h)
      CHECK(invariant_under_all(f, P));
    auto degs = kuhn_mitchell_degrees({1, 1}, q);
    CHECK(degs == std::vector<std::uint64_t>{q * (q - 1), q - 1});
    CHECK(degs[0] * degs[1] == P.enumerated().order());
  }
}

TEST_CASE("Kuhn-Mitchell degree product is the order of P_F")
{
  Field F = Field::build(2, 1);
  for (auto part : {std::vector<std::size_t>{2, 1}, {1, 2}, {1, 1, 1}, {3}}) {
    auto degs = kuhn_mitchell_degrees(part, 2);
    std::uint64_t prod = 1;
    for (auto d : degs)
      prod *= d;
    CHECK(prod == parabolic_gl_group(part, F).enumerated().order());
    VariableSpace S = VariableSpace::generic(3);
    std::vector<Polynomial> xs;
    for (std::size_t i = 0; i < 3; ++i)
      xs.push_back(Polynomial::variable(F, S, i));
    auto h = kuhn_mitchell(xs, part);
    for (std::size_t i = 0; i < h.size(); ++i) {
      CHECK(h[i].degree() == static_cast<std::int64_t>(degs[i]));
      CHECK(invariant_under_all(h[i], parabolic_gl_group(part, F)));
    }
  }
}

TEST_CASE("families are invariant under every group element")
{
  struct Case {
    const char* name;
    FamilyParams params;
    unsigned q;
  };
  std::vector<Case> cases{
      {"carlisle_kropholler", {1, 0, 0, 0, {}}, 3},
      {"carlisle_kropholler", {2, 0, 0, 0, {}}, 2},
      {"stab_sub", {2, 0, 1, 0, {}}, 2},
      {"stab_sub", {2, 0, 2, 0, {}}, 2},
      {"sylow", {2, 0, 0, 0, {}}, 2},
      {"max_para", {2, 0, 1, 0, {}}, 2},
      {"max_para", {2, 0, 2, 0, {}}, 2},
      {"eapg", {2, 0, 0, 0, {}}, 3},
      {"fqexam", {2, 2, 0, 0, {}}, 2},
      {"u_tilde", {2, 0, 0, 1, {}}, 2},
      {"u_tilde", {2, 0, 0, -1, {}}, 2},
      {"parabolic_gl", {0, 0, 0, 0, {1, 1}}, 2},
      {"diag_cc", {0, 3, 0, 0, {}}, 3},
  };
  for (const auto& c : cases) {
    CAPTURE(c.name);
    Field F = Field::from_order(c.q);
    GeneratorFamily fam = family(c.name, c.params, F);
    REQUIRE(fam.polys.size() == fam.degrees.size());
    for (std::size_t i = 0; i < fam.polys.size(); ++i) {
      CAPTURE(fam.labels[i]);
      CHECK(fam.polys[i].degree() == static_cast<std::int64_t>(fam.degrees[i]));
      CHECK(invariant_under_all(fam.polys[i], fam.group));
    }
  }
}

TEST_CASE("family shapes")
{
  Field F2 = Field::build(2, 1);
  Field F3 = Field::build(3, 1);
  for (unsigned q : {2u, 3u}) {
    Field F = Field::from_order(q);
    GeneratorFamily mp = family("max_para", {2, 0, 2, 0, {}}, F);
    std::uint64_t q2 = q * q, q3 = q2 * q, q4 = q3 * q;
    std::vector<std::uint64_t> expected{q + 1, q2 + 1, q3 + 1, q4 - q3, q4 - q2, q2 - q, q2 - 1};
    auto got = mp.degrees;
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);
  }
  CHECK(family("eapg", {2, 0, 0, 0, {}}, F2).polys.size() == 5);
  GeneratorFamily sy = family("sylow", {1, 0, 0, 0, {}}, F3);
  CHECK(sy.labels == std::vector<std::string>{"N(x1)", "N1(y1)"});
  CHECK(sy.structure == Structure::PolynomialAlgebra);
  CHECK(family("carlisle_kropholler", {2, 0, 0, 0, {}}, F2).relation_degrees == std::vector<std::uint64_t>{18});
  CHECK_THROWS_AS(family("nope", {}, F2), Error);
  CHECK_THROWS_AS(family("stab_sub", {2, 0, 3, 0, {}}, F2), Error);
  CHECK(family_names().size() == 9);
}

TEST_CASE("polynomial-algebra families have degree product equal to the group order")
{
  Field F2 = Field::build(2, 1);
  Field F3 = Field::build(3, 1);
  auto check = [](const GeneratorFamily& fam) {
    CAPTURE(fam.name);
    std::uint64_t prod = 1;
    for (auto d : fam.degrees)
      prod *= d;
    CHECK(prod == fam.group.enumerated().order());
  };
  check(family("fqexam", {1, 1, 0, 0, {}}, F2));
  check(family("fqexam", {2, 1, 0, 0, {}}, F3));
  check(family("parabolic_gl", {0, 0, 0, 0, {1, 1}}, F2));
  check(family("parabolic_gl", {0, 0, 0, 0, {1, 1}}, F3));
  check(family("sylow", {1, 0, 0, 0, {}}, F3));
  check(family("eapg", {1, 0, 0, 0, {}}, F3));
  check(family("carlisle_kropholler", {1, 0, 0, 0, {}}, F3));
}
