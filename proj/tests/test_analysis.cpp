#include "doctest.h"

#include <random>

#include "modinv/analysis.hpp"
#include "modinv/error.hpp"

using namespace modinv;

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k)
{
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i)
    r = r * (n - k + i) / i;
  return r;
}

// Partitions of d into at most k parts.
std::uint64_t partitions(std::int64_t d, std::int64_t k)
{
  if (d == 0)
    return 1;
  if (d < 0 || k == 0)
    return 0;
  return partitions(d, k - 1) + partitions(d - k, k);
}

MatrixGroup symmetric_permutations(std::size_t n, const Field& F)
{
  Matrix swap = Matrix::identity(F, n);
  swap.set(0, 0, 0);
  swap.set(1, 1, 0);
  swap.set(0, 1, 1);
  swap.set(1, 0, 1);
  Matrix cycle(F, n, n);
  for (std::size_t i = 0; i < n; ++i)
    cycle.set(i, (i + 1) % n, 1);
  return MatrixGroup(F, n, {swap, cycle}, "S_n");
}

bool passes(const VerificationReport& r)
{
  if (r.status != Status::Pass)
    MESSAGE(r.check << " " << r.params.dump() << ": " << r.witness);
  return r.status == Status::Pass;
}

} // namespace

TEST_CASE("Hilbert series of claims")
{
  HilbertClaim free3{{1, 1, 1}, {}};
  auto s = free3.series(8);
  for (std::uint32_t d = 0; d <= 8; ++d)
    CHECK(s[d] == static_cast<std::int64_t>(binom(d + 2, 2)));
  HilbertClaim ci{{2, 3}, {6}};
  // (1 - t^6) / ((1 - t^2)(1 - t^3)) = 1 + t^2 + t^3 + t^4 + t^5 + t^7 ... with t^6 cancelled
  auto c = ci.series(8);
  CHECK(c == std::vector<std::int64_t>{1, 0, 1, 1, 1, 1, 1, 1, 1});
  HilbertClaim bad{{1}, {2}};
  CHECK(bad.series(3)[2] == 0);
  CHECK(HilbertClaim{{3}, {1}}.series(2)[1] == -1);
}

TEST_CASE("invariant dimension against monomial counts and partitions")
{
  Field F2 = Field::build(2, 1);
  Field F3 = Field::build(3, 1);
  VariableSpace S3 = VariableSpace::generic(3);
  for (std::uint32_t d = 0; d <= 6; ++d) {
    CHECK(invariant_dimension(MatrixGroup::trivial(F2, 3), S3, d) == binom(d + 2, 2));
    CHECK(invariant_dimension(symmetric_permutations(3, F3), S3, d) == partitions(d, 3));
    CHECK(invariant_dimension(symmetric_permutations(3, F2), S3, d) == partitions(d, 3));
  }
  VariableSpace S4 = VariableSpace::symplectic(2);
  MatrixGroup P2 = p_k_subgroup(2, 2, F2);
  CHECK(invariant_dimension(P2, S4, 0) == 1);
  CHECK(invariant_dimension(P2, S4, 1) == 2);
  CHECK_THROWS_AS(invariant_dimension(P2, VariableSpace::generic(3), 1), Error);
  CHECK_THROWS_AS(invariant_dimension(P2, S4, 30, 100), Error);
}

TEST_CASE("Hilbert check for the elementary abelian P_2 over F_2")
{
  Field F2 = Field::build(2, 1);
  MatrixGroup P2 = p_k_subgroup(2, 2, F2);
  VariableSpace S = VariableSpace::symplectic(2);
  // The degree product 1*1*3*4*4 = 48 = |P_2| * 6 forces one relation of degree 6.
  CHECK(passes(hilbert_check({{1, 1, 3, 4, 4}, {6}}, P2, S, 10)));
  VerificationReport stated = hilbert_check({{1, 1, 3, 4, 4}, {5}}, P2, S, 10);
  CHECK(stated.status == Status::Fail);
  CHECK(stated.witness.find("degree 5") != std::string::npos);
  VerificationReport dropped = hilbert_check({{1, 1, 3, 4}, {6}}, P2, S, 10);
  CHECK(dropped.status == Status::Fail);
  CHECK_FALSE(dropped.witness.empty());
}

TEST_CASE("transfer basics")
{
  Field F2 = Field::build(2, 1);
  VariableSpace S = VariableSpace::gluing(1, 1);
  Polynomial y1 = Polynomial::variable(F2, S, 0), x1 = Polynomial::variable(F2, S, 1);
  MatrixGroup triv = MatrixGroup::trivial(F2, 2).enumerated();
  CHECK(transfer(y1 * x1, triv) == y1 * x1);
  GluingGroup g = glue(MatrixGroup::trivial(F2, 1), MatrixGroup::trivial(F2, 1), full_hom_module(1, 1, F2));
  MatrixGroup M = g.realized.enumerated();
  CHECK(transfer(Polynomial::constant(F2, S, 1), M).is_zero());
  // (y1) + (y1 + x1) = x1
  CHECK(transfer(y1, M) == x1);
  CHECK(transfer(y1.pow(2), M) == x1.pow(2));
  CHECK_THROWS_AS(transfer(y1, g.realized), Error);
  CHECK(is_invariant(Polynomial::constant(F2, S, 1), g.realized));
  CHECK_FALSE(is_invariant(y1, g.realized));
  CHECK(is_invariant(xi(1, Field::build(3, 1), 1), sp_group(1, Field::build(3, 1))));
}

TEST_CASE("transfer factorization, equivariance and module property")
{
  Field F2 = Field::build(2, 1);
  MatrixGroup u2 = unipotent_upper(2, F2);
  GluingGroup g = glue(u2, u2, full_hom_module(2, 2, F2));
  VariableSpace S = VariableSpace::gluing(2, 2);
  MatrixGroup G = g.realized.enumerated();
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 12; ++trial) {
    Monomial m;
    for (std::size_t i = 0; i < 4; ++i) {
      m.e[i] = rng() % 4;
      m.deg += m.e[i];
    }
    Polynomial f = Polynomial::monomial(F2, S, m);
    CHECK(passes(transfer_factorization_check(f, g)));
    Polynomial tf = transfer(f, G);
    const Matrix& h = G.elements()[rng() % G.elements().size()];
    CHECK(transfer(act(f, h), G) == tf);
    Polynomial inv = psi_of_y(1, g) * Polynomial::variable(F2, S, 3);
    REQUIRE(is_invariant(inv, G));
    CHECK(transfer(inv * f, G) == inv * tf);
  }
  GluingGroup zero = glue(u2, u2, zero_module(2, 2, F2));
  Polynomial f = Polynomial::variable(F2, S, 0) * Polynomial::variable(F2, S, 3);
  CHECK(passes(transfer_factorization_check(f, zero)));
}

TEST_CASE("principal transfer image for the full hom module")
{
  for (unsigned p : {2u, 3u}) {
    Field F = Field::from_order(p);
    GluingGroup g = glue(MatrixGroup::trivial(F, 2), MatrixGroup::trivial(F, 2), full_hom_module(2, 2, F));
    VariableSpace S = VariableSpace::gluing(2, 2);
    Polynomial x1 = Polynomial::variable(F, S, 2), x2 = Polynomial::variable(F, S, 3);
    Polynomial d22 = dickson_of({x1, x2}, F, S)[2];
    std::uint32_t D = p == 2 ? 8 : 6;
    CHECK(passes(principal_check(g.realized, S, d22.pow(2), D)));
    CHECK(principal_check(g.realized, S, d22, D).status == Status::Fail);
    if (p == 2)
      CHECK(principal_check(g.realized, S, d22.pow(3), D).status == Status::Fail);
  }
  Field F2 = Field::build(2, 1);
  VariableSpace S = VariableSpace::generic(2);
  MatrixGroup triv = MatrixGroup::trivial(F2, 2);
  CHECK(passes(principal_check(triv, S, Polynomial::constant(F2, S, 1), 3)));
}

TEST_CASE("degree product checks")
{
  Field F2 = Field::build(2, 1);
  Field F3 = Field::build(3, 1);
  GeneratorFamily fq = family("fqexam", {1, 1, 0, 0, {}}, F2);
  CHECK(passes(degree_product_check(fq, fq.group)));
  GeneratorFamily pg = family("parabolic_gl", {0, 0, 0, 0, {1, 1}}, F3);
  CHECK(passes(degree_product_check(pg, pg.group)));
  GeneratorFamily dropped = fq;
  dropped.polys.pop_back();
  dropped.degrees.pop_back();
  CHECK(degree_product_check(dropped, dropped.group).status == Status::Fail);
  GeneratorFamily ci = family("eapg", {2, 0, 0, 0, {}}, F2);
  CHECK_THROWS_AS(degree_product_check(ci, ci.group), Error);
}

TEST_CASE("named identities")
{
  auto run = [](const char* name, Json p) { return passes(identity_suite(name, p)); };
  CHECK(run("u_lem", {{"m", 1}, {"k", 1}, {"i", 0}, {"j", 0}, {"q", 2}}));
  CHECK(run("u_lem", {{"m", 2}, {"k", 1}, {"i", 0}, {"j", 1}, {"q", 2}}));
  CHECK(run("u_lem", {{"m", 2}, {"k", 2}, {"i", 2}, {"j", 1}, {"q", 3}}));
  CHECK(run("ck_sp4", {{"q", 2}}));
  CHECK(run("wilkerson_d33", {{"p", 2}}));
  CHECK(run("wilkerson_d33", {{"p", 3}}));
  CHECK(run("delta_transfer", {{"p", 2}}));
  CHECK(run("delta_transfer", {{"p", 3}, {"sign", 1}}));
  // With the sign as printed the identity only survives in characteristic 2.
  CHECK(identity_suite("delta_transfer", {{"p", 3}}).status == Status::Fail);
  CHECK(run("xib", {{"m", 2}, {"i", 1}, {"q", 2}}));
  CHECK(run("xib", {{"m", 2}, {"i", 2}, {"q", 2}}));
  CHECK(run("xib", {{"m", 2}, {"i", 2}, {"q", 3}}));
  CHECK(run("xib_general", {{"m", 2}, {"k", 1}, {"i", 2}, {"q", 3}}));
  CHECK(run("xib_general", {{"m", 3}, {"k", 2}, {"i", 1}, {"q", 2}}));
  CHECK(run("xib_general", {{"m", 3}, {"k", 2}, {"i", 2}, {"q", 3}}));
  for (int q : {2, 3}) {
    CHECK(run("eapg_relation", {{"m", 1}, {"q", q}}));
    CHECK(run("eapg_relation", {{"m", 2}, {"q", q}}));
    CHECK(run("para_action", {{"q", q}}));
    CHECK(run("xi31_gl1", {{"q", q}}));
    for (int j = -2; j <= 2; ++j)
      CHECK(run("utilde_rewrite", {{"m", 2}, {"q", q}, {"j", j}}));
  }
  CHECK(run("nk_expansion", {{"m", 2}, {"k", 1}, {"q", 3}}));
  VerificationReport gf4 = identity_suite("nk_expansion", {{"m", 1}, {"k", 1}, {"q", 4}});
  CHECK(gf4.status == Status::Pass);
  CHECK(gf4.detail.find("p-power reading does not hold") != std::string::npos);
  CHECK_THROWS_AS(identity_suite("nope", Json::object()), Error);
  CHECK_THROWS_AS(identity_suite("u_lem", {{"m", 1}, {"k", 2}, {"i", 0}, {"j", 0}, {"q", 2}}), Error);
}

TEST_CASE("a perturbed identity fails with a witness")
{
  Field F3 = Field::build(3, 1);
  Polynomial a = xi(2, F3, 1);
  VerificationReport r = compare_sides("demo", Json::object(), a, a + a);
  CHECK(r.status == Status::Fail);
  CHECK(r.witness.find("lhs - rhs") == 0);
  CHECK(r.to_json()["witness"].is_string());
  CHECK_THROWS_AS(fail_report("x", Json::object(), ""), Error);
}
