#include <functional>

#include "modinv/analysis.hpp"
#include "modinv/error.hpp"

namespace modinv {

namespace {

std::int64_t param(const Json& p, const char* key, std::optional<std::int64_t> fallback = std::nullopt)
{
  if (p.contains(key))
    return p.at(key).get<std::int64_t>();
  if (!fallback)
    fail(ErrorKind::InvalidArgument, std::string("missing parameter '") + key + "'");
  return *fallback;
}

std::size_t uparam(const Json& p, const char* key, std::optional<std::int64_t> fallback = std::nullopt)
{
  auto v = param(p, key, fallback);
  if (v < 0)
    fail(ErrorKind::InvalidArgument, std::string("parameter '") + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

Field field_of(const Json& p)
{
  std::int64_t q = p.contains("q") ? param(p, "q") : param(p, "p");
  if (q < 2)
    fail(ErrorKind::InvalidArgument, "field order must be at least 2");
  return Field::from_order(static_cast<std::uint64_t>(q));
}

void require_range(bool ok, const std::string& what)
{
  if (!ok)
    fail(ErrorKind::Unsupported, what);
}

// d~_{0..l} of the first l pinned variables, through the Moore quotient.
std::vector<Polynomial> pinned_dickson(std::size_t l, std::size_t m, const Field& F)
{
  auto L = pinned_list(m, F);
  L.erase(L.begin() + static_cast<std::ptrdiff_t>(l), L.end());
  return moore_dickson_of(L, F, VariableSpace::symplectic(m));
}

Polynomial sx(const Field& F, std::size_t m, std::size_t i)
{
  VariableSpace S = VariableSpace::symplectic(m);
  return Polynomial::variable(F, S, S.x(i));
}

Polynomial sy(const Field& F, std::size_t m, std::size_t i)
{
  VariableSpace S = VariableSpace::symplectic(m);
  return Polynomial::variable(F, S, S.y(i));
}

VerificationReport u_lem(const Json& p)
{
  Field F = field_of(p);
  std::size_t m = uparam(p, "m"), k = uparam(p, "k"), i = uparam(p, "i"), j = uparam(p, "j");
  require_range(m >= 1 && k >= 1 && k <= m, "u_lem needs 1 <= k <= m");
  VariableSpace S = VariableSpace::symplectic(m);
  AdditivePolynomial N = n_k_additive(k, m, F);
  Polynomial lhs(F, S);
  for (std::size_t s = 1; s <= k; ++s)
    lhs += sx(F, m, s).q_power(i) * N(sy(F, m, s)).q_power(j);
  auto d = pinned_dickson(2 * m - k, m, F);
  Polynomial rhs(F, S);
  for (std::size_t l = 0; l <= 2 * m - k; ++l) {
    auto idx = static_cast<std::int64_t>(2 * m - k + j) - static_cast<std::int64_t>(i + l);
    rhs += xi_power(m, F, idx, static_cast<std::int64_t>(i)) * d[l].q_power(j);
  }
  return compare_sides("u_lem", p, lhs, rhs);
}

// xi-bar_i for the parabolic G_k, from its definition.
Polynomial xi_bar(std::size_t k, std::size_t m, const Field& F, std::size_t i)
{
  VariableSpace S = VariableSpace::symplectic(m);
  std::vector<Polynomial> wk;
  for (std::size_t s = 1; s <= k; ++s)
    wk.push_back(sx(F, m, s));
  AdditivePolynomial N = span_product(fp_expand(wk), F, S);
  Polynomial out(F, S);
  for (std::size_t j = k + 1; j <= m; ++j) {
    Polynomial nx = N(sx(F, m, j)), ny = N(sy(F, m, j));
    out += nx * ny.q_power(i) - ny * nx.q_power(i);
  }
  return out;
}

VerificationReport xib(const Json& p)
{
  Field F = field_of(p);
  std::size_t m = uparam(p, "m"), i = uparam(p, "i");
  require_range(m >= 2 && i >= 1, "xib needs m >= 2 and i >= 1");
  const std::uint64_t q = F.q();
  auto I = static_cast<std::int64_t>(i);
  Polynomial x1 = sx(F, m, 1);
  Polynomial rhs = xi(m, F, I).q_power(1) - xi(m, F, I + 1) * x1.pow(q - 1) -
                   xi_power(m, F, I - 1, 1) * x1.pow((q - 1) * ipow(q, i)) +
                   xi(m, F, I) * x1.pow((q - 1) * (ipow(q, i) + 1));
  return compare_sides("xib", p, xi_bar(1, m, F, i), rhs);
}

VerificationReport xib_general(const Json& p)
{
  Field F = field_of(p);
  std::size_t m = uparam(p, "m"), k = uparam(p, "k"), i = uparam(p, "i");
  require_range(k >= 1 && k < m && i >= 1, "xib_general needs 1 <= k < m and i >= 1");
  VariableSpace S = VariableSpace::symplectic(m);
  auto d = pinned_dickson(k, m, F);
  Polynomial rhs(F, S);
  auto K = static_cast<std::int64_t>(k), I = static_cast<std::int64_t>(i);
  for (std::int64_t l = 0; l <= K; ++l)
    for (std::int64_t s = 0; s <= K; ++s) {
      Polynomial coeff = d[static_cast<std::size_t>(l)] * d[static_cast<std::size_t>(s)].q_power(i);
      if (l > s - I)
        rhs += xi(m, F, l - s + I).q_power(static_cast<std::uint64_t>(K - l)) * coeff;
      else if (l < s - I)
        rhs -= xi(m, F, s - l - I).q_power(static_cast<std::uint64_t>(K - s + I)) * coeff;
    }
  return compare_sides("xib_general", p, xi_bar(k, m, F, i), rhs);
}

VerificationReport eapg_relation(const Json& p)
{
  Field F = field_of(p);
  std::size_t m = uparam(p, "m");
  require_range(m >= 1, "eapg_relation needs m >= 1");
  VariableSpace S = VariableSpace::symplectic(m);
  AdditivePolynomial N = n_k_additive(m, m, F);
  auto d = pinned_dickson(m, m, F);
  Polynomial rhs(F, S);
  for (std::size_t j = 1; j <= m; ++j)
    rhs += sx(F, m, j) * N(sy(F, m, j));
  for (std::size_t i = 1; i < m; ++i)
    rhs -= xi(m, F, static_cast<std::int64_t>(i)) * d[m - i];
  return compare_sides("eapg_relation", p, xi(m, F, static_cast<std::int64_t>(m)), rhs);
}

VerificationReport ck_sp4(const Json& p)
{
  Field F = field_of(p);
  const std::uint64_t q = F.q();
  const std::size_t m = 2;
  auto d = dickson_of(pinned_list(m, F), F, VariableSpace::symplectic(m));
  Polynomial x1 = xi(m, F, 1), x2 = xi(m, F, 2), x3 = xi(m, F, 3);
  Polynomial lhs = x3.q_power(1) + d[1] * x2.q_power(1) + d[2] * x1.q_power(1);
  Polynomial inner = x1.pow(q * q + 1) - x2.pow(q + 1) + x1.q_power(1) * x3;
  Polynomial rhs = x1 * inner.pow(q - 1);
  return compare_sides("ck_sp4", p, lhs, rhs);
}

struct U4Setting {
  Field F;
  VariableSpace S;
  GluingGroup gluing;
  Polynomial y1, x1, x2;
};

U4Setting u4_setting(const Json& p)
{
  Field F = field_of(p);
  require_range(F.r() == 1, "the U(4) example is over a prime field");
  MatrixGroup u2 = unipotent_upper(2, F);
  VariableSpace S = VariableSpace::gluing(2, 2);
  auto v = [&](const char* name) { return Polynomial::variable(F, S, static_cast<std::size_t>(S.index_of(name))); };
  return {F, S, glue(u2, u2, full_hom_module(2, 2, F)), v("y1"), v("x1"), v("x2")};
}

VerificationReport wilkerson_d33(const Json& p)
{
  U4Setting u = u4_setting(p);
  const std::uint64_t q = u.F.q();
  Polynomial d33 = dickson_of({u.x1, u.x2, u.y1}, u.F, u.S)[3];
  Polynomial d22 = dickson_of({u.x1, u.x2}, u.F, u.S)[2];
  Polynomial psi_v = psi_of_y(0, u.gluing).pow(q - 1);
  return compare_sides("wilkerson_d33", p, d33, -(d22 * psi_v));
}

// u = x1^(p-1) and v = y1^(p-1) as given; sign is the claimed sign in front of delta.
VerificationReport delta_transfer(const Json& p)
{
  U4Setting u = u4_setting(p);
  const std::uint64_t q = u.F.q();
  std::int64_t sign = param(p, "sign", -1);
  require_range(sign == 1 || sign == -1, "sign must be 1 or -1");
  Polynomial d11 = dickson_of({u.x1}, u.F, u.S)[1];
  Polynomial d22 = dickson_of({u.x1, u.x2}, u.F, u.S)[2];
  Polynomial d33 = dickson_of({u.x1, u.x2, u.y1}, u.F, u.S)[3];
  Polynomial tau = d22.pow(2);
  Polynomial psi_u = psi_substitute(u.x1.pow(q - 1), u.gluing);
  Polynomial psi_v = psi_substitute(u.y1.pow(q - 1), u.gluing);
  Polynomial delta = d11 * d22 * d33;
  return compare_sides("delta_transfer", p, tau * psi_u * psi_v, sign < 0 ? -delta : delta);
}

VerificationReport nk_expansion(const Json& p)
{
  Field F = field_of(p);
  std::size_t m = uparam(p, "m"), k = uparam(p, "k");
  require_range(m >= 1 && k >= 1 && k <= m, "nk_expansion needs 1 <= k <= m");
  VariableSpace S = VariableSpace::symplectic(m);
  const std::size_t l = 2 * m - k;
  auto d = pinned_dickson(l, m, F);
  Polynomial t = sy(F, m, k);
  Polynomial nk = n_k(t, k, m);
  Polynomial q_reading(F, S), p_reading(F, S);
  for (std::size_t j = 0; j <= l; ++j) {
    q_reading += t.q_power(l - j) * d[j];
    p_reading += t.frobenius_power(l - j) * d[j];
  }
  VerificationReport r = compare_sides("nk_expansion", p, nk, q_reading);
  if (F.r() > 1)
    r.detail += std::string(r.detail.empty() ? "" : "; ") + "p-power reading " +
                (nk == p_reading ? "also holds" : "does not hold");
  return r;
}

VerificationReport para_action(const Json& p)
{
  Field F = field_of(p);
  const std::uint64_t q = F.q();
  GluingGroup gl = parabolic_glue({1, 1}, F);
  VariableSpace S = VariableSpace::gluing(2, 2);
  auto v = [&](std::size_t i) { return Polynomial::variable(F, S, i); };
  Polynomial y1 = v(0), y2 = v(1), x1 = v(2), x2 = v(3);
  Polynomial n1y1 = orbit_product_fq(y1, {x1, x2});
  Polynomial n2y2 = orbit_product_fq(y2, {x2});
  Matrix g = Matrix::identity(F, 4);
  g.set(0, 1, 1);
  if (!gl.realized.enumerated().contains(g))
    fail(ErrorKind::InvarianceFailure, "the transvection y1 -> y1 + y2 is not in the parabolic gluing");
  Polynomial d12 = dickson_of({x1, x2}, F, S)[1];
  Polynomial rhs = n1y1 + n2y2.q_power(1) + (d12 + x2.pow(q * (q - 1))) * n2y2;
  return compare_sides("para_action", p, act(n1y1, g), rhs);
}

VerificationReport utilde_rewrite(const Json& p)
{
  Field F = field_of(p);
  std::size_t m = uparam(p, "m");
  std::int64_t j = param(p, "j", 0);
  require_range(m >= 1, "utilde_rewrite needs m >= 1");
  VariableSpace S = VariableSpace::symplectic(m);
  FamilyParams fp;
  fp.m = m;
  fp.j = j;
  Polynomial lhs = family("u_tilde", fp, F).polys.at(0);
  auto d = pinned_dickson(m, m, F);
  auto M = static_cast<std::int64_t>(m);
  Polynomial rhs(F, S);
  if (j == 0) {
    for (std::int64_t i = 1; i <= M; ++i)
      rhs += xi(m, F, i) * d[static_cast<std::size_t>(M - i)];
  } else if (j > 0) {
    for (std::int64_t i = 0; i <= M - j - 1; ++i)
      rhs += xi(m, F, M - i - j).q_power(static_cast<std::uint64_t>(j)) * d[static_cast<std::size_t>(i)];
    for (std::int64_t i = std::max<std::int64_t>(M - j + 1, 0); i <= M; ++i)
      rhs -= xi(m, F, i + j - M).q_power(static_cast<std::uint64_t>(M - i)) * d[static_cast<std::size_t>(i)];
  } else {
    for (std::int64_t i = 0; i <= M; ++i)
      rhs += xi(m, F, M - j - i) * d[static_cast<std::size_t>(i)].q_power(static_cast<std::uint64_t>(-j));
  }
  return compare_sides("utilde_rewrite", p, lhs, rhs);
}

VerificationReport xi31_gl1(const Json& p)
{
  Field F = field_of(p);
  std::size_t m = uparam(p, "m", 2);
  require_range(m >= 1, "xi31_gl1 needs m >= 1");
  const std::uint64_t q = F.q();
  VariableSpace S = VariableSpace::symplectic(m);
  auto d = pinned_dickson(2 * m - 1, m, F);
  Polynomial n1y1 = n_k(sy(F, m, 1), 1, m);
  Polynomial lhs = sx(F, m, 1) * n1y1;
  Polynomial rhs(F, S);
  for (std::size_t l = 0; l <= 2 * m - 1; ++l)
    rhs += xi(m, F, static_cast<std::int64_t>(2 * m - 1 - l)) * d[l];
  VerificationReport first = compare_sides("xi31_gl1", p, lhs, rhs);
  if (first.status == Status::Fail)
    return first;
  Polynomial d1 = dickson_of(pinned_list(m, F), F, S)[1];
  VerificationReport second = compare_sides("xi31_gl1", p, d1, d[1].q_power(1) - n1y1.pow(q - 1));
  if (second.status == Status::Pass)
    second.detail = "both displayed identities hold";
  return second;
}

const std::vector<std::pair<std::string, std::function<VerificationReport(const Json&)>>>& table()
{
  static const std::vector<std::pair<std::string, std::function<VerificationReport(const Json&)>>> t{
      {"u_lem", u_lem},
      {"xib", xib},
      {"xib_general", xib_general},
      {"eapg_relation", eapg_relation},
      {"ck_sp4", ck_sp4},
      {"wilkerson_d33", wilkerson_d33},
      {"delta_transfer", delta_transfer},
      {"nk_expansion", nk_expansion},
      {"para_action", para_action},
      {"utilde_rewrite", utilde_rewrite},
      {"xi31_gl1", xi31_gl1},
  };
  return t;
}

} // namespace

VerificationReport identity_suite(const std::string& name, const Json& params)
{
  for (const auto& [n, fn] : table())
    if (n == name) {
      VerificationReport r = fn(params);
      r.check = name;
      return r;
    }
  fail(ErrorKind::InvalidArgument, "unknown identity: " + name);
}

std::vector<std::string> identity_names()
{
  std::vector<std::string> out;
  for (const auto& [n, fn] : table())
    out.push_back(n);
  return out;
}

} // namespace modinv
