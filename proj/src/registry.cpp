#include "modinv/registry.hpp"

#include <atomic>
#include <chrono>
#include <random>
#include <sstream>
#include <thread>

#include "modinv/error.hpp"

namespace modinv {

Json to_json(const Field& f)
{
  return {{"p", f.p()}, {"r", f.r()}, {"q", f.q()}};
}

namespace {

const char* convention_name(Convention c)
{
  switch (c) {
  case Convention::Generic: return "generic";
  case Convention::Symplectic: return "symplectic";
  case Convention::Gluing: return "gluing";
  }
  return "generic";
}

Convention convention_from(const std::string& s)
{
  if (s == "generic")
    return Convention::Generic;
  if (s == "symplectic")
    return Convention::Symplectic;
  if (s == "gluing")
    return Convention::Gluing;
  fail(ErrorKind::Parse, "unknown variable convention: " + s);
}

} // namespace

Json to_json(const Polynomial& f)
{
  Json terms = Json::array();
  const std::size_t n = f.space().size();
  for (const auto& t : f.terms()) {
    Json e = Json::array();
    for (std::size_t i = 0; i < n; ++i)
      e.push_back(t.m.e[i]);
    terms.push_back({{"c", f.field().format(t.c)}, {"e", e}});
  }
  return {{"field", to_json(f.field())},
          {"vars", f.space().names()},
          {"convention", convention_name(f.space().convention())},
          {"degree", f.degree()},
          {"terms", terms},
          {"text", f.to_string()}};
}

Polynomial polynomial_from_json(const Json& j)
{
  try {
    Field F = Field::build(j.at("field").at("p").get<std::uint32_t>(), j.at("field").at("r").get<std::uint32_t>());
    VariableSpace S(j.at("vars").get<std::vector<std::string>>(),
                    convention_from(j.value("convention", std::string("generic"))));
    std::vector<Term> terms;
    for (const auto& t : j.at("terms")) {
      Monomial m;
      auto e = t.at("e").get<std::vector<std::uint32_t>>();
      if (e.size() != S.size())
        fail(ErrorKind::Parse, "exponent vector has the wrong length");
      for (std::size_t i = 0; i < e.size(); ++i) {
        m.e[i] = e[i];
        m.deg += e[i];
      }
      terms.push_back({m, F.parse(t.at("c").get<std::string>())});
    }
    return Polynomial::from_terms(F, S, std::move(terms));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("bad polynomial JSON: ") + e.what());
  }
}

Json to_json(const Matrix& m)
{
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(m.field().format(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

Matrix matrix_from_json(const Field& field, const Json& rows)
{
  try {
    std::vector<std::vector<std::uint32_t>> out;
    for (const auto& row : rows) {
      std::vector<std::uint32_t> r;
      for (const auto& c : row)
        r.push_back(c.is_string() ? field.parse(c.get<std::string>()) : field.from_int(c.get<std::int64_t>()));
      out.push_back(std::move(r));
    }
    return Matrix::from_rows(field, out);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("bad matrix JSON: ") + e.what());
  }
}

Json to_json(const MatrixGroup& g)
{
  Json gens = Json::array();
  for (const auto& m : g.generators())
    gens.push_back(to_json(m));
  Json j = {{"name", g.name()}, {"dim", g.dim()}, {"field", to_json(g.field())}, {"generators", gens}};
  if (g.claimed_order()) {
    j["claimed_order"] = g.claimed_order()->str();
    j["order_formula"] = g.order_formula();
  }
  return j;
}

Json to_json(const GeneratorFamily& fam)
{
  Json members = Json::array();
  for (std::size_t i = 0; i < fam.polys.size(); ++i)
    members.push_back({{"label", fam.labels[i]}, {"degree", fam.degrees[i]}, {"poly", fam.polys[i].to_string()}});
  Json j = {{"family", fam.name}, {"group", fam.group.name()}, {"structure", to_string(fam.structure)},
            {"members", members}};
  if (fam.relation_degrees)
    j["relation_degrees"] = *fam.relation_degrees;
  return j;
}

VariableSpace space_from_spec(const std::string& spec)
{
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    fail(ErrorKind::Parse, "space spec must look like generic:n, symplectic:m or gluing:m,n");
  std::string kind = spec.substr(0, colon);
  std::string rest = spec.substr(colon + 1);
  try {
    if (kind == "generic")
      return VariableSpace::generic(std::stoul(rest));
    if (kind == "symplectic")
      return VariableSpace::symplectic(std::stoul(rest));
    if (kind == "gluing") {
      auto comma = rest.find(',');
      if (comma == std::string::npos)
        fail(ErrorKind::Parse, "gluing space needs m,n");
      return VariableSpace::gluing(std::stoul(rest.substr(0, comma)), std::stoul(rest.substr(comma + 1)));
    }
  } catch (const std::logic_error&) {
    fail(ErrorKind::Parse, "bad number in space spec: " + spec);
  }
  fail(ErrorKind::Parse, "unknown space kind: " + kind);
}

namespace {

std::int64_t ival(const Json& j, const char* key, std::optional<std::int64_t> fallback = std::nullopt)
{
  if (j.contains(key)) {
    if (!j.at(key).is_number_integer())
      fail(ErrorKind::Parse, std::string("parameter '") + key + "' must be an integer");
    return j.at(key).get<std::int64_t>();
  }
  if (!fallback)
    fail(ErrorKind::InvalidArgument, std::string("missing parameter '") + key + "'");
  return *fallback;
}

std::size_t uval(const Json& j, const char* key, std::optional<std::int64_t> fallback = std::nullopt)
{
  auto v = ival(j, key, fallback);
  if (v < 0)
    fail(ErrorKind::InvalidArgument, std::string("parameter '") + key + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

std::vector<std::size_t> partition_of(const Json& j)
{
  if (!j.contains("partition"))
    fail(ErrorKind::InvalidArgument, "missing parameter 'partition'");
  return j.at("partition").get<std::vector<std::size_t>>();
}

Field field_from_params(const Json& p)
{
  if (p.contains("q"))
    return Field::from_order(uval(p, "q"));
  if (p.contains("p"))
    return Field::build(static_cast<std::uint32_t>(uval(p, "p")), static_cast<std::uint32_t>(uval(p, "r", 1)));
  fail(ErrorKind::InvalidArgument, "missing field parameter 'q'");
}

} // namespace

MatrixGroup group_from_spec(const Field& F, const Json& spec)
{
  std::string kind = spec.at("kind").get<std::string>();
  if (kind == "gl")
    return gl_group(uval(spec, "n"), F);
  if (kind == "u")
    return unipotent_upper(uval(spec, "n"), F);
  if (kind == "sp")
    return sp_group(uval(spec, "m"), F);
  if (kind == "usp")
    return usp_group(uval(spec, "m"), F);
  if (kind == "pk")
    return p_k_subgroup(uval(spec, "m"), uval(spec, "k"), F);
  if (kind == "gk")
    return parabolic_g_k(uval(spec, "m"), uval(spec, "k"), F);
  if (kind == "spstab")
    return stabilizer_sp(uval(spec, "m"), uval(spec, "k"), F);
  if (kind == "o3ex")
    return o3_example(F);
  if (kind == "o4ex")
    return o4_example(F);
  if (kind == "para")
    return parabolic_gl_group(partition_of(spec), F);
  if (kind == "trivial")
    return MatrixGroup::trivial(F, uval(spec, "n"));
  fail(ErrorKind::InvalidArgument, "unknown group kind: " + kind);
}

namespace {

VariableSpace space_for_group(const Json& spec, const MatrixGroup& g)
{
  if (spec.contains("space"))
    return space_from_spec(spec.at("space").get<std::string>());
  std::string kind = spec.value("kind", std::string());
  if (kind == "sp" || kind == "usp" || kind == "pk" || kind == "gk" || kind == "spstab")
    return VariableSpace::symplectic(g.dim() / 2);
  return VariableSpace::generic(g.dim());
}

BimoduleBasis module_from_spec(const Field& F, std::size_t m, std::size_t n, const Json& spec)
{
  std::string kind = spec.value("kind", std::string("full"));
  if (kind == "full")
    return full_hom_module(m, n, F);
  if (kind == "zero")
    return zero_module(m, n, F);
  if (kind == "subfield")
    return subfield_hom_module(m, n, uval(spec, "q_sub"), F);
  if (kind == "scalar") {
    if (m != n)
      fail(ErrorKind::DimensionMismatch, "scalar module needs a square shape");
    return scalar_identity_module(n, F);
  }
  if (kind == "parabolic")
    return parabolic_module(partition_of(spec), F);
  if (kind == "explicit") {
    std::vector<Matrix> mats;
    for (const auto& rows : spec.at("basis"))
      mats.push_back(matrix_from_json(F, rows));
    return BimoduleBasis(F, m, n, std::move(mats));
  }
  fail(ErrorKind::InvalidArgument, "unknown module kind: " + kind);
}

} // namespace

GluingGroup gluing_from_spec(const Field& F, const Json& spec)
{
  std::string type = spec.value("type", std::string("glue"));
  if (type == "glue") {
    MatrixGroup g1 = group_from_spec(F, spec.at("g1"));
    MatrixGroup g2 = group_from_spec(F, spec.at("g2"));
    Json mod = spec.value("module", Json{{"kind", "full"}});
    Flavor flavor = mod.value("kind", std::string("full")) == "subfield" ? Flavor::Subfield : Flavor::Generic;
    return glue(g1, g2, module_from_spec(F, g1.dim(), g2.dim(), mod), flavor);
  }
  if (type == "diag") {
    MatrixGroup g = group_from_spec(F, spec.at("g"));
    Json mod = spec.value("module", Json{{"kind", "scalar"}});
    return diagonal_glue(g, module_from_spec(F, g.dim(), g.dim(), mod));
  }
  if (type == "thin")
    return thin_glue_regular(static_cast<std::uint32_t>(uval(spec, "p", F.p())),
                             static_cast<std::uint32_t>(uval(spec, "r", 1)), F);
  if (type == "para")
    return parabolic_glue(partition_of(spec), F);
  if (type == "singular") {
    std::string form = spec.value("form", std::string("alternating"));
    Matrix gram = matrix_from_json(F, spec.at("gram"));
    FormSpec fs = form == "alternating" ? FormSpec::alternating(gram)
                  : form == "symmetric" ? FormSpec::symmetric(gram)
                  : form == "hermitian" ? FormSpec::hermitian(gram)
                                        : (fail(ErrorKind::Unsupported, "unsupported form kind: " + form), FormSpec::alternating(gram));
    return singular_form_group(fs, uval(spec, "cap", kDefaultCap));
  }
  fail(ErrorKind::InvalidArgument, "unknown gluing type: " + type);
}

FamilyParams family_params_from_json(const Json& j)
{
  FamilyParams p;
  p.m = uval(j, "m", 0);
  p.n = uval(j, "n", 0);
  p.k = uval(j, "k", 0);
  p.j = ival(j, "j", 0);
  if (j.contains("partition"))
    p.partition = partition_of(j);
  return p;
}

namespace {

using CheckFn = std::function<VerificationReport(const Json&, const RunOptions&)>;

std::string dec(const BigInt& b) { return b.str(); }

VerificationReport check_group_order(const Json& p, const RunOptions& o)
{
  Field F = field_from_params(p);
  MatrixGroup g = group_from_spec(F, p);
  std::uint64_t order = g.enumerated(o.cap).order();
  if (!g.claimed_order())
    fail(ErrorKind::InvalidArgument, "group has no closed-form order");
  std::string what = "enumerated " + std::to_string(order) + ", formula " + g.order_formula() + " = " +
                     dec(*g.claimed_order());
  if (BigInt(order) != *g.claimed_order())
    return fail_report("group_order", p, what);
  if (p.contains("expected") && uval(p, "expected") != order)
    return fail_report("group_order", p, what + ", expected " + std::to_string(uval(p, "expected")));
  return pass_report("group_order", p, what);
}

VerificationReport check_stabilizer_order(const Json& p, const RunOptions& o)
{
  Field F = field_from_params(p);
  const std::uint64_t q = F.q();
  std::string which = p.at("case").get<std::string>();
  MatrixGroup stab = MatrixGroup::trivial(F, 1);
  std::uint64_t formula = 0;
  if (which == "xi1_gl2") {
    stab = stabilizer_of_polynomial(gl_group(2, F).enumerated(o.cap), xi(1, F, 1));
    formula = static_cast<std::uint64_t>(sp_order(1, q));
  } else if (which == "o3_delta") {
    VariableSpace S = VariableSpace::generic(3);
    stab = stabilizer_of_polynomial(gl_group(3, F).enumerated(o.cap), parse_polynomial(F, S, "x2^2 - x1*x3"));
    formula = 2 * q * (q * q - 1);
  } else {
    fail(ErrorKind::InvalidArgument, "unknown stabilizer case: " + which);
  }
  std::uint64_t order = stab.order();
  std::uint64_t expected = p.contains("expected") ? uval(p, "expected") : formula;
  std::string what = "stabilizer order " + std::to_string(order) + ", formula " + std::to_string(formula);
  if (order != expected || order != formula)
    return fail_report("stabilizer_order", p, what + ", expected " + std::to_string(expected));
  return pass_report("stabilizer_order", p, what);
}

VerificationReport check_hilbert(const Json& p, const RunOptions& o)
{
  Field F = field_from_params(p);
  const Json& gs = p.at("group");
  MatrixGroup g = group_from_spec(F, gs);
  HilbertClaim claim{p.at("degrees").get<std::vector<std::uint64_t>>(),
                     p.value("relations", std::vector<std::uint64_t>{})};
  auto D = static_cast<std::uint32_t>(uval(p, "degree_bound", o.degree_bound));
  VerificationReport r = hilbert_check(claim, g, space_for_group(gs, g), D);
  r.params = p;
  return r;
}

GeneratorFamily perturbed_family(const Json& p)
{
  Field F = field_from_params(p);
  GeneratorFamily fam = family(p.at("family").get<std::string>(), family_params_from_json(p), F);
  if (p.contains("drop")) {
    std::size_t i = uval(p, "drop");
    if (i >= fam.polys.size())
      fail(ErrorKind::InvalidArgument, "drop index out of range");
    fam.polys.erase(fam.polys.begin() + static_cast<std::ptrdiff_t>(i));
    fam.degrees.erase(fam.degrees.begin() + static_cast<std::ptrdiff_t>(i));
    fam.labels.erase(fam.labels.begin() + static_cast<std::ptrdiff_t>(i));
  }
  if (p.contains("perturb_degree")) {
    const Json& pd = p.at("perturb_degree");
    std::size_t i = uval(pd, "index");
    if (i >= fam.degrees.size())
      fail(ErrorKind::InvalidArgument, "perturb index out of range");
    fam.degrees[i] = static_cast<std::uint64_t>(static_cast<std::int64_t>(fam.degrees[i]) + ival(pd, "by", 1));
  }
  return fam;
}

VerificationReport check_degree_product(const Json& p, const RunOptions& o)
{
  GeneratorFamily fam = perturbed_family(p);
  VerificationReport r = degree_product_check(fam, fam.group, o.cap);
  r.params = p;
  return r;
}

VerificationReport check_family(const Json& p, const RunOptions&)
{
  GeneratorFamily fam = [&] {
    try {
      return perturbed_family(p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::InvarianceFailure)
        throw;
      fail(ErrorKind::InvarianceFailure, e.what());
    }
  }();
  for (std::size_t i = 0; i < fam.polys.size(); ++i) {
    const Polynomial& f = fam.polys[i];
    if (!f.is_homogeneous() || f.degree() != static_cast<std::int64_t>(fam.degrees[i]))
      return fail_report("family", p,
                         fam.labels[i] + " has degree " + std::to_string(f.degree()) + ", declared " +
                             std::to_string(fam.degrees[i]) + ": " + f.to_string().substr(0, 400));
    for (const auto& g : fam.group.generators())
      if (act(f, g) != f)
        return fail_report("family", p, fam.labels[i] + " moved by generator " + g.to_string());
  }
  return pass_report("family", p,
                     std::to_string(fam.polys.size()) + " members invariant under " +
                         std::to_string(fam.group.generators().size()) + " generators");
}

GluingGroup full_hom_m(const Field& F)
{
  return glue(MatrixGroup::trivial(F, 2), MatrixGroup::trivial(F, 2), full_hom_module(2, 2, F));
}

VerificationReport check_transfer_image(const Json& p, const RunOptions& o)
{
  Field F = field_from_params(p);
  GluingGroup g = full_hom_m(F);
  VariableSpace S = VariableSpace::gluing(2, 2);
  Polynomial x1 = Polynomial::variable(F, S, 2), x2 = Polynomial::variable(F, S, 3);
  Polynomial tau = dickson_of({x1, x2}, F, S)[2].pow(uval(p, "tau_power", 2));
  auto D = static_cast<std::uint32_t>(uval(p, "degree_bound", o.degree_bound));
  VerificationReport r = principal_check(g.realized.enumerated(o.cap), S, tau, D);
  r.params = p;
  return r;
}

Polynomial random_monomial(const Field& F, const VariableSpace& S, std::mt19937_64& rng, std::uint32_t max_exp)
{
  Monomial m;
  for (std::size_t i = 0; i < S.size(); ++i) {
    m.e[i] = static_cast<std::uint32_t>(rng() % (max_exp + 1));
    m.deg += m.e[i];
  }
  return Polynomial::monomial(F, S, m, 1);
}

Polynomial random_poly(const Field& F, const VariableSpace& S, std::mt19937_64& rng, std::size_t terms,
                       std::uint32_t max_exp)
{
  Polynomial f(F, S);
  for (std::size_t t = 0; t < terms; ++t)
    f += random_monomial(F, S, rng, max_exp).scaled(static_cast<std::uint32_t>(rng() % F.q()));
  return f;
}

VerificationReport check_transfer_factorization(const Json& p, const RunOptions& o)
{
  Field F = field_from_params(p);
  MatrixGroup u2 = unipotent_upper(2, F);
  GluingGroup g = glue(u2, u2, full_hom_module(2, 2, F));
  VariableSpace S = VariableSpace::gluing(2, 2);
  std::mt19937_64 rng(uval(p, "seed", static_cast<std::int64_t>(o.seed)));
  std::size_t samples = uval(p, "samples", 8);
  for (std::size_t s = 0; s < samples; ++s) {
    VerificationReport r = transfer_factorization_check(random_monomial(F, S, rng, 3), g, o.cap);
    if (r.status != Status::Pass) {
      r.params = p;
      return r;
    }
  }
  return pass_report("transfer_factorization", p, std::to_string(samples) + " monomials");
}

VerificationReport check_semidirect_law(const Json& p, const RunOptions& o)
{
  Field F = field_from_params(p);
  GluingGroup g = F.q() == 2 ? glue(unipotent_upper(2, F), unipotent_upper(2, F), full_hom_module(2, 2, F))
                             : glue(unipotent_upper(2, F), gl_group(1, F), full_hom_module(2, 1, F));
  MatrixGroup e = g.realized.enumerated(o.cap);
  const auto& el = e.elements();
  const std::size_t m = g.m();
  auto test = [&](const Matrix& a, const Matrix& b) {
    return realize(semidirect_mul(split(a, m), split(b, m))) == a * b;
  };
  std::size_t count = 0;
  if (p.contains("samples")) {
    std::mt19937_64 rng(uval(p, "seed", static_cast<std::int64_t>(o.seed)));
    std::size_t samples = uval(p, "samples");
    for (std::size_t s = 0; s < samples; ++s, ++count) {
      const Matrix& a = el[rng() % el.size()];
      const Matrix& b = el[rng() % el.size()];
      if (!test(a, b))
        return fail_report("semidirect_law", p, "a = " + a.to_string() + ", b = " + b.to_string());
    }
  } else {
    for (const auto& a : el)
      for (const auto& b : el) {
        ++count;
        if (!test(a, b))
          return fail_report("semidirect_law", p, "a = " + a.to_string() + ", b = " + b.to_string());
      }
  }
  return pass_report("semidirect_law", p,
                     std::to_string(count) + " pairs in a group of order " + std::to_string(el.size()));
}

VerificationReport check_thin_gluing(const Json& p, const RunOptions& o)
{
  auto pr = static_cast<std::uint32_t>(uval(p, "p"));
  auto r = static_cast<std::uint32_t>(uval(p, "r", 1));
  Field F = Field::build(pr, 1);
  GluingGroup t = thin_glue_regular(pr, r, F);
  const std::uint64_t n = ipow(pr, r);
  if (t.realized.dim() != n + 1)
    return fail_report("thin_gluing", p, "dimension " + std::to_string(t.realized.dim()));
  MatrixGroup e = t.realized.enumerated(o.cap);
  BigInt abstract = t.expected_order();
  if (BigInt(e.order()) != abstract)
    return fail_report("thin_gluing", p,
                       "realized order " + std::to_string(e.order()) + " != abstract order " + dec(abstract));
  for (const auto& g : e.elements())
    if (element_order(g) == n * pr)
      return pass_report("thin_gluing", p,
                         "dimension " + std::to_string(n + 1) + ", faithful of order " + dec(abstract) +
                             ", element of order " + std::to_string(n * pr));
  return fail_report("thin_gluing", p, "no element of order " + std::to_string(n * pr));
}

VerificationReport check_parabolic_family(const Json& p, const RunOptions& o)
{
  Field F = field_from_params(p);
  FamilyParams fp;
  fp.partition = p.contains("partition") ? partition_of(p) : std::vector<std::size_t>{1, 1};
  GeneratorFamily fam = family("parabolic_gl", fp, F);
  for (std::size_t i = 0; i < fam.polys.size(); ++i)
    for (const auto& g : fam.gluing->realized.generators())
      if (act(fam.polys[i], g) != fam.polys[i])
        return fail_report("parabolic_family", p, fam.labels[i] + " moved by " + g.to_string());
  VerificationReport r = degree_product_check(fam, fam.gluing->realized.enumerated(o.cap), o.cap);
  r.check = "parabolic_family";
  r.params = p;
  return r;
}

VerificationReport check_field_axioms(const Json& p, const RunOptions&)
{
  Field F = field_from_params(p);
  const std::uint32_t q = F.q();
  for (std::uint32_t a = 0; a < q; ++a) {
    if (F.pow(a, q) != a)
      return fail_report("field_axioms", p, "a^q != a for a = " + F.format(a));
    if (a && F.mul(a, F.inv(a)) != 1)
      return fail_report("field_axioms", p, "a * a^-1 != 1 for a = " + F.format(a));
    if (F.add(a, F.neg(a)) != 0)
      return fail_report("field_axioms", p, "a + (-a) != 0 for a = " + F.format(a));
    for (std::uint32_t b = 0; b < q; ++b) {
      if (F.add(a, b) != F.add(b, a) || F.mul(a, b) != F.mul(b, a))
        return fail_report("field_axioms", p, "not commutative at " + F.format(a) + ", " + F.format(b));
      if (F.frob(F.mul(a, b)) != F.mul(F.frob(a), F.frob(b)) || F.frob(F.add(a, b)) != F.add(F.frob(a), F.frob(b)))
        return fail_report("field_axioms", p, "Frobenius not a homomorphism at " + F.format(a) + ", " + F.format(b));
      for (std::uint32_t c = 0; c < q; ++c) {
        if (F.mul(F.mul(a, b), c) != F.mul(a, F.mul(b, c)) || F.add(F.add(a, b), c) != F.add(a, F.add(b, c)))
          return fail_report("field_axioms", p, "not associative at " + F.format(a) + ", " + F.format(b) + ", " + F.format(c));
        if (F.mul(a, F.add(b, c)) != F.add(F.mul(a, b), F.mul(a, c)))
          return fail_report("field_axioms", p, "not distributive at " + F.format(a) + ", " + F.format(b) + ", " + F.format(c));
      }
    }
  }
  return pass_report("field_axioms", p, "exhaustive over " + std::to_string(q) + " elements");
}

Matrix random_invertible(const Field& F, std::size_t n, std::mt19937_64& rng)
{
  for (;;) {
    Matrix g(F, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        g.set(i, j, static_cast<std::uint32_t>(rng() % F.q()));
    if (is_invertible(g))
      return g;
  }
}

VerificationReport check_action_compat(const Json& p, const RunOptions& o)
{
  Field F = field_from_params(p);
  const std::size_t n = uval(p, "n", 4);
  VariableSpace S = VariableSpace::generic(n);
  std::mt19937_64 rng(uval(p, "seed", static_cast<std::int64_t>(o.seed)));
  std::size_t samples = uval(p, "samples", 40);
  for (std::size_t s = 0; s < samples; ++s) {
    Polynomial f = random_poly(F, S, rng, 4, 3);
    Matrix g = random_invertible(F, n, rng), h = random_invertible(F, n, rng);
    Polynomial fg = act(f, g);
    if (fg != act_by_substitution(f, g))
      return fail_report("action_compat", p, "elementary and substitution actions differ on " + f.to_string());
    if (act(f, g * h) != act(fg, h))
      return fail_report("action_compat", p, "f.(gh) != (f.g).h for f = " + f.to_string());
    std::vector<std::uint32_t> v(n);
    for (auto& c : v)
      c = static_cast<std::uint32_t>(rng() % F.q());
    if (fg.evaluate(v) != f.evaluate(matvec(g, v)))
      return fail_report("action_compat", p, "(f.g)(v) != f(gv) for f = " + f.to_string());
  }
  return pass_report("action_compat", p, std::to_string(samples) + " samples");
}

VerificationReport check_additivity(const Json& p, const RunOptions&)
{
  Field F = field_from_params(p);
  VariableSpace S = VariableSpace::generic(4);
  std::vector<Polynomial> v;
  for (std::size_t i = 0; i < 4; ++i)
    v.push_back(Polynomial::variable(F, S, i));
  std::vector<Polynomial> U{v[2], v[3]};
  AdditivePolynomial A = span_product(fp_expand(U), F, S);
  std::vector<Polynomial> forms;
  for (std::uint32_t a = 0; a < F.q(); ++a)
    for (std::uint32_t b = 0; b < F.q(); ++b)
      forms.push_back(v[0].scaled(a) + v[1].scaled(b) + v[2].scaled(a));
  std::vector<Polynomial> images;
  for (const auto& l : forms)
    images.push_back(A(l));
  for (std::size_t i = 0; i < forms.size(); ++i) {
    if (images[i] != orbit_product_fq(forms[i], U))
      return fail_report("additivity", p, "evaluation disagrees with the orbit product at " + forms[i].to_string());
    for (std::size_t j = 0; j < forms.size(); ++j)
      if (A(forms[i] + forms[j]) != images[i] + images[j])
        return fail_report("additivity", p, "not additive at " + forms[i].to_string() + ", " + forms[j].to_string());
  }
  return pass_report("additivity", p, "exhaustive over " + std::to_string(forms.size()) + "^2 pairs");
}

VerificationReport check_transfer_module(const Json& p, const RunOptions& o)
{
  Field F = field_from_params(p);
  MatrixGroup u2 = unipotent_upper(2, F);
  GluingGroup g = glue(u2, u2, full_hom_module(2, 2, F));
  MatrixGroup G = g.realized.enumerated(o.cap);
  VariableSpace S = VariableSpace::gluing(2, 2);
  Polynomial x1 = Polynomial::variable(F, S, 2), x2 = Polynomial::variable(F, S, 3);
  std::vector<Polynomial> invariants{x2, psi_of_y(1, g), dickson_of({x1, x2}, F, S)[2]};
  for (const auto& h : invariants)
    if (!is_invariant(h, G))
      return fail_report("transfer_module", p, "expected invariant is not: " + h.to_string());
  std::mt19937_64 rng(uval(p, "seed", static_cast<std::int64_t>(o.seed)));
  std::size_t samples = uval(p, "samples", 6);
  for (std::size_t s = 0; s < samples; ++s) {
    Polynomial f = random_poly(F, S, rng, 2, 2);
    Polynomial tf = transfer(f, G);
    if (!is_invariant(tf, G))
      return fail_report("transfer_module", p, "Tr(f) not invariant for f = " + f.to_string());
    const Matrix& e = G.elements()[rng() % G.elements().size()];
    if (transfer(act(f, e), G) != tf)
      return fail_report("transfer_module", p, "Tr(f.g) != Tr(f) for f = " + f.to_string());
    const Polynomial& h = invariants[rng() % invariants.size()];
    if (transfer(h * f, G) != h * tf)
      return fail_report("transfer_module", p, "Tr(hf) != h Tr(f) for f = " + f.to_string() + ", h = " + h.to_string());
  }
  return pass_report("transfer_module", p, std::to_string(samples) + " samples");
}

VerificationReport check_moore_dickson(const Json& p, const RunOptions&)
{
  Field F = field_from_params(p);
  std::size_t n = uval(p, "n");
  for (std::size_t i = 0; i <= n; ++i) {
    Polynomial a = dickson(n, F, i), b = moore_dickson(n, F, i);
    if (a != b)
      return fail_report("moore_dickson", p, "d_" + std::to_string(i) + ": product - Moore = " + (a - b).to_string());
  }
  return pass_report("moore_dickson", p, "all " + std::to_string(n + 1) + " coefficients agree");
}

VerificationReport check_gk2_ci(const Json& p, const RunOptions&)
{
  return skip_report("gk2_not_complete_intersection", p, "requires normal-form machinery");
}

const std::vector<std::pair<std::string, CheckFn>>& checks()
{
  static const std::vector<std::pair<std::string, CheckFn>> table = [] {
    std::vector<std::pair<std::string, CheckFn>> t{
        {"group_order", check_group_order},
        {"stabilizer_order", check_stabilizer_order},
        {"hilbert", check_hilbert},
        {"degree_product", check_degree_product},
        {"family", check_family},
        {"transfer_image", check_transfer_image},
        {"transfer_factorization", check_transfer_factorization},
        {"semidirect_law", check_semidirect_law},
        {"thin_gluing", check_thin_gluing},
        {"parabolic_family", check_parabolic_family},
        {"field_axioms", check_field_axioms},
        {"action_compat", check_action_compat},
        {"additivity", check_additivity},
        {"transfer_module", check_transfer_module},
        {"moore_dickson", check_moore_dickson},
        {"gk2_not_complete_intersection", check_gk2_ci},
    };
    for (const auto& name : identity_names())
      t.emplace_back(name, [name](const Json& p, const RunOptions&) { return identity_suite(name, p); });
    return t;
  }();
  return table;
}

const CheckFn* find_check(const std::string& name)
{
  for (const auto& [n, fn] : checks())
    if (n == name)
      return &fn;
  return nullptr;
}

} // namespace

VerificationReport run_check(const std::string& name, const Json& params, const RunOptions& options)
{
  const CheckFn* fn = find_check(name);
  if (!fn)
    fail(ErrorKind::InvalidArgument, "unknown check: " + name);
  auto start = std::chrono::steady_clock::now();
  VerificationReport r = (*fn)(params, options);
  r.check = name;
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<std::string> check_names()
{
  std::vector<std::string> out;
  for (const auto& [n, fn] : checks())
    out.push_back(n);
  return out;
}

Scenario parse_scenario(const std::string& text)
{
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("scenario is not valid JSON: ") + e.what());
  }
  try {
    Scenario s;
    s.name = j.at("name").get<std::string>();
    if (j.contains("field")) {
      s.field = j.at("field");
      Field::build(s.field.at("p").get<std::uint32_t>(), s.field.value("r", 1u));
    }
    if (j.contains("budgets")) {
      const Json& b = j.at("budgets");
      std::int64_t cap = b.value("cap", static_cast<std::int64_t>(kDefaultCap));
      std::int64_t D = b.value("degree_bound", 10);
      double T = b.value("time_limit_s", 0.0);
      if (cap <= 0 || D <= 0 || T < 0)
        fail(ErrorKind::Parse, "budgets must be positive");
      s.options.cap = static_cast<std::uint64_t>(cap);
      s.options.degree_bound = static_cast<std::uint32_t>(D);
      s.time_limit_s = T;
    }
    s.options.seed = j.value("seed", s.options.seed);
    std::int64_t workers = j.value("workers", 1);
    if (workers <= 0)
      fail(ErrorKind::Parse, "workers must be positive");
    s.workers = static_cast<unsigned>(workers);
    for (const auto& c : j.at("checks")) {
      ScenarioCheck sc;
      sc.check = c.at("check").get<std::string>();
      if (!find_check(sc.check))
        fail(ErrorKind::Parse, "unknown check in scenario: " + sc.check);
      sc.params = c.value("params", Json::object());
      if (!sc.params.is_object())
        fail(ErrorKind::Parse, "check params must be an object");
      if (!s.field.is_null() && !sc.params.contains("q") && !sc.params.contains("p"))
        sc.params["q"] = ipow(s.field.at("p").get<std::uint32_t>(), s.field.value("r", 1u));
      std::string expect = c.value("expect", std::string("pass"));
      if (expect == "pass")
        sc.expect = Status::Pass;
      else if (expect == "fail")
        sc.expect = Status::Fail;
      else
        fail(ErrorKind::Parse, "expect must be pass or fail");
      s.checks.push_back(std::move(sc));
    }
    return s;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Parse, std::string("malformed scenario: ") + e.what());
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse)
      throw;
    fail(ErrorKind::Parse, std::string("malformed scenario: ") + e.what());
  }
}

ScenarioResult run_scenario(const Scenario& s)
{
  const std::size_t n = s.checks.size();
  ScenarioResult res;
  res.reports.resize(n);
  res.matched.assign(n, false);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      const ScenarioCheck& c = s.checks[i];
      auto start = std::chrono::steady_clock::now();
      VerificationReport r;
      try {
        r = run_check(c.check, c.params, s.options);
      } catch (const Error& e) {
        if (e.kind() == ErrorKind::Budget || e.kind() == ErrorKind::CapExceeded)
          r = skip_report(c.check, c.params, std::string(to_string(e.kind())) + ": " + e.what());
        else
          r = fail_report(c.check, c.params, std::string("error ") + to_string(e.kind()) + ": " + e.what());
      } catch (const std::exception& e) {
        r = fail_report(c.check, c.params, std::string("error: ") + e.what());
      }
      r.check = c.check;
      r.params = c.params;
      r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
      if (s.time_limit_s > 0 && r.millis > s.time_limit_s * 1000)
        r.detail += std::string(r.detail.empty() ? "" : "; ") + "over the time budget";
      res.reports[i] = std::move(r);
    }
  };
  unsigned w = std::max(1u, std::min<unsigned>(s.workers, static_cast<unsigned>(n ? n : 1)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < w; ++t)
    pool.emplace_back(worker);
  worker();
  for (auto& t : pool)
    t.join();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& r = res.reports[i];
    res.matched[i] = r.status == Status::Skipped || r.status == s.checks[i].expect;
    if (!res.matched[i])
      res.exit_code = 1;
  }
  return res;
}

std::string summary_table(const Scenario& s, const ScenarioResult& res)
{
  std::ostringstream out;
  out << "scenario " << s.name << "\n";
  std::size_t width = 5;
  for (const auto& c : s.checks)
    width = std::max(width, c.check.size());
  std::size_t ok = 0;
  for (std::size_t i = 0; i < res.reports.size(); ++i) {
    const auto& r = res.reports[i];
    out << "  " << r.check << std::string(width - r.check.size() + 2, ' ') << to_string(r.status);
    if (s.checks[i].expect == Status::Fail)
      out << " (expected fail)";
    out << (res.matched[i] ? "" : "  MISMATCH") << "  " << static_cast<std::int64_t>(r.millis) << " ms\n";
    ok += res.matched[i];
  }
  out << ok << "/" << res.reports.size() << " as expected\n";
  return out.str();
}

} // namespace modinv
