#include "modinv/analysis.hpp"

#include <algorithm>
#include <functional>

#include <absl/container/flat_hash_map.h>

#include "modinv/error.hpp"

namespace modinv {

const char* to_string(Status s)
{
  switch (s) {
  case Status::Pass: return "pass";
  case Status::Fail: return "fail";
  case Status::Skipped: return "skipped";
  }
  return "fail";
}

Json VerificationReport::to_json() const
{
  Json j;
  j["check"] = check;
  j["params"] = params;
  j["status"] = to_string(status);
  if (status == Status::Fail)
    j["witness"] = witness;
  if (status == Status::Skipped)
    j["reason"] = witness;
  if (!detail.empty())
    j["detail"] = detail;
  j["millis"] = static_cast<std::int64_t>(millis);
  return j;
}

VerificationReport pass_report(std::string check, Json params, std::string detail)
{
  VerificationReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.detail = std::move(detail);
  return r;
}

VerificationReport fail_report(std::string check, Json params, std::string witness)
{
  if (witness.empty())
    fail(ErrorKind::InvalidArgument, "a failing report needs a witness");
  VerificationReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.status = Status::Fail;
  r.witness = std::move(witness);
  return r;
}

VerificationReport skip_report(std::string check, Json params, std::string reason)
{
  VerificationReport r;
  r.check = std::move(check);
  r.params = std::move(params);
  r.status = Status::Skipped;
  r.witness = std::move(reason);
  return r;
}

Polynomial transfer(const Polynomial& f, const MatrixGroup& g)
{
  if (!g.is_enumerated())
    fail(ErrorKind::InvalidArgument, "transfer needs an enumerated group");
  Polynomial sum(f.field(), f.space());
  for (const auto& h : g.elements())
    sum += act(f, h);
  return sum;
}

bool is_invariant(const Polynomial& f, const MatrixGroup& g)
{
  if (f.space().size() != g.dim())
    fail(ErrorKind::DimensionMismatch, "polynomial and group dimensions differ");
  for (const auto& h : g.generators())
    if (act(f, h) != f)
      return false;
  return true;
}

namespace {

std::string clip(std::string s, std::size_t limit = 4000)
{
  if (s.size() > limit)
    s = s.substr(0, limit) + " ...";
  return s;
}

} // namespace

VerificationReport transfer_factorization_check(const Polynomial& f, const GluingGroup& gluing, std::uint64_t cap)
{
  const Field& F = gluing.module.field();
  const std::size_t m = gluing.m();
  const std::size_t n = gluing.n();
  Json params = {{"f", f.to_string()}};
  MatrixGroup G = gluing.realized.enumerated(cap);
  Polynomial direct = transfer(f, G);

  Polynomial over_m(F, f.space());
  Matrix zero(F, m, n);
  for (const auto& phi : gluing.module.elements(cap))
    over_m += act(f, block_upper(Matrix::identity(F, m), phi, Matrix::identity(F, n)));
  MatrixGroup g1 = gluing.g1.enumerated(cap);
  MatrixGroup g2 = gluing.g2.enumerated(cap);
  Polynomial composite(F, f.space());
  for (const auto& a : g1.elements())
    for (const auto& b : g2.elements())
      composite += act(over_m, block_upper(a, zero, b));
  return compare_sides("transfer_factorization", params, direct, composite);
}

std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t d)
{
  if (nvars == 0 || nvars > kMaxVars)
    fail(ErrorKind::InvalidArgument, "bad number of variables");
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::size_t, std::uint32_t)> rec = [&](std::size_t i, std::uint32_t left) {
    if (i + 1 == nvars) {
      cur.e[i] = left;
      cur.deg = d;
      out.push_back(cur);
      cur.e[i] = 0;
      return;
    }
    for (std::uint32_t k = left + 1; k-- > 0;) {
      cur.e[i] = k;
      rec(i + 1, left - k);
    }
    cur.e[i] = 0;
  };
  rec(0, d);
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return grevlex_greater(a, b); });
  return out;
}

DegreeSpan::DegreeSpan(Field field, VariableSpace space, std::uint32_t degree)
: field_(std::move(field)), space_(std::move(space)), degree_(degree),
  monos_(monomials_of_degree(space_.size(), degree))
{}

std::vector<std::uint32_t> DegreeSpan::coords(const Polynomial& f) const
{
  std::vector<std::uint32_t> v(monos_.size(), 0);
  for (const auto& t : f.terms()) {
    if (t.m.deg != degree_)
      fail(ErrorKind::InvalidArgument, "polynomial is not homogeneous of the span's degree");
    auto it = std::lower_bound(monos_.begin(), monos_.end(), t.m,
                               [](const Monomial& a, const Monomial& b) { return grevlex_greater(a, b); });
    v[static_cast<std::size_t>(it - monos_.begin())] = t.c;
  }
  return v;
}

void DegreeSpan::reduce(std::vector<std::uint32_t>& v) const
{
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    std::uint32_t c = v[pivots_[r]];
    if (c == 0)
      continue;
    const auto& row = rows_[r];
    for (std::size_t j = 0; j < v.size(); ++j)
      if (row[j])
        v[j] = field_.sub(v[j], field_.mul(c, row[j]));
  }
}

bool DegreeSpan::insert(const Polynomial& f)
{
  auto v = coords(f);
  reduce(v);
  auto it = std::find_if(v.begin(), v.end(), [](std::uint32_t c) { return c != 0; });
  if (it == v.end())
    return false;
  std::size_t piv = static_cast<std::size_t>(it - v.begin());
  std::uint32_t inv = field_.inv(v[piv]);
  for (auto& c : v)
    c = field_.mul(c, inv);
  rows_.push_back(std::move(v));
  pivots_.push_back(piv);
  return true;
}

bool DegreeSpan::contains(const Polynomial& f) const
{
  auto v = coords(f);
  reduce(v);
  return std::all_of(v.begin(), v.end(), [](std::uint32_t c) { return c == 0; });
}

std::vector<Polynomial> DegreeSpan::basis() const
{
  std::vector<Polynomial> out;
  for (const auto& row : rows_) {
    std::vector<Term> terms;
    for (std::size_t j = 0; j < row.size(); ++j)
      if (row[j])
        terms.push_back({monos_[j], row[j]});
    out.push_back(Polynomial::from_terms(field_, space_, std::move(terms)));
  }
  return out;
}

namespace {

DegreeSpan image_at(const MatrixGroup& g, const VariableSpace& space, std::uint32_t d)
{
  DegreeSpan span(g.field(), space, d);
  for (const auto& mono : monomials_of_degree(space.size(), d)) {
    Polynomial t = transfer(Polynomial::monomial(g.field(), space, mono), g);
    if (!t.is_zero())
      span.insert(t);
  }
  return span;
}

} // namespace

std::vector<TransferImage> transfer_image_basis(const MatrixGroup& g, const VariableSpace& space, std::uint32_t max_degree)
{
  MatrixGroup e = g.is_enumerated() ? g : g.enumerated();
  std::vector<TransferImage> out;
  for (std::uint32_t d = 0; d <= max_degree; ++d)
    out.push_back({d, image_at(e, space, d).basis()});
  return out;
}

VerificationReport principal_check(const MatrixGroup& g, const VariableSpace& space, const Polynomial& tau,
                                   std::uint32_t max_degree)
{
  Json params = {{"tau", clip(tau.to_string(), 200)}, {"degree_bound", max_degree}};
  if (tau.is_zero() || !tau.is_homogeneous())
    return fail_report("principal_check", params, "tau must be a nonzero form: " + tau.to_string());
  MatrixGroup e = g.is_enumerated() ? g : g.enumerated();
  std::size_t checked = 0;
  for (const auto& img : transfer_image_basis(e, space, max_degree))
    for (const auto& b : img.basis) {
      ++checked;
      if (!divide(b, tau).remainder.is_zero())
        return fail_report("principal_check", params,
                           "degree " + std::to_string(img.degree) + " image element not divisible by tau: " +
                               clip(b.to_string()));
    }
  auto td = static_cast<std::uint32_t>(tau.degree());
  if (!image_at(e, space, td).contains(tau))
    return fail_report("principal_check", params,
                       "tau is not attained in the image at degree " + std::to_string(td));
  return pass_report("principal_check", params,
                     std::to_string(checked) + " image basis elements divisible; tau attained at degree " +
                         std::to_string(td));
}

std::uint64_t invariant_dimension(const MatrixGroup& g, const VariableSpace& space, std::uint32_t d,
                                  std::uint64_t monomial_budget)
{
  if (space.size() != g.dim())
    fail(ErrorKind::DimensionMismatch, "space and group dimensions differ");
  auto monos = monomials_of_degree(space.size(), d);
  if (monos.size() > monomial_budget)
    fail(ErrorKind::Budget, "degree " + std::to_string(d) + " has " + std::to_string(monos.size()) +
                                " monomials, over the budget");
  const Field& F = g.field();
  const std::size_t N = monos.size();
  const std::size_t G = g.generators().size();
  if (G == 0)
    return N;
  absl::flat_hash_map<Monomial, std::size_t> index;
  for (std::size_t i = 0; i < N; ++i)
    index.emplace(monos[i], i);
  Matrix A(F, N, G * N);
  for (std::size_t i = 0; i < N; ++i) {
    Polynomial mono = Polynomial::monomial(F, space, monos[i]);
    for (std::size_t k = 0; k < G; ++k) {
      Polynomial diff = act(mono, g.generators()[k]) - mono;
      for (const auto& t : diff.terms())
        A.set(i, k * N + index.at(t.m), t.c);
    }
  }
  return N - rank(A);
}

std::vector<std::int64_t> HilbertClaim::series(std::uint32_t max_degree) const
{
  std::vector<std::int64_t> s(max_degree + 1, 0);
  s[0] = 1;
  for (auto e : relation_degrees) {
    if (e == 0)
      fail(ErrorKind::InvalidArgument, "relation degrees must be positive");
    for (std::size_t k = max_degree + 1; k-- > e;)
      s[k] -= s[k - e];
  }
  for (auto d : generator_degrees) {
    if (d == 0)
      fail(ErrorKind::InvalidArgument, "generator degrees must be positive");
    for (std::size_t k = d; k <= max_degree; ++k)
      s[k] += s[k - d];
  }
  return s;
}

namespace {

Json degrees_json(const std::vector<std::uint64_t>& v) { return Json(v); }

} // namespace

VerificationReport hilbert_check(const HilbertClaim& claim, const MatrixGroup& g, const VariableSpace& space,
                                 std::uint32_t max_degree)
{
  Json params = {{"generator_degrees", degrees_json(claim.generator_degrees)},
                 {"relation_degrees", degrees_json(claim.relation_degrees)},
                 {"degree_bound", max_degree}};
  auto s = claim.series(max_degree);
  std::string dims;
  for (std::uint32_t d = 0; d <= max_degree; ++d) {
    std::uint64_t dim = invariant_dimension(g, space, d);
    dims += (d ? "," : "") + std::to_string(dim);
    if (s[d] < 0 || static_cast<std::uint64_t>(s[d]) != dim)
      return fail_report("hilbert", params,
                         "degree " + std::to_string(d) + ": claimed " + std::to_string(s[d]) +
                             ", invariant dimension " + std::to_string(dim));
  }
  return pass_report("hilbert", params, "dimensions " + dims);
}

VerificationReport degree_product_check(const GeneratorFamily& family, const MatrixGroup& group, std::uint64_t cap)
{
  if (family.structure != Structure::PolynomialAlgebra)
    fail(ErrorKind::InvalidArgument, "degree product check needs a polynomial-algebra family");
  Json params = {{"family", family.name}, {"degrees", degrees_json(family.degrees)}};
  BigInt prod = 1;
  for (auto d : family.degrees)
    prod *= d;
  BigInt order = group.claimed_order() ? *group.claimed_order() : BigInt(group.enumerated(cap).order());
  if (family.polys.size() != group.dim())
    return fail_report("degree_product", params,
                       std::to_string(family.polys.size()) + " generators for a polynomial algebra in " +
                           std::to_string(group.dim()) + " variables");
  if (prod != order)
    return fail_report("degree_product", params,
                       "degree product " + prod.str() + " != group order " + order.str());
  return pass_report("degree_product", params, "degree product = |G| = " + order.str());
}

VerificationReport compare_sides(const std::string& check, const Json& params, const Polynomial& lhs,
                                 const Polynomial& rhs)
{
  if (lhs == rhs)
    return pass_report(check, params, "both sides have " + std::to_string(lhs.size()) + " terms");
  return fail_report(check, params, "lhs - rhs = " + clip((lhs - rhs).to_string()));
}

} // namespace modinv
