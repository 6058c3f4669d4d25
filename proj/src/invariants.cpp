#include "modinv/invariants.hpp"

#include <algorithm>
#include <map>

#include "modinv/error.hpp"

namespace modinv {

namespace {

std::uint64_t upow(std::uint64_t b, std::uint64_t e) { return ipow(b, e); }

Polynomial zero_like(const Polynomial& f) { return Polynomial(f.field(), f.space()); }

void require_invariant(const std::string& label, const Polynomial& f, const MatrixGroup& g)
{
  for (std::size_t i = 0; i < g.generators().size(); ++i)
    if (act(f, g.generators()[i]) != f)
      fail(ErrorKind::InvarianceFailure,
           label + " is not fixed by generator " + std::to_string(i) + " of " + g.name());
}

void require_degree(const std::string& label, const Polynomial& f, std::uint64_t d)
{
  if (!f.is_homogeneous() || f.degree() != static_cast<std::int64_t>(d))
    fail(ErrorKind::InvarianceFailure, label + " should be homogeneous of degree " + std::to_string(d) +
                                           ", got degree " + std::to_string(f.degree()));
}

std::vector<std::uint32_t> linear_coeffs(const Polynomial& l)
{
  return LinearForm::from_polynomial(l).coeffs();
}

} // namespace

Polynomial AdditivePolynomial::operator()(const Polynomial& t) const
{
  if (coeffs.empty())
    fail(ErrorKind::InvalidArgument, "empty additive polynomial");
  Polynomial out = zero_like(t);
  Polynomial power = t;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j > 0)
      power = power.frobenius_power(1);
    if (!coeffs[j].is_zero())
      out += coeffs[j] * power;
  }
  return out;
}

AdditivePolynomial span_product(const std::vector<Polynomial>& fp_basis, const Field& field,
                                const VariableSpace& space)
{
  AdditivePolynomial A{{Polynomial::constant(field, space, 1)}};
  const std::uint32_t p = field.p();
  for (const auto& u : fp_basis) {
    Polynomial val = A(u);
    if (val.is_zero())
      fail(ErrorKind::InvalidArgument, "span basis is linearly dependent over the prime field");
    Polynomial vp = val.pow(p - 1);
    std::vector<Polynomial> next;
    next.reserve(A.coeffs.size() + 1);
    for (std::size_t j = 0; j <= A.coeffs.size(); ++j) {
      Polynomial c(field, space);
      if (j > 0)
        c = A.coeffs[j - 1].frobenius_power(1);
      if (j < A.coeffs.size())
        c -= vp * A.coeffs[j];
      next.push_back(std::move(c));
    }
    A.coeffs = std::move(next);
  }
  return A;
}

std::vector<Polynomial> fp_expand(const std::vector<Polynomial>& fq_basis)
{
  std::vector<Polynomial> out;
  for (const auto& v : fq_basis)
    for (auto c : v.field().fp_basis())
      out.push_back(v.scaled(c));
  return out;
}

Polynomial orbit_product(const Polynomial& l, const std::vector<Polynomial>& fp_basis)
{
  return span_product(fp_basis, l.field(), l.space())(l);
}

Polynomial orbit_product_fq(const Polynomial& l, const std::vector<Polynomial>& fq_basis)
{
  return orbit_product(l, fp_expand(fq_basis));
}

Polynomial product_tree(const std::vector<Polynomial>& factors, const Field& field, const VariableSpace& space)
{
  if (factors.empty())
    return Polynomial::constant(field, space, 1);
  std::vector<Polynomial> level = factors;
  while (level.size() > 1) {
    std::vector<Polynomial> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2)
      next.push_back(level[i] * level[i + 1]);
    if (level.size() % 2)
      next.push_back(level.back());
    level = std::move(next);
  }
  return level[0];
}

OrbitProduct orbit_product_under_group(const Polynomial& l, const MatrixGroup& group)
{
  MatrixGroup g = group.is_enumerated() ? group : group.enumerated();
  auto base = linear_coeffs(l);
  std::map<std::vector<std::uint32_t>, Polynomial> orbit;
  for (const auto& h : g.elements()) {
    Polynomial img = act(l, h);
    orbit.emplace(linear_coeffs(img), img);
  }
  const Field& F = l.field();
  FpSpan span(F, base.size());
  std::vector<Polynomial> basis;
  for (const auto& [c, img] : orbit) {
    std::vector<std::uint32_t> d(c.size());
    for (std::size_t i = 0; i < c.size(); ++i)
      d[i] = F.sub(c[i], base[i]);
    if (span.insert(d))
      basis.push_back(img - l);
  }
  std::uint64_t expected = upow(F.p(), span.dimension());
  if (orbit.size() != expected)
    fail(ErrorKind::InvalidArgument, "orbit of " + l.to_string() + " is not an affine F_p-subspace");
  std::vector<Polynomial> elems;
  for (auto& [c, img] : orbit)
    elems.push_back(img);
  return {product_tree(elems, F, l.space()), basis};
}

std::vector<Polynomial> dickson_of(const std::vector<Polynomial>& vs, const Field& field,
                                   const VariableSpace& space)
{
  const std::size_t n = vs.size();
  const std::size_t r = field.r();
  AdditivePolynomial A = span_product(fp_expand(vs), field, space);
  for (std::size_t j = 0; j < A.coeffs.size(); ++j)
    if (j % r != 0 && !A.coeffs[j].is_zero())
      fail(ErrorKind::InvarianceFailure, "span product is not F_q-linear");
  std::vector<Polynomial> d;
  for (std::size_t i = 0; i <= n; ++i)
    d.push_back(A.coeffs[r * (n - i)]);
  return d;
}

Polynomial poly_determinant(const std::vector<std::vector<Polynomial>>& rows)
{
  const std::size_t n = rows.size();
  if (n == 0)
    fail(ErrorKind::InvalidArgument, "empty determinant");
  for (const auto& row : rows)
    if (row.size() != n)
      fail(ErrorKind::DimensionMismatch, "determinant of a non-square matrix");
  if (n == 1)
    return rows[0][0];
  Polynomial out = zero_like(rows[0][0]);
  for (std::size_t c = 0; c < n; ++c) {
    if (rows[0][c].is_zero())
      continue;
    std::vector<std::vector<Polynomial>> minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<Polynomial> row;
      for (std::size_t j = 0; j < n; ++j)
        if (j != c)
          row.push_back(rows[i][j]);
      minor.push_back(std::move(row));
    }
    Polynomial term = rows[0][c] * poly_determinant(minor);
    if (c % 2)
      out -= term;
    else
      out += term;
  }
  return out;
}

std::vector<Polynomial> moore_dickson_of(const std::vector<Polynomial>& vs, const Field& field,
                                         const VariableSpace& space)
{
  const std::size_t n = vs.size();
  std::vector<Polynomial> d{Polynomial::constant(field, space, 1)};
  if (n == 0)
    return d;
  // powers[a][k] = v_a^(q^k)
  std::vector<std::vector<Polynomial>> powers;
  for (const auto& v : vs) {
    std::vector<Polynomial> row{v};
    for (std::size_t k = 1; k <= n; ++k)
      row.push_back(row.back().q_power(1));
    powers.push_back(std::move(row));
  }
  auto minor = [&](std::size_t skip) {
    std::vector<std::vector<Polynomial>> rows;
    for (const auto& pw : powers) {
      std::vector<Polynomial> row;
      for (std::size_t k = 0; k <= n; ++k)
        if (k != skip)
          row.push_back(pw[k]);
      rows.push_back(std::move(row));
    }
    return poly_determinant(rows);
  };
  Polynomial L = minor(n);
  if (L.is_zero())
    fail(ErrorKind::InvalidArgument, "Moore determinant vanishes: vectors are dependent");
  for (std::size_t i = 1; i <= n; ++i) {
    Polynomial di = exact_divide(minor(n - i), L);
    d.push_back(i % 2 ? -di : di);
  }
  return d;
}

namespace {

std::vector<Polynomial> generic_vars(std::size_t n, const Field& field)
{
  VariableSpace S = VariableSpace::generic(n);
  std::vector<Polynomial> vs;
  for (std::size_t i = 0; i < n; ++i)
    vs.push_back(Polynomial::variable(field, S, i));
  return vs;
}

} // namespace

Polynomial dickson(std::size_t n, const Field& field, std::size_t i)
{
  if (n == 0 || i > n)
    fail(ErrorKind::InvalidArgument, "dickson invariant needs 0 <= i <= n and n >= 1");
  return dickson_of(generic_vars(n, field), field, VariableSpace::generic(n))[i];
}

Polynomial moore_dickson(std::size_t n, const Field& field, std::size_t i)
{
  if (n == 0 || i > n)
    fail(ErrorKind::InvalidArgument, "dickson invariant needs 0 <= i <= n and n >= 1");
  return moore_dickson_of(generic_vars(n, field), field, VariableSpace::generic(n))[i];
}

std::vector<Polynomial> pinned_list(std::size_t m, const Field& field)
{
  if (m == 0)
    fail(ErrorKind::InvalidArgument, "symplectic rank must be positive");
  VariableSpace S = VariableSpace::symplectic(m);
  std::vector<Polynomial> L;
  for (std::size_t i = 1; i <= m; ++i)
    L.push_back(Polynomial::variable(field, S, S.x(i)));
  for (std::size_t i = m; i >= 1; --i)
    L.push_back(Polynomial::variable(field, S, S.y(i)));
  return L;
}

Polynomial partial_dickson(std::size_t i, std::size_t l, std::size_t m, const Field& field)
{
  if (i > l || l > 2 * m)
    fail(ErrorKind::InvalidArgument, "partial dickson needs i <= l <= 2m");
  auto L = pinned_list(m, field);
  L.erase(L.begin() + static_cast<std::ptrdiff_t>(l), L.end());
  return dickson_of(L, field, VariableSpace::symplectic(m))[i];
}

Polynomial xi(std::size_t m, const Field& field, std::int64_t i)
{
  if (m == 0)
    fail(ErrorKind::InvalidArgument, "symplectic rank must be positive");
  if (i < 0)
    fail(ErrorKind::InvalidArgument, "xi_i needs i >= 0; use xi_power for negative indices");
  VariableSpace S = VariableSpace::symplectic(m);
  if (i == 0)
    return Polynomial(field, S);
  const auto qi = static_cast<std::uint32_t>(upow(field.q(), static_cast<std::uint64_t>(i)));
  std::vector<Term> terms;
  for (std::size_t s = 1; s <= m; ++s) {
    Monomial a = Monomial::variable(S.y(s), qi) * Monomial::variable(S.x(s));
    Monomial b = Monomial::variable(S.y(s)) * Monomial::variable(S.x(s), qi);
    terms.push_back({a, 1});
    terms.push_back({b, field.neg(1)});
  }
  return Polynomial::from_terms(field, S, std::move(terms));
}

Polynomial xi_power(std::size_t m, const Field& field, std::int64_t i, std::int64_t j)
{
  if (j < 0)
    fail(ErrorKind::InvalidArgument, "xi_power needs j >= 0");
  if (i >= 0)
    return xi(m, field, i).q_power(static_cast<std::uint64_t>(j));
  if (j + i < 0)
    fail(ErrorKind::Unsupported, "xi_{-i}^(q^j) with j < i is not a polynomial");
  return -xi(m, field, -i).q_power(static_cast<std::uint64_t>(j + i));
}

AdditivePolynomial n_k_additive(std::size_t k, std::size_t m, const Field& field)
{
  if (k < 1 || k > m)
    fail(ErrorKind::InvalidArgument, "N_k needs 1 <= k <= m");
  auto L = pinned_list(m, field);
  L.erase(L.begin() + static_cast<std::ptrdiff_t>(2 * m - k), L.end());
  return span_product(fp_expand(L), field, VariableSpace::symplectic(m));
}

Polynomial n_k(const Polynomial& t, std::size_t k, std::size_t m)
{
  if (t.space() != VariableSpace::symplectic(m))
    fail(ErrorKind::InvalidArgument, "N_k needs a polynomial in the symplectic space of rank m");
  return n_k_additive(k, m, t.field())(t);
}

const char* to_string(Structure s)
{
  switch (s) {
  case Structure::PolynomialAlgebra: return "polynomial_algebra";
  case Structure::CompleteIntersection: return "complete_intersection";
  case Structure::Unknown: return "unknown";
  }
  return "unknown";
}

Polynomial psi_of_y(std::size_t j, const GluingGroup& gluing)
{
  const std::size_t m = gluing.m();
  const std::size_t n = gluing.n();
  if (j >= m)
    fail(ErrorKind::InvalidArgument, "psi: y index out of range");
  const Field& F = gluing.module.field();
  VariableSpace S = VariableSpace::gluing(m, n);
  FpSpan span(F, n);
  std::vector<Polynomial> basis;
  for (const auto& phi : gluing.module.mats()) {
    auto row = phi.row(j);
    if (span.insert(row)) {
      std::vector<std::uint32_t> full(m + n, 0);
      std::copy(row.begin(), row.end(), full.begin() + static_cast<std::ptrdiff_t>(m));
      basis.push_back(LinearForm(F, S, full).to_polynomial());
    }
  }
  return orbit_product(Polynomial::variable(F, S, j), basis);
}

Polynomial psi_substitute(const Polynomial& f, const GluingGroup& gluing)
{
  if (f.space() != VariableSpace::gluing(gluing.m(), gluing.n()))
    fail(ErrorKind::InvalidArgument, "psi needs a polynomial in the gluing space");
  std::map<std::size_t, Polynomial> assignment;
  for (std::size_t j = 0; j < gluing.m(); ++j)
    assignment.emplace(j, psi_of_y(j, gluing));
  return substitute(f, assignment);
}

Polynomial flag_substitute(const Polynomial& f, const GluingGroup& gluing, std::size_t block)
{
  const auto& part = gluing.partition;
  if (part.empty() || block >= part.size())
    fail(ErrorKind::InvalidArgument, "flag substitution needs a parabolic gluing and a valid block");
  const std::size_t m = gluing.m();
  const std::size_t n = gluing.n();
  if (f.space() != VariableSpace::gluing(m, n))
    fail(ErrorKind::InvalidArgument, "flag substitution needs a polynomial in the gluing space");
  const Field& F = f.field();
  std::size_t start = 0;
  for (std::size_t b = 0; b < block; ++b)
    start += part[b];
  std::vector<Polynomial> basis;
  for (std::size_t i = start; i < n; ++i)
    basis.push_back(Polynomial::variable(F, f.space(), m + i));
  AdditivePolynomial A = span_product(fp_expand(basis), F, f.space());
  std::map<std::size_t, Polynomial> assignment;
  for (std::size_t j = 0; j < m; ++j)
    assignment.emplace(j, A(Polynomial::variable(F, f.space(), j)));
  return substitute(f, assignment);
}

std::vector<Polynomial> kuhn_mitchell(const std::vector<Polynomial>& vars, const std::vector<std::size_t>& partition)
{
  std::size_t total = 0;
  for (auto b : partition) {
    if (b == 0)
      fail(ErrorKind::InvalidArgument, "partition blocks must be positive");
    total += b;
  }
  if (vars.empty() || total != vars.size())
    fail(ErrorKind::InvalidArgument, "partition does not match the number of variables");
  const Field& F = vars[0].field();
  const VariableSpace& S = vars[0].space();
  std::vector<Polynomial> out;
  std::size_t start = 0;
  for (auto b : partition) {
    std::vector<Polynomial> later(vars.begin() + static_cast<std::ptrdiff_t>(start + b), vars.end());
    AdditivePolynomial A = span_product(fp_expand(later), F, S);
    std::vector<Polynomial> ns;
    for (std::size_t i = start; i < start + b; ++i)
      ns.push_back(A(vars[i]));
    auto d = dickson_of(ns, F, S);
    out.insert(out.end(), d.begin() + 1, d.end());
    start += b;
  }
  return out;
}

std::vector<std::uint64_t> kuhn_mitchell_degrees(const std::vector<std::size_t>& partition, std::uint64_t q)
{
  std::size_t total = 0;
  for (auto b : partition)
    total += b;
  std::vector<std::uint64_t> out;
  std::size_t start = 0;
  for (auto b : partition) {
    std::uint64_t scale = upow(q, total - start - b);
    for (std::size_t s = 1; s <= b; ++s)
      out.push_back(scale * (upow(q, b) - upow(q, b - s)));
    start += b;
  }
  return out;
}

namespace {

struct Builder {
  GeneratorFamily fam;

  void add(std::string label, Polynomial f, std::uint64_t degree)
  {
    fam.labels.push_back(std::move(label));
    fam.polys.push_back(std::move(f));
    fam.degrees.push_back(degree);
  }

  GeneratorFamily finish()
  {
    for (std::size_t i = 0; i < fam.polys.size(); ++i) {
      require_degree(fam.labels[i], fam.polys[i], fam.degrees[i]);
      require_invariant(fam.labels[i], fam.polys[i], fam.group);
    }
    return std::move(fam);
  }
};

std::string idx(const std::string& base, std::size_t i) { return base + std::to_string(i); }

void add_xis(Builder& b, std::size_t m, const Field& F, std::size_t upto)
{
  const std::uint64_t q = F.q();
  for (std::size_t i = 1; i <= upto; ++i)
    b.add(idx("xi", i), xi(m, F, static_cast<std::int64_t>(i)), upow(q, i) + 1);
}

std::uint64_t dickson_degree(std::uint64_t q, std::size_t i, std::size_t n) { return upow(q, n) - upow(q, n - i); }

void require_m(const FamilyParams& p)
{
  if (p.m < 1)
    fail(ErrorKind::InvalidArgument, "family needs m >= 1");
}

void require_k(const FamilyParams& p)
{
  require_m(p);
  if (p.k < 1 || p.k > p.m)
    fail(ErrorKind::InvalidArgument, "family needs 1 <= k <= m");
}

GeneratorFamily make_carlisle_kropholler(const FamilyParams& p, const Field& F)
{
  require_m(p);
  const std::size_t m = p.m;
  const std::uint64_t q = F.q();
  Builder b{GeneratorFamily{"carlisle_kropholler", p, {}, {}, {}, sp_group(m, F), std::nullopt, Structure::Unknown, std::nullopt}};
  add_xis(b, m, F, 2 * m - 1);
  auto d = dickson_of(pinned_list(m, F), F, VariableSpace::symplectic(m));
  for (std::size_t i = 1; i <= m; ++i)
    b.add("d" + std::to_string(i) + "," + std::to_string(2 * m), d[i], dickson_degree(q, i, 2 * m));
  if (m == 1) {
    b.fam.structure = Structure::PolynomialAlgebra;
  } else {
    b.fam.structure = Structure::CompleteIntersection;
    if (m == 2)
      b.fam.relation_degrees = std::vector<std::uint64_t>{upow(q, 4) + q};
  }
  return b.finish();
}

GeneratorFamily make_stab_sub(const FamilyParams& p, const Field& F)
{
  require_k(p);
  const std::size_t m = p.m, k = p.k;
  const std::uint64_t q = F.q();
  VariableSpace S = VariableSpace::symplectic(m);
  Builder b{GeneratorFamily{"stab_sub", p, {}, {}, {}, stabilizer_sp(m, k, F), std::nullopt,
                            Structure::CompleteIntersection, std::nullopt}};
  for (std::size_t i = 1; i <= k; ++i)
    b.add(idx("x", i), Polynomial::variable(F, S, S.x(i)), 1);
  add_xis(b, m, F, 2 * m - 1);
  AdditivePolynomial N = n_k_additive(k, m, F);
  for (std::size_t i = 1; i <= k; ++i)
    b.add("N" + std::to_string(k) + "(y" + std::to_string(i) + ")", N(Polynomial::variable(F, S, S.y(i))),
          upow(q, 2 * m - k));
  auto L = pinned_list(m, F);
  L.erase(L.begin() + static_cast<std::ptrdiff_t>(2 * m - k), L.end());
  auto d = dickson_of(L, F, S);
  for (std::size_t i = 1; i <= 2 * m - k; ++i)
    b.add("dt" + std::to_string(i) + "," + std::to_string(2 * m - k), d[i], dickson_degree(q, i, 2 * m - k));
  return b.finish();
}

GeneratorFamily make_sylow(const FamilyParams& p, const Field& F)
{
  require_m(p);
  const std::size_t m = p.m;
  const std::uint64_t q = F.q();
  VariableSpace S = VariableSpace::symplectic(m);
  Builder b{GeneratorFamily{"sylow", p, {}, {}, {}, usp_group(m, F), std::nullopt,
                            m == 1 ? Structure::PolynomialAlgebra : Structure::CompleteIntersection, std::nullopt}};
  add_xis(b, m, F, 2 * m - 2);
  std::vector<Polynomial> xs;
  for (std::size_t i = 1; i <= m; ++i) {
    Polynomial x = Polynomial::variable(F, S, S.x(i));
    b.add("N(x" + std::to_string(i) + ")", orbit_product_fq(x, xs), upow(q, i - 1));
    xs.push_back(x);
  }
  for (std::size_t i = m; i >= 1; --i)
    b.add("N" + std::to_string(i) + "(y" + std::to_string(i) + ")",
          n_k(Polynomial::variable(F, S, S.y(i)), i, m), upow(q, 2 * m - i));
  return b.finish();
}

GeneratorFamily make_max_para(const FamilyParams& p, const Field& F)
{
  require_k(p);
  const std::size_t m = p.m, k = p.k;
  const std::uint64_t q = F.q();
  VariableSpace S = VariableSpace::symplectic(m);
  Builder b{GeneratorFamily{"max_para", p, {}, {}, {}, parabolic_g_k(m, k, F), std::nullopt, Structure::Unknown,
                            std::nullopt}};
  add_xis(b, m, F, 2 * m - 1);
  auto L = pinned_list(m, F);
  auto full = dickson_of(L, F, S);
  for (std::size_t i = 1; i <= k; ++i)
    b.add("d" + std::to_string(i) + "," + std::to_string(2 * m), full[i], dickson_degree(q, i, 2 * m));
  std::vector<Polynomial> head(L.begin(), L.begin() + static_cast<std::ptrdiff_t>(k));
  auto dk = dickson_of(head, F, S);
  for (std::size_t i = 1; i <= k; ++i)
    b.add("dt" + std::to_string(i) + "," + std::to_string(k), dk[i], dickson_degree(q, i, k));
  std::vector<Polynomial> w(L.begin(), L.begin() + static_cast<std::ptrdiff_t>(2 * m - k));
  auto dw = dickson_of(w, F, S);
  for (std::size_t i = 1; i <= m - k; ++i)
    b.add("dt" + std::to_string(i) + "," + std::to_string(2 * m - k), dw[i], dickson_degree(q, i, 2 * m - k));
  return b.finish();
}

GeneratorFamily make_eapg(const FamilyParams& p, const Field& F)
{
  require_m(p);
  const std::size_t m = p.m;
  const std::uint64_t q = F.q();
  VariableSpace S = VariableSpace::symplectic(m);
  MatrixGroup G = p_k_subgroup(m, m, F);
  Builder b{GeneratorFamily{"eapg", p, {}, {}, {}, G, std::nullopt,
                            m == 1 ? Structure::PolynomialAlgebra : Structure::CompleteIntersection, std::nullopt}};
  for (std::size_t i = 1; i <= m; ++i)
    b.add(idx("x", i), Polynomial::variable(F, S, S.x(i)), 1);
  add_xis(b, m, F, m - 1);
  AdditivePolynomial N = n_k_additive(m, m, F);
  for (std::size_t i = 1; i <= m; ++i)
    b.add("N" + std::to_string(m) + "(y" + std::to_string(i) + ")", N(Polynomial::variable(F, S, S.y(i))),
          upow(q, m));
  if (m == 2)
    b.fam.relation_degrees = std::vector<std::uint64_t>{q * (q + 1)};
  return b.finish();
}

GeneratorFamily make_fqexam(const FamilyParams& p, const Field& F)
{
  if (p.m < 1 || p.n < 1)
    fail(ErrorKind::InvalidArgument, "fqexam needs m, n >= 1");
  const std::size_t m = p.m, n = p.n;
  const std::uint64_t q = F.q();
  VariableSpace S = VariableSpace::gluing(m, n);
  GluingGroup gl = glue(MatrixGroup::trivial(F, m), MatrixGroup::trivial(F, n), full_hom_module(m, n, F));
  Builder b{GeneratorFamily{"fqexam", p, {}, {}, {}, gl.realized, gl, Structure::PolynomialAlgebra, std::nullopt}};
  for (std::size_t i = 1; i <= n; ++i)
    b.add(idx("x", i), Polynomial::variable(F, S, m + i - 1), 1);
  for (std::size_t j = 0; j < m; ++j)
    b.add("N(y" + std::to_string(j + 1) + ")", psi_of_y(j, gl), upow(q, n));
  return b.finish();
}

GeneratorFamily make_u_tilde(const FamilyParams& p, const Field& F)
{
  require_m(p);
  const std::size_t m = p.m;
  const std::int64_t j = p.j;
  const std::uint64_t q = F.q();
  const std::uint64_t aj = static_cast<std::uint64_t>(j < 0 ? -j : j);
  VariableSpace S = VariableSpace::symplectic(m);
  AdditivePolynomial N = n_k_additive(m, m, F);
  Polynomial u(F, S);
  for (std::size_t i = 1; i <= m; ++i) {
    Polynomial x = Polynomial::variable(F, S, S.x(i));
    Polynomial ny = N(Polynomial::variable(F, S, S.y(i)));
    if (j >= 0)
      u += x.q_power(aj) * ny;
    else
      u += x * ny.q_power(aj);
  }
  std::uint64_t deg = j >= 0 ? upow(q, aj) + upow(q, m) : 1 + upow(q, m + aj);
  Builder b{GeneratorFamily{"u_tilde", p, {}, {}, {}, usp_group(m, F), std::nullopt, Structure::Unknown, std::nullopt}};
  b.add("ut" + std::to_string(j), u, deg);
  return b.finish();
}

GeneratorFamily make_parabolic_gl(const FamilyParams& p, const Field& F)
{
  if (p.partition.empty())
    fail(ErrorKind::InvalidArgument, "parabolic_gl needs a partition");
  const auto& part = p.partition;
  std::size_t n = 0;
  for (auto s : part)
    n += s;
  const std::uint64_t q = F.q();
  GluingGroup gl = parabolic_glue(part, F);
  VariableSpace S = VariableSpace::gluing(n, n);
  std::vector<Polynomial> xs, ys;
  for (std::size_t i = 0; i < n; ++i) {
    ys.push_back(Polynomial::variable(F, S, i));
    xs.push_back(Polynomial::variable(F, S, n + i));
  }
  auto degs = kuhn_mitchell_degrees(part, q);
  Builder b{GeneratorFamily{"parabolic_gl", p, {}, {}, {}, gl.realized, gl, Structure::PolynomialAlgebra, std::nullopt}};
  auto h = kuhn_mitchell(xs, part);
  for (std::size_t i = 0; i < h.size(); ++i)
    b.add(idx("h", i + 1), h[i], degs[i]);
  auto f = kuhn_mitchell(ys, part);
  std::size_t pos = 0, start = 0;
  for (std::size_t blk = 0; blk < part.size(); ++blk) {
    std::uint64_t scale = upow(q, n - start);
    for (std::size_t s = 0; s < part[blk]; ++s, ++pos)
      b.add(idx("ft", pos + 1), flag_substitute(f[pos], gl, blk), scale * degs[pos]);
    start += part[blk];
  }
  return b.finish();
}

GeneratorFamily make_diag_cc(const FamilyParams& p, const Field& F)
{
  if (p.n < 1)
    fail(ErrorKind::InvalidArgument, "diag_cc needs n >= 1");
  const std::size_t n = p.n;
  const std::uint64_t q = F.q();
  VariableSpace S = VariableSpace::gluing(n, n);
  GluingGroup gl = diagonal_glue(MatrixGroup::trivial(F, n), scalar_identity_module(n, F));
  Builder b{GeneratorFamily{"diag_cc", p, {}, {}, {}, gl.realized, gl, Structure::Unknown, std::nullopt}};
  auto x = [&](std::size_t i) { return Polynomial::variable(F, S, n + i - 1); };
  auto y = [&](std::size_t i) { return Polynomial::variable(F, S, i - 1); };
  for (std::size_t i = 1; i <= n; ++i)
    b.add(idx("x", i), x(i), 1);
  for (std::size_t j = 2; j <= n; ++j)
    b.add(idx("u", j), y(1) * x(j) - y(j) * x(1), 2);
  b.add("N", y(1).pow(q) - y(1) * x(1).pow(q - 1), q);
  return b.finish();
}

using Maker = GeneratorFamily (*)(const FamilyParams&, const Field&);

const std::vector<std::pair<std::string, Maker>>& makers()
{
  static const std::vector<std::pair<std::string, Maker>> table{
      {"carlisle_kropholler", make_carlisle_kropholler},
      {"stab_sub", make_stab_sub},
      {"sylow", make_sylow},
      {"max_para", make_max_para},
      {"eapg", make_eapg},
      {"fqexam", make_fqexam},
      {"u_tilde", make_u_tilde},
      {"parabolic_gl", make_parabolic_gl},
      {"diag_cc", make_diag_cc},
  };
  return table;
}

} // namespace

GeneratorFamily family(const std::string& name, const FamilyParams& params, const Field& field)
{
  for (const auto& [n, make] : makers())
    if (n == name)
      return make(params, field);
  fail(ErrorKind::InvalidArgument, "unknown family: " + name);
}

std::vector<std::string> family_names()
{
  std::vector<std::string> out;
  for (const auto& [n, make] : makers())
    out.push_back(n);
  return out;
}

} // namespace modinv
