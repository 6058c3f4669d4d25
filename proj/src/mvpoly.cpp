#include "modinv/mvpoly.hpp"

#include <algorithm>
#include <cctype>

#include <absl/container/flat_hash_map.h>

namespace modinv {

struct VariableSpace::Data {
  std::vector<std::string> names;
  Convention convention;
  std::size_t m = 0;
};

VariableSpace::VariableSpace(std::vector<std::string> names, Convention convention)
{
  if (names.size() > kMaxVars)
    fail(ErrorKind::InvalidArgument, "at most " + std::to_string(kMaxVars) + " variables are supported");
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& n = names[i];
    if (n.empty() || !std::isalpha(static_cast<unsigned char>(n[0])) || n == "t")
      fail(ErrorKind::InvalidArgument, "bad variable name '" + n + "'");
    for (char ch : n)
      if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
        fail(ErrorKind::InvalidArgument, "bad variable name '" + n + "'");
    for (std::size_t j = 0; j < i; ++j)
      if (names[j] == n)
        fail(ErrorKind::InvalidArgument, "duplicate variable name '" + n + "'");
  }
  auto d = std::make_shared<Data>();
  d->m = convention == Convention::Symplectic ? names.size() / 2 : 0;
  d->names = std::move(names);
  d->convention = convention;
  d_ = std::move(d);
}

VariableSpace VariableSpace::generic(std::size_t n, const std::string& prefix)
{
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i)
    names.push_back(prefix + std::to_string(i));
  return VariableSpace(std::move(names), Convention::Generic);
}

VariableSpace VariableSpace::symplectic(std::size_t m)
{
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i)
    names.push_back("y" + std::to_string(i));
  for (std::size_t i = m; i >= 1; --i)
    names.push_back("x" + std::to_string(i));
  return VariableSpace(std::move(names), Convention::Symplectic);
}

VariableSpace VariableSpace::gluing(std::size_t m, std::size_t n)
{
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= m; ++i)
    names.push_back("y" + std::to_string(i));
  for (std::size_t i = 1; i <= n; ++i)
    names.push_back("x" + std::to_string(i));
  return VariableSpace(std::move(names), Convention::Gluing);
}

std::size_t VariableSpace::size() const { return d_ ? d_->names.size() : 0; }
const std::string& VariableSpace::name(std::size_t i) const { return d_->names.at(i); }

const std::vector<std::string>& VariableSpace::names() const
{
  static const std::vector<std::string> empty;
  return d_ ? d_->names : empty;
}

Convention VariableSpace::convention() const { return d_ ? d_->convention : Convention::Generic; }

int VariableSpace::index_of(std::string_view name) const
{
  const auto& ns = names();
  for (std::size_t i = 0; i < ns.size(); ++i)
    if (ns[i] == name)
      return static_cast<int>(i);
  return -1;
}

std::size_t VariableSpace::y(std::size_t i) const
{
  if (convention() != Convention::Symplectic || i < 1 || i > d_->m)
    fail(ErrorKind::InvalidArgument, "y" + std::to_string(i) + " is not a symplectic variable here");
  return i - 1;
}

std::size_t VariableSpace::x(std::size_t i) const
{
  if (convention() != Convention::Symplectic || i < 1 || i > d_->m)
    fail(ErrorKind::InvalidArgument, "x" + std::to_string(i) + " is not a symplectic variable here");
  return 2 * d_->m - i;
}

bool VariableSpace::operator==(const VariableSpace& other) const
{
  return d_ == other.d_ || names() == other.names();
}

Monomial Monomial::variable(std::size_t i, std::uint32_t power)
{
  if (i >= kMaxVars)
    fail(ErrorKind::InvalidArgument, "variable index out of range");
  Monomial m;
  m.e[i] = power;
  m.deg = power;
  return m;
}

Monomial Monomial::operator*(const Monomial& b) const
{
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i) {
    r.e[i] = e[i] + b.e[i];
    if (r.e[i] < e[i])
      fail(ErrorKind::InvalidArgument, "exponent overflow");
  }
  r.deg = deg + b.deg;
  if (r.deg < deg)
    fail(ErrorKind::InvalidArgument, "degree overflow");
  return r;
}

bool Monomial::divides(const Monomial& b) const
{
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (e[i] > b.e[i])
      return false;
  return true;
}

Monomial Monomial::quotient_of(const Monomial& b) const
{
  Monomial r;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    r.e[i] = b.e[i] - e[i];
  r.deg = b.deg - deg;
  return r;
}

bool grevlex_greater(const Monomial& a, const Monomial& b)
{
  if (a.deg != b.deg)
    return a.deg > b.deg;
  for (std::size_t i = kMaxVars; i-- > 0;)
    if (a.e[i] != b.e[i])
      return a.e[i] < b.e[i];
  return false;
}

namespace {

using Accumulator = absl::flat_hash_map<Monomial, std::uint32_t>;

std::vector<Term> drain(const Field& f, Accumulator& acc)
{
  (void)f;
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (const auto& [m, c] : acc)
    if (c != 0)
      terms.push_back({m, c});
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grevlex_greater(a.m, b.m); });
  return terms;
}

void accumulate(const Field& f, Accumulator& acc, const Monomial& m, std::uint32_t c)
{
  auto [it, inserted] = acc.try_emplace(m, c);
  if (!inserted)
    it->second = f.add(it->second, c);
}

std::uint32_t checked_mul(std::uint32_t a, std::uint64_t b)
{
  std::uint64_t r = static_cast<std::uint64_t>(a) * b;
  if (r > UINT32_MAX)
    fail(ErrorKind::InvalidArgument, "exponent overflow");
  return static_cast<std::uint32_t>(r);
}

} // namespace

Polynomial::Polynomial(Field field, VariableSpace space)
: field_(std::move(field)), space_(std::move(space))
{}

Polynomial Polynomial::constant(const Field& field, const VariableSpace& space, std::uint32_t c)
{
  Polynomial p(field, space);
  if (c != 0)
    p.terms_.push_back({Monomial{}, c});
  return p;
}

Polynomial Polynomial::variable(const Field& field, const VariableSpace& space, std::size_t i)
{
  if (i >= space.size())
    fail(ErrorKind::InvalidArgument, "variable index out of range");
  return monomial(field, space, Monomial::variable(i), 1);
}

Polynomial Polynomial::monomial(const Field& field, const VariableSpace& space, const Monomial& m,
                                std::uint32_t c)
{
  for (std::size_t i = space.size(); i < kMaxVars; ++i)
    if (m.e[i] != 0)
      fail(ErrorKind::InvalidArgument, "monomial uses a variable outside the space");
  Polynomial p(field, space);
  if (c != 0)
    p.terms_.push_back({m, c});
  return p;
}

Polynomial Polynomial::from_terms(const Field& field, const VariableSpace& space, std::vector<Term> terms)
{
  Accumulator acc;
  acc.reserve(terms.size());
  for (const auto& t : terms) {
    for (std::size_t i = space.size(); i < kMaxVars; ++i)
      if (t.m.e[i] != 0)
        fail(ErrorKind::InvalidArgument, "monomial uses a variable outside the space");
    accumulate(field, acc, t.m, t.c);
  }
  Polynomial p(field, space);
  p.terms_ = drain(field, acc);
  return p;
}

bool Polynomial::is_constant() const
{
  return terms_.empty() || (terms_.size() == 1 && terms_[0].m.deg == 0);
}

std::int64_t Polynomial::degree() const
{
  return terms_.empty() ? kZeroDegree : static_cast<std::int64_t>(terms_.front().m.deg);
}

bool Polynomial::is_homogeneous() const
{
  for (const auto& t : terms_)
    if (t.m.deg != terms_.front().m.deg)
      return false;
  return true;
}

const Term& Polynomial::leading_term() const
{
  if (terms_.empty())
    fail(ErrorKind::InvalidArgument, "zero polynomial has no leading term");
  return terms_.front();
}

std::uint32_t Polynomial::coefficient(const Monomial& m) const
{
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& x) { return grevlex_greater(t.m, x); });
  if (it != terms_.end() && it->m == m)
    return it->c;
  return 0;
}

void Polynomial::check_compatible(const Polynomial& b, const char* op) const
{
  if (field_ != b.field_)
    fail(ErrorKind::FieldMismatch, std::string("polynomial ") + op + " across fields");
  if (space_ != b.space_)
    fail(ErrorKind::DimensionMismatch, std::string("polynomial ") + op + " across variable spaces");
}

Polynomial Polynomial::operator+(const Polynomial& b) const
{
  check_compatible(b, "sum");
  Polynomial r(field_, space_);
  r.terms_.reserve(terms_.size() + b.terms_.size());
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < terms_.size() || j < b.terms_.size()) {
    if (j == b.terms_.size() || (i < terms_.size() && grevlex_greater(terms_[i].m, b.terms_[j].m))) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || grevlex_greater(b.terms_[j].m, terms_[i].m)) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      std::uint32_t c = field_.add(terms_[i].c, b.terms_[j].c);
      if (c != 0)
        r.terms_.push_back({terms_[i].m, c});
      ++i;
      ++j;
    }
  }
  return r;
}

Polynomial Polynomial::operator-() const
{
  Polynomial r = *this;
  for (auto& t : r.terms_)
    t.c = field_.neg(t.c);
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& b) const { return *this + (-b); }

Polynomial Polynomial::times_monomial(const Monomial& m, std::uint32_t c) const
{
  Polynomial r(field_, space_);
  if (c == 0)
    return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_)
    r.terms_.push_back({t.m * m, field_.mul(t.c, c)});
  return r;
}

Polynomial Polynomial::operator*(const Polynomial& b) const
{
  check_compatible(b, "product");
  if (terms_.empty() || b.terms_.empty())
    return Polynomial(field_, space_);
  if (b.terms_.size() == 1)
    return times_monomial(b.terms_[0].m, b.terms_[0].c);
  if (terms_.size() == 1)
    return b.times_monomial(terms_[0].m, terms_[0].c);
  Accumulator acc;
  acc.reserve(std::min<std::size_t>(terms_.size() * b.terms_.size(), 1u << 22));
  for (const auto& s : terms_)
    for (const auto& t : b.terms_)
      accumulate(field_, acc, s.m * t.m, field_.mul(s.c, t.c));
  Polynomial r(field_, space_);
  r.terms_ = drain(field_, acc);
  return r;
}

Polynomial& Polynomial::operator+=(const Polynomial& b) { return *this = *this + b; }
Polynomial& Polynomial::operator-=(const Polynomial& b) { return *this = *this - b; }
Polynomial& Polynomial::operator*=(const Polynomial& b) { return *this = *this * b; }

Polynomial Polynomial::scaled(std::uint32_t c) const
{
  Polynomial r(field_, space_);
  if (c == 0)
    return r;
  r.terms_ = terms_;
  for (auto& t : r.terms_)
    t.c = field_.mul(t.c, c);
  return r;
}

Polynomial Polynomial::frobenius_power(std::uint64_t k) const
{
  std::uint64_t factor = ipow(field_.p(), k);
  Polynomial r(field_, space_);
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term u;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      u.m.e[i] = checked_mul(t.m.e[i], factor);
    u.m.deg = checked_mul(t.m.deg, factor);
    u.c = field_.frob(t.c, k);
    r.terms_.push_back(u);
  }
  return r;
}

Polynomial Polynomial::q_power(std::uint64_t k) const { return frobenius_power(k * field_.r()); }

Polynomial Polynomial::pow(std::uint64_t e) const
{
  Polynomial result = constant(field_, space_, 1);
  if (e == 0)
    return result;
  if (terms_.size() == 1) {
    const Term& t = terms_[0];
    Term u;
    for (std::size_t i = 0; i < kMaxVars; ++i)
      u.m.e[i] = checked_mul(t.m.e[i], e);
    u.m.deg = checked_mul(t.m.deg, e);
    u.c = field_.pow(t.c, e);
    Polynomial r(field_, space_);
    r.terms_.push_back(u);
    return r;
  }
  // f^e = prod_k (f^(p^k))^(d_k) over the base-p digits d_k of e.
  std::uint32_t p = field_.p();
  Polynomial frob = *this;
  bool first = true;
  while (e > 0) {
    std::uint64_t d = e % p;
    e /= p;
    if (d > 0) {
      Polynomial piece = constant(field_, space_, 1);
      Polynomial base = frob;
      while (d > 0) {
        if (d & 1)
          piece = piece * base;
        d >>= 1;
        if (d > 0)
          base = base * base;
      }
      result = first ? piece : result * piece;
      first = false;
    }
    if (e > 0)
      frob = frob.frobenius_power(1);
  }
  return result;
}

std::uint32_t Polynomial::evaluate(const std::vector<std::uint32_t>& point) const
{
  if (point.size() != space_.size())
    fail(ErrorKind::DimensionMismatch, "evaluation point has the wrong length");
  std::uint32_t total = 0;
  for (const auto& t : terms_) {
    std::uint32_t v = t.c;
    for (std::size_t i = 0; i < point.size() && v != 0; ++i)
      if (t.m.e[i] != 0)
        v = field_.mul(v, field_.pow(point[i], t.m.e[i]));
    total = field_.add(total, v);
  }
  return total;
}

bool Polynomial::operator==(const Polynomial& b) const
{
  if (field_ != b.field_ || space_ != b.space_ || terms_.size() != b.terms_.size())
    return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].m != b.terms_[i].m || terms_[i].c != b.terms_[i].c)
      return false;
  return true;
}

std::string Polynomial::to_string() const
{
  if (terms_.empty())
    return "0";
  std::string out;
  for (const auto& t : terms_) {
    if (!out.empty())
      out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < space_.size(); ++i) {
      if (t.m.e[i] == 0)
        continue;
      if (!mono.empty())
        mono += "*";
      mono += space_.name(i);
      if (t.m.e[i] > 1)
        mono += "^" + std::to_string(t.m.e[i]);
    }
    std::string coeff = field_.format(t.c);
    if (coeff.find('+') != std::string::npos)
      coeff = "(" + coeff + ")";
    if (mono.empty())
      out += coeff;
    else if (t.c == 1)
      out += mono;
    else
      out += coeff + "*" + mono;
  }
  return out;
}

DivisionResult divide(const Polynomial& f, const Polynomial& g)
{
  if (g.is_zero())
    fail(ErrorKind::DivisionByZero, "division by the zero polynomial");
  if (f.field() != g.field() || f.space() != g.space())
    fail(ErrorKind::FieldMismatch, "division across fields or variable spaces");
  const Field& F = f.field();
  const Term lead = g.leading_term();
  std::uint32_t lead_inv = F.inv(lead.c);
  std::vector<Term> quotient;
  std::vector<Term> remainder;
  Polynomial p = f;
  while (!p.is_zero()) {
    const Term& t = p.leading_term();
    if (lead.m.divides(t.m)) {
      Term qt{lead.m.quotient_of(t.m), F.mul(t.c, lead_inv)};
      quotient.push_back(qt);
      p = p - g.times_monomial(qt.m, qt.c);
    } else {
      remainder.push_back(t);
      p = p - Polynomial::monomial(F, f.space(), t.m, t.c);
    }
  }
  return {Polynomial::from_terms(F, f.space(), std::move(quotient)),
          Polynomial::from_terms(F, f.space(), std::move(remainder))};
}

Polynomial exact_divide(const Polynomial& f, const Polynomial& g)
{
  DivisionResult d = divide(f, g);
  if (!d.remainder.is_zero())
    fail(ErrorKind::InexactDivision, "divisor does not divide; remainder has " +
                                         std::to_string(d.remainder.size()) + " terms");
  return d.quotient;
}

Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images)
{
  if (images.size() != f.space().size())
    fail(ErrorKind::DimensionMismatch, "substitution needs one image per variable");
  if (images.empty())
    return f;
  const Field& F = f.field();
  const VariableSpace& target = images[0].space();
  for (const auto& im : images) {
    if (im.field() != F)
      fail(ErrorKind::FieldMismatch, "substitution image over a different field");
    if (im.space() != target)
      fail(ErrorKind::DimensionMismatch, "substitution images live in different spaces");
  }
  std::vector<std::map<std::uint32_t, Polynomial>> powers(images.size());
  auto power = [&](std::size_t i, std::uint32_t e) -> const Polynomial& {
    auto it = powers[i].find(e);
    if (it == powers[i].end())
      it = powers[i].emplace(e, images[i].pow(e)).first;
    return it->second;
  };
  Accumulator acc;
  for (const auto& t : f.terms()) {
    Polynomial prod = Polynomial::constant(F, target, t.c);
    for (std::size_t i = 0; i < images.size() && !prod.is_zero(); ++i)
      if (t.m.e[i] != 0)
        prod = prod * power(i, t.m.e[i]);
    for (const auto& u : prod.terms())
      accumulate(F, acc, u.m, u.c);
  }
  return Polynomial::from_terms(F, target, drain(F, acc));
}

Polynomial substitute(const Polynomial& f, const std::map<std::size_t, Polynomial>& assignment)
{
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < f.space().size(); ++i) {
    auto it = assignment.find(i);
    if (it == assignment.end())
      images.push_back(Polynomial::variable(f.field(), f.space(), i));
    else
      images.push_back(it->second);
  }
  for (const auto& [i, p] : assignment)
    if (i >= f.space().size())
      fail(ErrorKind::InvalidArgument, "substitution for a variable outside the space");
  return substitute(f, images);
}

namespace {

std::vector<Term> swap_vars(const std::vector<Term>& terms, std::size_t a, std::size_t b)
{
  std::vector<Term> out = terms;
  for (auto& t : out)
    std::swap(t.m.e[a], t.m.e[b]);
  std::sort(out.begin(), out.end(), [](const Term& x, const Term& y) { return grevlex_greater(x.m, y.m); });
  return out;
}

std::uint32_t binom_small(std::uint32_t n, std::uint32_t k, std::uint32_t p)
{
  // n, k < p
  if (k > n)
    return 0;
  std::uint64_t num = 1;
  std::uint64_t den = 1;
  for (std::uint32_t i = 0; i < k; ++i) {
    num = num * (n - i) % p;
    den = den * (i + 1) % p;
  }
  std::uint64_t inv = 1;
  for (std::uint64_t e = p - 2, b = den; e > 0; e >>= 1, b = b * b % p)
    if (e & 1)
      inv = inv * b % p;
  return static_cast<std::uint32_t>(num * inv % p);
}

// v_a -> v_a + c v_b, expanding each power by Lucas' theorem.
std::vector<Term> transvect(const Field& F, const std::vector<Term>& terms, std::size_t a, std::size_t b,
                            std::uint32_t c)
{
  const std::uint32_t p = F.p();
  Accumulator acc;
  acc.reserve(terms.size() * 2);
  std::vector<std::uint32_t> digits;
  for (const auto& t : terms) {
    std::uint32_t ea = t.m.e[a];
    if (ea == 0) {
      accumulate(F, acc, t.m, t.c);
      continue;
    }
    digits.clear();
    for (std::uint32_t x = ea; x > 0; x /= p)
      digits.push_back(x % p);
    // Enumerate k digit-wise below ea.
    std::vector<std::uint32_t> kd(digits.size(), 0);
    while (true) {
      std::uint32_t k = 0;
      std::uint32_t coeff = t.c;
      for (std::size_t i = digits.size(); i-- > 0;) {
        k = k * p + kd[i];
        coeff = F.mul(coeff, F.from_int(binom_small(digits[i], kd[i], p)));
      }
      if (coeff != 0) {
        Monomial m = t.m;
        m.e[a] = ea - k;
        m.e[b] += k;
        if (m.e[b] < k)
          fail(ErrorKind::InvalidArgument, "exponent overflow");
        accumulate(F, acc, m, F.mul(coeff, F.pow(c, k)));
      }
      std::size_t i = 0;
      while (i < kd.size() && kd[i] == digits[i]) {
        kd[i] = 0;
        ++i;
      }
      if (i == kd.size())
        break;
      ++kd[i];
    }
  }
  return drain(F, acc);
}

} // namespace

Polynomial act(const Polynomial& f, const Matrix& g)
{
  if (g.rows() != f.space().size() || !g.is_square())
    fail(ErrorKind::DimensionMismatch, "matrix size " + std::to_string(g.rows()) + " does not match " +
                                           std::to_string(f.space().size()) + " variables");
  if (g.field() != f.field())
    fail(ErrorKind::FieldMismatch, "matrix and polynomial over different fields");
  const Field& F = f.field();
  std::vector<Term> terms = f.terms();
  for (const auto& op : elementary_factors(g)) {
    switch (op.kind) {
    case ElementaryOp::Kind::Swap:
      terms = swap_vars(terms, op.a, op.b);
      break;
    case ElementaryOp::Kind::Scale:
      for (auto& t : terms)
        t.c = F.mul(t.c, F.pow(op.c, t.m.e[op.a]));
      break;
    case ElementaryOp::Kind::AddMultiple:
      terms = transvect(F, terms, op.a, op.b, op.c);
      break;
    }
  }
  Polynomial r(F, f.space());
  return Polynomial::from_terms(F, f.space(), std::move(terms));
}

Polynomial act_by_substitution(const Polynomial& f, const Matrix& g)
{
  if (g.rows() != f.space().size() || !g.is_square())
    fail(ErrorKind::DimensionMismatch, "matrix size does not match the variable count");
  std::vector<Polynomial> images;
  for (std::size_t i = 0; i < g.rows(); ++i)
    images.push_back(LinearForm(f.field(), f.space(), g.row(i)).to_polynomial());
  return substitute(f, images);
}

std::vector<std::uint32_t> matvec(const Matrix& g, const std::vector<std::uint32_t>& v)
{
  if (v.size() != g.cols())
    fail(ErrorKind::DimensionMismatch, "vector length does not match matrix");
  const Field& F = g.field();
  std::vector<std::uint32_t> out(g.rows(), 0);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (std::size_t j = 0; j < g.cols(); ++j)
      out[i] = F.add(out[i], F.mul(g(i, j), v[j]));
  return out;
}

namespace {

class PolyParser {
public:
  PolyParser(const Field& F, const VariableSpace& S, std::string_view text)
  : F_(F), S_(S), s_(text)
  {}

  Polynomial run()
  {
    std::vector<Term> terms;
    skip();
    if (pos_ == s_.size())
      error("empty polynomial");
    bool first = true;
    while (true) {
      skip();
      if (pos_ == s_.size())
        break;
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = peek() == '-';
        ++pos_;
      } else if (!first) {
        error("expected '+' or '-'");
      }
      first = false;
      Term t = term();
      if (negative)
        t.c = F_.neg(t.c);
      terms.push_back(t);
    }
    return Polynomial::from_terms(F_, S_, std::move(terms));
  }

private:
  [[noreturn]] void error(const std::string& why)
  {
    fail(ErrorKind::Parse, "polynomial parse error at position " + std::to_string(pos_) + ": " + why);
  }
  void skip()
  {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
  }
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

  std::uint64_t number()
  {
    skip();
    if (!std::isdigit(static_cast<unsigned char>(peek())))
      error("expected a number");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      v = v * 10 + static_cast<std::uint64_t>(peek() - '0');
      if (v > UINT32_MAX)
        error("number too large");
      ++pos_;
    }
    return v;
  }

  std::uint64_t exponent()
  {
    skip();
    if (peek() != '^')
      return 1;
    ++pos_;
    return number();
  }

  Term term()
  {
    Term t{Monomial{}, 1};
    while (true) {
      skip();
      char ch = peek();
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::uint64_t n = number();
        std::uint64_t e = exponent();
        t.c = F_.mul(t.c, F_.pow(F_.from_int(static_cast<std::int64_t>(n % F_.p())), e));
      } else if (ch == '(') {
        std::size_t close = s_.find(')', pos_);
        if (close == std::string_view::npos)
          error("unbalanced parenthesis");
        std::uint32_t c = F_.parse(s_.substr(pos_ + 1, close - pos_ - 1));
        pos_ = close + 1;
        t.c = F_.mul(t.c, F_.pow(c, exponent()));
      } else if (std::isalpha(static_cast<unsigned char>(ch))) {
        std::size_t start = pos_;
        while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')
          ++pos_;
        std::string_view name = s_.substr(start, pos_ - start);
        std::uint64_t e = exponent();
        int idx = S_.index_of(name);
        if (idx >= 0) {
          if (e > UINT32_MAX - t.m.e[static_cast<std::size_t>(idx)])
            error("exponent too large");
          t.m.e[static_cast<std::size_t>(idx)] += static_cast<std::uint32_t>(e);
          t.m.deg += static_cast<std::uint32_t>(e);
        } else if (name == "t" && F_.r() > 1) {
          t.c = F_.mul(t.c, F_.pow(F_.generator(), e));
        } else {
          pos_ = start;
          error("unknown variable '" + std::string(name) + "'");
        }
      } else {
        error("expected a coefficient or variable");
      }
      skip();
      if (peek() != '*')
        break;
      ++pos_;
    }
    return t;
  }

  const Field& F_;
  const VariableSpace& S_;
  std::string_view s_;
  std::size_t pos_ = 0;
};

} // namespace

Polynomial parse_polynomial(const Field& field, const VariableSpace& space, std::string_view text)
{
  return PolyParser(field, space, text).run();
}

LinearForm::LinearForm(Field field, VariableSpace space, std::vector<std::uint32_t> coeffs)
: field_(std::move(field)), space_(std::move(space)), c_(std::move(coeffs))
{
  if (c_.size() != space_.size())
    fail(ErrorKind::DimensionMismatch, "linear form needs one coefficient per variable");
}

LinearForm LinearForm::variable(const Field& field, const VariableSpace& space, std::size_t i)
{
  std::vector<std::uint32_t> c(space.size(), 0);
  c.at(i) = 1;
  return LinearForm(field, space, std::move(c));
}

LinearForm LinearForm::from_polynomial(const Polynomial& f)
{
  std::vector<std::uint32_t> c(f.space().size(), 0);
  for (const auto& t : f.terms()) {
    if (t.m.deg != 1)
      fail(ErrorKind::InvalidArgument, "not a linear form: " + f.to_string());
    for (std::size_t i = 0; i < c.size(); ++i)
      if (t.m.e[i] == 1)
        c[i] = t.c;
  }
  return LinearForm(f.field(), f.space(), std::move(c));
}

bool LinearForm::is_zero() const
{
  return std::all_of(c_.begin(), c_.end(), [](std::uint32_t x) { return x == 0; });
}

LinearForm LinearForm::operator+(const LinearForm& b) const
{
  std::vector<std::uint32_t> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = field_.add(c_[i], b.c_.at(i));
  return LinearForm(field_, space_, std::move(c));
}

LinearForm LinearForm::operator-(const LinearForm& b) const
{
  std::vector<std::uint32_t> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = field_.sub(c_[i], b.c_.at(i));
  return LinearForm(field_, space_, std::move(c));
}

LinearForm LinearForm::scaled(std::uint32_t s) const
{
  std::vector<std::uint32_t> c(c_.size());
  for (std::size_t i = 0; i < c.size(); ++i)
    c[i] = field_.mul(c_[i], s);
  return LinearForm(field_, space_, std::move(c));
}

LinearForm LinearForm::act(const Matrix& g) const
{
  if (g.rows() != c_.size() || !g.is_square())
    fail(ErrorKind::DimensionMismatch, "matrix size does not match the linear form");
  std::vector<std::uint32_t> c(c_.size(), 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0)
      continue;
    for (std::size_t j = 0; j < c.size(); ++j)
      c[j] = field_.add(c[j], field_.mul(c_[i], g(i, j)));
  }
  return LinearForm(field_, space_, std::move(c));
}

Polynomial LinearForm::to_polynomial() const
{
  std::vector<Term> terms;
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != 0)
      terms.push_back({Monomial::variable(i), c_[i]});
  return Polynomial::from_terms(field_, space_, std::move(terms));
}

bool LinearForm::operator==(const LinearForm& b) const
{
  return field_ == b.field_ && space_ == b.space_ && c_ == b.c_;
}

} // namespace modinv
