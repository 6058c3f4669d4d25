#include "modinv/gfq.hpp"

#include <cctype>
#include <sstream>

namespace modinv {

const char* to_string(ErrorKind kind)
{
  switch (kind) {
  case ErrorKind::InvalidArgument: return "invalid_argument";
  case ErrorKind::FieldMismatch: return "field_mismatch";
  case ErrorKind::DivisionByZero: return "division_by_zero";
  case ErrorKind::InexactDivision: return "inexact_division";
  case ErrorKind::DimensionMismatch: return "dimension_mismatch";
  case ErrorKind::CapExceeded: return "cap_exceeded";
  case ErrorKind::ClosureViolation: return "closure_violation";
  case ErrorKind::InvarianceFailure: return "invariance_failure";
  case ErrorKind::Parse: return "parse";
  case ErrorKind::Budget: return "budget";
  case ErrorKind::Unsupported: return "unsupported";
  }
  return "unknown";
}

struct Field::Data {
  std::uint32_t p = 0;
  std::uint32_t r = 0;
  std::uint32_t q = 0;
  std::vector<std::uint32_t> modulus;
  std::vector<std::uint16_t> add;
  std::vector<std::uint16_t> mul;
  std::vector<std::uint16_t> neg;
  std::vector<std::uint16_t> inv;
  std::vector<std::uint16_t> frob;
  std::uint32_t primitive = 1;
};

bool is_prime(std::uint64_t n)
{
  if (n < 2)
    return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0)
      return false;
  return true;
}

std::uint64_t ipow(std::uint64_t base, std::uint64_t e)
{
  std::uint64_t result = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (base != 0 && result > UINT64_MAX / base)
      fail(ErrorKind::InvalidArgument, "integer power overflows 64 bits");
    result *= base;
  }
  return result;
}

std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q)
{
  if (q < 2)
    fail(ErrorKind::InvalidArgument, "field order must be a prime power, got " + std::to_string(q));
  std::uint64_t p = 2;
  while (q % p != 0)
    ++p;
  std::uint32_t r = 0;
  std::uint64_t rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++r;
  }
  if (rest != 1)
    fail(ErrorKind::InvalidArgument, "field order must be a prime power, got " + std::to_string(q));
  return {static_cast<std::uint32_t>(p), r};
}

namespace {

using Coeffs = std::vector<std::uint32_t>;

// Polynomials over GF(p), low degree first, trimmed.
void trim(Coeffs& a)
{
  while (!a.empty() && a.back() == 0)
    a.pop_back();
}

Coeffs poly_mod(Coeffs a, const Coeffs& m, std::uint32_t p)
{
  trim(a);
  std::size_t dm = m.size() - 1;
  std::uint32_t lead_inv = 1;
  for (std::uint32_t x = 1; x < p; ++x)
    if ((x * m.back()) % p == 1)
      lead_inv = x;
  while (a.size() > dm) {
    std::uint32_t c = (a.back() * lead_inv) % p;
    std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i)
      a[shift + i] = (a[shift + i] + p * p - c * m[i] % p) % p;
    trim(a);
  }
  return a;
}

bool irreducible(const Coeffs& m, std::uint32_t p)
{
  std::size_t r = m.size() - 1;
  if (r == 1)
    return true;
  // Trial division by every monic polynomial of degree 1..r/2.
  for (std::size_t d = 1; d <= r / 2; ++d) {
    std::uint64_t count = ipow(p, d);
    for (std::uint64_t code = 0; code < count; ++code) {
      Coeffs div(d + 1, 0);
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        div[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      div[d] = 1;
      if (poly_mod(m, div, p).empty())
        return false;
    }
  }
  return true;
}

std::shared_ptr<const Field::Data> make_data(std::uint32_t p, Coeffs modulus)
{
  auto d = std::make_shared<Field::Data>();
  d->p = p;
  d->r = static_cast<std::uint32_t>(modulus.size() - 1);
  d->q = static_cast<std::uint32_t>(ipow(p, d->r));
  d->modulus = std::move(modulus);
  const std::uint32_t q = d->q;
  const std::uint32_t r = d->r;

  auto to_coords = [&](std::uint32_t a) {
    Coeffs c(r, 0);
    for (std::uint32_t i = 0; i < r; ++i) {
      c[i] = a % p;
      a /= p;
    }
    return c;
  };
  auto to_index = [&](const Coeffs& c) {
    std::uint32_t a = 0;
    for (std::uint32_t i = r; i-- > 0;)
      a = a * p + (i < c.size() ? c[i] : 0);
    return a;
  };

  d->add.resize(static_cast<std::size_t>(q) * q);
  d->mul.resize(static_cast<std::size_t>(q) * q);
  d->neg.resize(q);
  d->inv.assign(q, 0);
  d->frob.resize(q);
  std::vector<Coeffs> cs(q);
  for (std::uint32_t a = 0; a < q; ++a)
    cs[a] = to_coords(a);
  for (std::uint32_t a = 0; a < q; ++a) {
    Coeffs n(r);
    for (std::uint32_t i = 0; i < r; ++i)
      n[i] = (p - cs[a][i]) % p;
    d->neg[a] = static_cast<std::uint16_t>(to_index(n));
    for (std::uint32_t b = 0; b < q; ++b) {
      Coeffs s(r);
      for (std::uint32_t i = 0; i < r; ++i)
        s[i] = (cs[a][i] + cs[b][i]) % p;
      d->add[a * q + b] = static_cast<std::uint16_t>(to_index(s));
      Coeffs prod(2 * r, 0);
      for (std::uint32_t i = 0; i < r; ++i)
        for (std::uint32_t j = 0; j < r; ++j)
          prod[i + j] = (prod[i + j] + cs[a][i] * cs[b][j]) % p;
      d->mul[a * q + b] = static_cast<std::uint16_t>(to_index(poly_mod(prod, d->modulus, p)));
    }
  }
  for (std::uint32_t a = 1; a < q; ++a)
    for (std::uint32_t b = 1; b < q; ++b)
      if (d->mul[a * q + b] == 1)
        d->inv[a] = static_cast<std::uint16_t>(b);
  for (std::uint32_t a = 0; a < q; ++a) {
    std::uint32_t x = 1;
    for (std::uint32_t i = 0; i < p; ++i)
      x = d->mul[x * q + a];
    d->frob[a] = static_cast<std::uint16_t>(x);
  }
  for (std::uint32_t a = 1; a < q; ++a) {
    std::uint32_t x = a;
    std::uint32_t order = 1;
    while (x != 1) {
      x = d->mul[x * q + a];
      ++order;
    }
    if (order == q - 1) {
      d->primitive = a;
      break;
    }
  }
  return d;
}

} // namespace

Field Field::build(std::uint32_t p, std::uint32_t r)
{
  if (!is_prime(p))
    fail(ErrorKind::InvalidArgument, "field characteristic must be prime, got " + std::to_string(p));
  if (r == 0)
    fail(ErrorKind::InvalidArgument, "field degree must be positive");
  if (ipow(p, r) > max_order)
    fail(ErrorKind::InvalidArgument, "field order exceeds " + std::to_string(max_order));
  if (r == 1)
    return Field(make_data(p, {0, 1}));
  // Candidates ordered by (c0, c1, ..., c_{r-1}) with c0 most significant.
  std::uint64_t count = ipow(p, r);
  for (std::uint64_t code = 0; code < count; ++code) {
    Coeffs m(r + 1, 0);
    std::uint64_t c = code;
    for (std::uint32_t i = r; i-- > 0;) {
      m[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    m[r] = 1;
    if (m[0] != 0 && irreducible(m, p))
      return Field(make_data(p, std::move(m)));
  }
  fail(ErrorKind::InvalidArgument, "no irreducible polynomial found");
}

Field Field::with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus)
{
  if (!is_prime(p))
    fail(ErrorKind::InvalidArgument, "field characteristic must be prime, got " + std::to_string(p));
  if (modulus.size() < 2 || modulus.back() != 1)
    fail(ErrorKind::InvalidArgument, "modulus must be monic of degree >= 1");
  for (auto c : modulus)
    if (c >= p)
      fail(ErrorKind::InvalidArgument, "modulus coefficients must lie in [0, p)");
  if (ipow(p, modulus.size() - 1) > max_order)
    fail(ErrorKind::InvalidArgument, "field order exceeds " + std::to_string(max_order));
  if (modulus.size() > 2 && (modulus[0] == 0 || !irreducible(modulus, p)))
    fail(ErrorKind::InvalidArgument, "modulus is not irreducible");
  return Field(make_data(p, std::move(modulus)));
}

Field Field::from_order(std::uint64_t q)
{
  auto [p, r] = prime_power(q);
  return build(p, r);
}

std::uint32_t Field::p() const { return d_->p; }
std::uint32_t Field::r() const { return d_->r; }
std::uint32_t Field::q() const { return d_->q; }
const std::vector<std::uint32_t>& Field::modulus() const { return d_->modulus; }

std::uint32_t Field::add(std::uint32_t a, std::uint32_t b) const { return d_->add[a * d_->q + b]; }
std::uint32_t Field::sub(std::uint32_t a, std::uint32_t b) const { return d_->add[a * d_->q + d_->neg[b]]; }
std::uint32_t Field::mul(std::uint32_t a, std::uint32_t b) const { return d_->mul[a * d_->q + b]; }
std::uint32_t Field::neg(std::uint32_t a) const { return d_->neg[a]; }

std::uint32_t Field::inv(std::uint32_t a) const
{
  if (a == 0)
    fail(ErrorKind::DivisionByZero, "inverse of zero in " + describe());
  return d_->inv[a];
}

std::uint32_t Field::pow(std::uint32_t a, std::uint64_t e) const
{
  if (e == 0)
    return 1;
  if (a == 0)
    return 0;
  e %= (d_->q - 1);
  std::uint32_t result = 1;
  std::uint32_t base = a;
  while (e > 0) {
    if (e & 1)
      result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

std::uint32_t Field::frob(std::uint32_t a) const { return d_->frob[a]; }

std::uint32_t Field::frob(std::uint32_t a, std::uint64_t k) const
{
  k %= d_->r;
  for (std::uint64_t i = 0; i < k; ++i)
    a = d_->frob[a];
  return a;
}

std::uint32_t Field::from_int(std::int64_t n) const
{
  std::int64_t p = d_->p;
  return static_cast<std::uint32_t>(((n % p) + p) % p);
}

std::uint32_t Field::from_coords(std::span<const std::uint32_t> coords) const
{
  if (coords.size() > d_->r)
    fail(ErrorKind::InvalidArgument, "too many coordinates for " + describe());
  std::uint32_t a = 0;
  for (std::size_t i = coords.size(); i-- > 0;) {
    if (coords[i] >= d_->p)
      fail(ErrorKind::InvalidArgument, "coordinate out of range");
    a = a * d_->p + coords[i];
  }
  return a;
}

std::vector<std::uint32_t> Field::coords(std::uint32_t a) const
{
  std::vector<std::uint32_t> c(d_->r);
  for (std::uint32_t i = 0; i < d_->r; ++i) {
    c[i] = a % d_->p;
    a /= d_->p;
  }
  return c;
}

std::uint32_t Field::generator() const { return d_->r == 1 ? 1 : d_->p; }
std::uint32_t Field::primitive() const { return d_->primitive; }

std::vector<std::uint32_t> Field::fp_basis() const
{
  std::vector<std::uint32_t> basis;
  std::uint32_t b = 1;
  for (std::uint32_t i = 0; i < d_->r; ++i) {
    basis.push_back(b);
    b *= d_->p;
  }
  return basis;
}

std::uint64_t Field::mult_order(std::uint32_t a) const
{
  if (a == 0)
    fail(ErrorKind::InvalidArgument, "zero has no multiplicative order");
  std::uint64_t order = 1;
  for (std::uint32_t x = a; x != 1; x = mul(x, a))
    ++order;
  return order;
}

std::string Field::format(std::uint32_t a) const
{
  if (d_->r == 1)
    return std::to_string(a);
  if (a == 0)
    return "0";
  auto c = coords(a);
  std::string out;
  for (std::uint32_t i = 0; i < d_->r; ++i) {
    if (c[i] == 0)
      continue;
    if (!out.empty())
      out += "+";
    if (i == 0) {
      out += std::to_string(c[i]);
    } else {
      if (c[i] != 1)
        out += std::to_string(c[i]) + "*";
      out += "t";
      if (i > 1)
        out += "^" + std::to_string(i);
    }
  }
  return out;
}

std::uint32_t Field::parse(std::string_view text) const
{
  // Sum of terms "c", "t", "c*t", "t^k", "c*t^k" with optional signs.
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
      ++pos;
  };
  auto bad = [&](const std::string& why) -> std::uint32_t {
    fail(ErrorKind::Parse, "scalar '" + std::string(text) + "' at " + std::to_string(pos) + ": " + why);
  };
  auto number = [&]() -> std::uint64_t {
    std::uint64_t v = 0;
    bool any = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + static_cast<std::uint64_t>(text[pos] - '0');
      if (v > (1ull << 40))
        bad("number too large");
      ++pos;
      any = true;
    }
    if (!any)
      bad("expected a number");
    return v;
  };
  std::uint32_t total = 0;
  bool first = true;
  skip();
  if (pos == text.size())
    bad("empty scalar");
  while (pos < text.size()) {
    skip();
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
      negative = text[pos] == '-';
      ++pos;
      skip();
    } else if (!first) {
      bad("expected '+' or '-'");
    }
    first = false;
    std::uint32_t coeff = 1;
    std::uint64_t power = 0;
    if (pos >= text.size() || (text[pos] != 't' && !std::isdigit(static_cast<unsigned char>(text[pos]))))
      bad("expected a term");
    if (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      coeff = from_int(static_cast<std::int64_t>(number() % d_->p));
      skip();
      if (pos < text.size() && text[pos] == '*') {
        ++pos;
        skip();
        if (pos >= text.size() || text[pos] != 't')
          bad("expected 't'");
      }
    }
    if (pos < text.size() && text[pos] == 't') {
      if (d_->r == 1)
        bad("'t' is not defined in a prime field");
      ++pos;
      power = 1;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip();
        power = number();
      }
    }
    std::uint32_t term = mul(coeff, pow(generator(), power));
    if (power == 0)
      term = coeff;
    total = negative ? sub(total, term) : add(total, term);
    skip();
  }
  return total;
}

std::string Field::describe() const
{
  std::ostringstream os;
  os << "GF(" << d_->q << ")";
  if (d_->r > 1) {
    os << " = GF(" << d_->p << ")[t]/(";
    bool first = true;
    for (std::size_t i = d_->modulus.size(); i-- > 0;) {
      std::uint32_t c = d_->modulus[i];
      if (c == 0)
        continue;
      if (!first)
        os << "+";
      first = false;
      if (i == 0) {
        os << c;
        continue;
      }
      if (c != 1)
        os << c << "*";
      os << "t";
      if (i > 1)
        os << "^" << i;
    }
    os << ")";
  }
  return os.str();
}

Scalar Field::zero() const { return Scalar(*this, 0); }
Scalar Field::one() const { return Scalar(*this, 1); }

Scalar Field::element(std::uint32_t index) const
{
  if (index >= d_->q)
    fail(ErrorKind::InvalidArgument, "element index out of range");
  return Scalar(*this, index);
}

Scalar Field::scalar(std::int64_t n) const { return Scalar(*this, from_int(n)); }

std::vector<Scalar> Field::elements() const
{
  std::vector<Scalar> out;
  out.reserve(d_->q);
  for (std::uint32_t a = 0; a < d_->q; ++a)
    out.emplace_back(*this, a);
  return out;
}

bool Field::operator==(const Field& other) const
{
  if (d_ == other.d_)
    return true;
  return d_->p == other.d_->p && d_->modulus == other.d_->modulus;
}

Scalar::Scalar(Field field, std::uint32_t index)
: field_(std::move(field)), v_(index)
{}

void Scalar::check_same(const Scalar& b) const
{
  if (field_ != b.field_)
    fail(ErrorKind::FieldMismatch, "scalars from " + field_.describe() + " and " + b.field_.describe());
}

Scalar Scalar::operator+(const Scalar& b) const { check_same(b); return Scalar(field_, field_.add(v_, b.v_)); }
Scalar Scalar::operator-(const Scalar& b) const { check_same(b); return Scalar(field_, field_.sub(v_, b.v_)); }
Scalar Scalar::operator*(const Scalar& b) const { check_same(b); return Scalar(field_, field_.mul(v_, b.v_)); }
Scalar Scalar::operator/(const Scalar& b) const { check_same(b); return Scalar(field_, field_.mul(v_, field_.inv(b.v_))); }
Scalar Scalar::operator-() const { return Scalar(field_, field_.neg(v_)); }
Scalar Scalar::inv() const { return Scalar(field_, field_.inv(v_)); }
Scalar Scalar::pow(std::uint64_t e) const { return Scalar(field_, field_.pow(v_, e)); }
Scalar Scalar::frobenius() const { return Scalar(field_, field_.frob(v_)); }

bool Scalar::operator==(const Scalar& b) const
{ return v_ == b.v_ && field_ == b.field_; }

} // namespace modinv
