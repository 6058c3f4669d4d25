#ifndef MODINV_MVPOLY_HPP
#define MODINV_MVPOLY_HPP

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "modinv/gfq.hpp"
#include "modinv/matrix.hpp"

namespace modinv {

constexpr std::size_t kMaxVars = 12;

enum class Convention { Generic, Symplectic, Gluing };

/// Ordered variable names. The order is part of the identity of the space
/// and fixes the monomial order (first variable largest).
class VariableSpace {
public:
  VariableSpace() = default;
  VariableSpace(std::vector<std::string> names, Convention convention = Convention::Generic);

  /// x1, ..., xn
  static VariableSpace generic(std::size_t n, const std::string& prefix = "x");
  /// y1, ..., ym, xm, ..., x1: dual to e1, ..., em, fm, ..., f1.
  static VariableSpace symplectic(std::size_t m);
  /// y1, ..., ym, x1, ..., xn
  static VariableSpace gluing(std::size_t m, std::size_t n);

  std::size_t size() const;
  const std::string& name(std::size_t i) const;
  const std::vector<std::string>& names() const;
  Convention convention() const;
  /// Index of a name, or -1.
  int index_of(std::string_view name) const;

  /// Symplectic spaces only.
  std::size_t y(std::size_t i) const;
  std::size_t x(std::size_t i) const;

  bool operator==(const VariableSpace& other) const;
  bool operator!=(const VariableSpace& other) const { return !(*this == other); }

private:
  struct Data;
  std::shared_ptr<const Data> d_;
};

struct Monomial {
  std::array<std::uint32_t, kMaxVars> e{};
  std::uint32_t deg = 0;

  static Monomial variable(std::size_t i, std::uint32_t power = 1);
  Monomial operator*(const Monomial& b) const;
  bool divides(const Monomial& b) const;
  /// b / *this, assuming divides(b).
  Monomial quotient_of(const Monomial& b) const;
  bool operator==(const Monomial& b) const { return e == b.e; }
  bool operator!=(const Monomial& b) const { return e != b.e; }

  template <typename H>
  friend H AbslHashValue(H h, const Monomial& m)
  { return H::combine(std::move(h), m.e); }
};

/// Graded reverse lexicographic comparison: true when a > b.
bool grevlex_greater(const Monomial& a, const Monomial& b);

struct Term {
  Monomial m;
  std::uint32_t c;
};

/// Sparse polynomial. Terms are kept strictly decreasing in grevlex order
/// with nonzero coefficients, so equality is structural.
class Polynomial {
public:
  static constexpr std::int64_t kZeroDegree = -1;

  Polynomial(Field field, VariableSpace space);

  static Polynomial constant(const Field& field, const VariableSpace& space, std::uint32_t c);
  static Polynomial variable(const Field& field, const VariableSpace& space, std::size_t i);
  static Polynomial monomial(const Field& field, const VariableSpace& space, const Monomial& m,
                             std::uint32_t c = 1);
  /// Terms in any order; duplicates are summed and zeros dropped.
  static Polynomial from_terms(const Field& field, const VariableSpace& space, std::vector<Term> terms);

  const Field& field() const { return field_; }
  const VariableSpace& space() const { return space_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  std::int64_t degree() const;
  bool is_homogeneous() const;
  const Term& leading_term() const;
  std::uint32_t coefficient(const Monomial& m) const;

  Polynomial operator+(const Polynomial& b) const;
  Polynomial operator-(const Polynomial& b) const;
  Polynomial operator*(const Polynomial& b) const;
  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& b);
  Polynomial& operator-=(const Polynomial& b);
  Polynomial& operator*=(const Polynomial& b);
  Polynomial scaled(std::uint32_t c) const;
  Polynomial times_monomial(const Monomial& m, std::uint32_t c) const;
  Polynomial pow(std::uint64_t e) const;
  /// f^(p^k), computed termwise.
  Polynomial frobenius_power(std::uint64_t k) const;
  /// f^(q^k).
  Polynomial q_power(std::uint64_t k) const;

  std::uint32_t evaluate(const std::vector<std::uint32_t>& point) const;

  bool operator==(const Polynomial& b) const;
  bool operator!=(const Polynomial& b) const { return !(*this == b); }

  std::string to_string() const;

private:
  void check_compatible(const Polynomial& b, const char* op) const;
  Field field_;
  VariableSpace space_;
  std::vector<Term> terms_;
};

struct DivisionResult {
  Polynomial quotient;
  Polynomial remainder;
};

/// Division with remainder by a single polynomial under grevlex.
DivisionResult divide(const Polynomial& f, const Polynomial& g);
/// Throws InexactDivision when g does not divide f, DivisionByZero for g = 0.
Polynomial exact_divide(const Polynomial& f, const Polynomial& g);

/// Replaces variable i by images[i]. All images share one space, which
/// becomes the space of the result.
Polynomial substitute(const Polynomial& f, const std::vector<Polynomial>& images);
/// Variables absent from the map are left alone.
Polynomial substitute(const Polynomial& f, const std::map<std::size_t, Polynomial>& assignment);

/// Right action f -> f.g, where (f.g)(v) = f(g v). Variable i is replaced by
/// sum_j g(i, j) v_j. Works through an elementary factorization of g.
Polynomial act(const Polynomial& f, const Matrix& g);
/// Same action by direct substitution; slower, kept as an independent check.
Polynomial act_by_substitution(const Polynomial& f, const Matrix& g);

/// The image of the column vector v under g, i.e. g v.
std::vector<std::uint32_t> matvec(const Matrix& g, const std::vector<std::uint32_t>& v);

Polynomial parse_polynomial(const Field& field, const VariableSpace& space, std::string_view text);

/// A degree-one form with zero constant term.
class LinearForm {
public:
  LinearForm(Field field, VariableSpace space, std::vector<std::uint32_t> coeffs);
  static LinearForm variable(const Field& field, const VariableSpace& space, std::size_t i);
  /// Throws InvalidArgument unless f is homogeneous of degree 1 (or zero).
  static LinearForm from_polynomial(const Polynomial& f);

  const Field& field() const { return field_; }
  const VariableSpace& space() const { return space_; }
  const std::vector<std::uint32_t>& coeffs() const { return c_; }
  bool is_zero() const;

  LinearForm operator+(const LinearForm& b) const;
  LinearForm operator-(const LinearForm& b) const;
  LinearForm scaled(std::uint32_t s) const;
  /// Row vector times matrix.
  LinearForm act(const Matrix& g) const;
  Polynomial to_polynomial() const;
  bool operator==(const LinearForm& b) const;

private:
  Field field_;
  VariableSpace space_;
  std::vector<std::uint32_t> c_;
};

} // namespace modinv

#endif // MODINV_MVPOLY_HPP
