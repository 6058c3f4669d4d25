#ifndef MODINV_GFQ_HPP
#define MODINV_GFQ_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "modinv/error.hpp"

namespace modinv {

class Scalar;

/// The finite field GF(p^r), realized as GF(p)[t]/(modulus).
///
/// Elements are addressed by an index c0 + c1*p + ... + c_{r-1}*p^{r-1}, where
/// (c0, ..., c_{r-1}) are the coordinates with respect to 1, t, ..., t^{r-1}.
/// Index order is the enumeration order, so 0 and 1 come first.
/// All arithmetic goes through precomputed tables, so q is capped at 1024.
///
/// A Field is a cheap shared handle. Two handles are equal when p, r and the
/// modulus agree.
class Field {
public:
  static constexpr std::uint32_t max_order = 1024;

  /// Uses the lexicographically smallest monic irreducible modulus of degree r
  /// (coefficients compared from the constant term up).
  static Field build(std::uint32_t p, std::uint32_t r);

  /// `modulus` is low-degree-first and must be monic of degree r >= 1.
  static Field with_modulus(std::uint32_t p, std::vector<std::uint32_t> modulus);

  /// Accepts any prime power q.
  static Field from_order(std::uint64_t q);

  std::uint32_t p() const;
  std::uint32_t r() const;
  std::uint32_t q() const;
  const std::vector<std::uint32_t>& modulus() const;

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t neg(std::uint32_t a) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  /// a -> a^p
  std::uint32_t frob(std::uint32_t a) const;
  /// a -> a^(p^k)
  std::uint32_t frob(std::uint32_t a, std::uint64_t k) const;

  /// Image of an integer under Z -> GF(p) -> GF(q).
  std::uint32_t from_int(std::int64_t n) const;
  std::uint32_t from_coords(std::span<const std::uint32_t> coords) const;
  std::vector<std::uint32_t> coords(std::uint32_t a) const;

  /// The class of t; 1 when r = 1.
  std::uint32_t generator() const;
  /// Smallest index generating the multiplicative group.
  std::uint32_t primitive() const;
  /// Indices of 1, t, ..., t^{r-1}: an F_p-basis of the field.
  std::vector<std::uint32_t> fp_basis() const;
  /// Order of a nonzero element in the multiplicative group.
  std::uint64_t mult_order(std::uint32_t a) const;

  /// Integer for prime fields, "c0+c1*t+..." (zero coordinates dropped) otherwise.
  std::string format(std::uint32_t a) const;
  std::uint32_t parse(std::string_view text) const;
  /// e.g. "GF(4) = GF(2)[t]/(t^2+t+1)"
  std::string describe() const;

  Scalar zero() const;
  Scalar one() const;
  Scalar element(std::uint32_t index) const;
  Scalar scalar(std::int64_t n) const;
  /// All q elements in index order.
  std::vector<Scalar> elements() const;

  bool operator==(const Field& other) const;
  bool operator!=(const Field& other) const { return !(*this == other); }

  struct Data;

private:
  explicit Field(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  std::shared_ptr<const Data> d_;
};

/// An element of a Field. Mixing fields in one operation throws FieldMismatch.
class Scalar {
public:
  Scalar(Field field, std::uint32_t index);

  const Field& field() const { return field_; }
  std::uint32_t index() const { return v_; }
  std::vector<std::uint32_t> coords() const { return field_.coords(v_); }
  bool is_zero() const { return v_ == 0; }

  Scalar operator+(const Scalar& b) const;
  Scalar operator-(const Scalar& b) const;
  Scalar operator*(const Scalar& b) const;
  Scalar operator/(const Scalar& b) const;
  Scalar operator-() const;
  Scalar inv() const;
  Scalar pow(std::uint64_t e) const;
  Scalar frobenius() const;

  bool operator==(const Scalar& b) const;
  bool operator!=(const Scalar& b) const { return !(*this == b); }

  std::string to_string() const { return field_.format(v_); }

private:
  void check_same(const Scalar& b) const;
  Field field_;
  std::uint32_t v_;
};

inline Field build_field(std::uint32_t p, std::uint32_t r) { return Field::build(p, r); }
inline Scalar frobenius(const Scalar& a) { return a.frobenius(); }
inline std::vector<Scalar> enumerate_field(const Field& f) { return f.elements(); }

bool is_prime(std::uint64_t n);

/// Returns (p, r) with q = p^r, or throws InvalidArgument.
std::pair<std::uint32_t, std::uint32_t> prime_power(std::uint64_t q);

/// Checked integer power; throws InvalidArgument on 64-bit overflow.
std::uint64_t ipow(std::uint64_t base, std::uint64_t e);

} // namespace modinv

#endif // MODINV_GFQ_HPP
