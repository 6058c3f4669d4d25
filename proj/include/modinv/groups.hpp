#ifndef MODINV_GROUPS_HPP
#define MODINV_GROUPS_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "modinv/matrix.hpp"
#include "modinv/mvpoly.hpp"

namespace modinv {

using BigInt = boost::multiprecision::cpp_int;

constexpr std::uint64_t kDefaultCap = 1000000;

/// A group of invertible matrices given by generators, with an optional
/// cached enumeration. Copies share the enumeration.
class MatrixGroup {
public:
  MatrixGroup(Field field, std::size_t dim, std::vector<Matrix> generators, std::string name = "group");
  static MatrixGroup trivial(const Field& field, std::size_t dim);

  const Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& generators() const { return gens_; }
  const std::string& name() const { return name_; }

  void set_claimed_order(BigInt order, std::string formula);
  const std::optional<BigInt>& claimed_order() const { return claimed_; }
  const std::string& order_formula() const { return formula_; }

  /// Breadth-first closure; throws CapExceeded past `cap` elements.
  /// Elements are sorted by their byte key, so the result does not depend on
  /// the order of the generators.
  MatrixGroup enumerated(std::uint64_t cap = kDefaultCap) const;
  bool is_enumerated() const { return static_cast<bool>(enum_); }
  const std::vector<Matrix>& elements() const;
  std::uint64_t order() const;
  bool contains(const Matrix& g) const;

private:
  struct Enumeration;
  Field field_;
  std::size_t dim_;
  std::vector<Matrix> gens_;
  std::string name_;
  std::optional<BigInt> claimed_;
  std::string formula_;
  std::shared_ptr<const Enumeration> enum_;
};

BigInt big_pow(std::uint64_t base, std::uint64_t e);
BigInt gl_order(std::uint64_t n, std::uint64_t q);
BigInt sp_order(std::uint64_t m, std::uint64_t q);
BigInt usp_order(std::uint64_t m, std::uint64_t q);
BigInt unipotent_order(std::uint64_t n, std::uint64_t q);
BigInt pk_order(std::uint64_t m, std::uint64_t k, std::uint64_t q);
BigInt gk_order(std::uint64_t m, std::uint64_t k, std::uint64_t q);
BigInt spstab_order(std::uint64_t m, std::uint64_t k, std::uint64_t q);

/// Gram matrix of the symplectic form on e_1..e_m, f_m..f_1.
Matrix symplectic_gram(const Field& field, std::size_t m);
bool is_symplectic(const Matrix& g);

MatrixGroup gl_group(std::size_t n, const Field& field);
MatrixGroup unipotent_upper(std::size_t n, const Field& field);
MatrixGroup sp_group(std::size_t m, const Field& field);
MatrixGroup usp_group(std::size_t m, const Field& field);
MatrixGroup p_k_subgroup(std::size_t m, std::size_t k, const Field& field);
/// Every element of P_k, built from the free blocks with the corner solved.
std::vector<Matrix> p_k_elements(std::size_t m, std::size_t k, const Field& field);
MatrixGroup parabolic_g_k(std::size_t m, std::size_t k, const Field& field);
/// Pointwise stabilizer of e_1..e_k in Sp_2m: Sp_{2m-2k} acting on the middle, times P_k.
MatrixGroup stabilizer_sp(std::size_t m, std::size_t k, const Field& field);
/// The unipotent groups of the small orthogonal examples.
MatrixGroup o3_example(const Field& field);
MatrixGroup o4_example(const Field& field);
Matrix o3_element(const Field& field, std::uint32_t c);
Matrix o4_element(const Field& field, std::uint32_t c1, std::uint32_t c2);

/// Subgroup of an enumerated group fixing f. The generators returned are a
/// greedily chosen generating subset.
MatrixGroup stabilizer_of_polynomial(const MatrixGroup& group, const Polynomial& f);

enum class FormKind { Alternating, Symmetric, Hermitian, Quadratic };

struct FormSpec {
  FormKind kind;
  std::optional<Matrix> gram;
  std::optional<Polynomial> quadratic;

  static FormSpec alternating(Matrix gram);
  static FormSpec symmetric(Matrix gram);
  static FormSpec hermitian(Matrix gram);
  static FormSpec quadratic_form(Polynomial q);
  std::size_t dim() const;
  const Field& field() const;
};

bool form_preserved(const Matrix& g, const FormSpec& form);

const char* to_string(FormKind kind);

} // namespace modinv

#endif // MODINV_GROUPS_HPP
