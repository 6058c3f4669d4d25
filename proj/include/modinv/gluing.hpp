#ifndef MODINV_GLUING_HPP
#define MODINV_GLUING_HPP

#include <optional>
#include <string>
#include <vector>

#include "modinv/groups.hpp"

namespace modinv {

/// An F_p-basis of a G1/G2 sub-bimodule M of Hom(W2, W1), stored as m x n matrices.
class BimoduleBasis {
public:
  /// Throws InvalidArgument when the matrices are F_p-dependent.
  BimoduleBasis(Field field, std::size_t m, std::size_t n, std::vector<Matrix> mats);

  const Field& field() const { return field_; }
  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  const std::vector<Matrix>& mats() const { return mats_; }
  /// F_p-dimension.
  std::size_t dimension() const { return mats_.size(); }
  BigInt order() const;
  bool contains(const Matrix& phi) const;
  /// All p^dim elements; throws CapExceeded past `cap`.
  std::vector<Matrix> elements(std::uint64_t cap = kDefaultCap) const;

  /// Throws ClosureViolation naming the first generator and basis element
  /// with g1 phi or phi g2 outside M.
  void check_closure(const MatrixGroup& g1, const MatrixGroup& g2) const;
  /// Same for g phi g^{-1}.
  void check_conjugation_closure(const MatrixGroup& g) const;

private:
  Field field_;
  std::size_t m_;
  std::size_t n_;
  std::vector<Matrix> mats_;
  FpSpan span_;
};

BimoduleBasis zero_module(std::size_t m, std::size_t n, const Field& field);
BimoduleBasis full_hom_module(std::size_t m, std::size_t n, const Field& field);
/// Matrices with entries in GF(q_sub) inside the given field.
BimoduleBasis subfield_hom_module(std::size_t m, std::size_t n, std::uint64_t q_sub, const Field& field);
/// Block upper triangular n x n matrices for the flag with the given block sizes.
BimoduleBasis parabolic_module(const std::vector<std::size_t>& partition, const Field& field);
/// Scalar multiples c I, c in the field.
BimoduleBasis scalar_identity_module(std::size_t n, const Field& field);

/// Block upper triangular invertible matrices (the flag stabilizer P_F).
MatrixGroup parabolic_gl_group(const std::vector<std::size_t>& partition, const Field& field);

enum class Flavor { Generic, Subfield, Thin, Parabolic, Diagonal, Singular };
const char* to_string(Flavor f);

struct Triple {
  Matrix g1;
  Matrix phi;
  Matrix g2;
};

/// (g1 g1', g1 phi' + phi g2', g2 g2')
Triple semidirect_mul(const Triple& a, const Triple& b);
Matrix realize(const Triple& t);
Triple split(const Matrix& g, std::size_t m);

struct GluingGroup {
  MatrixGroup g1;
  MatrixGroup g2;
  BimoduleBasis module;
  MatrixGroup realized;
  Flavor flavor = Flavor::Generic;
  /// Singular gluings: columns are the adapted basis in original coordinates
  /// (radical first), and the form in both coordinate systems.
  std::optional<Matrix> basis_change;
  std::optional<FormSpec> form;
  std::optional<FormSpec> adapted_form;
  /// Parabolic gluings: the flag.
  std::vector<std::size_t> partition;

  std::size_t m() const { return module.m(); }
  std::size_t n() const { return module.n(); }
  /// |G1| |M| |G2|, or |G| |M| for diagonal gluings. Needs enumerable factors.
  BigInt expected_order() const;
  /// Each M-generator conjugated by each realized generator lands back in M.
  bool m_is_normal() const;
  /// The realized generators mapped back to the original coordinates.
  std::vector<Matrix> generators_in_original_basis() const;
};

/// Throws ClosureViolation or DimensionMismatch.
GluingGroup glue(const MatrixGroup& g1, const MatrixGroup& g2, const BimoduleBasis& module,
                 Flavor flavor = Flavor::Generic);
GluingGroup diagonal_glue(const MatrixGroup& g, const BimoduleBasis& module);
/// C_{p^r} on its regular module F C_{p^r}, glued to a trivial line through
/// the free F_p C_{p^r} module generated by the first basis vector.
GluingGroup thin_glue_regular(std::uint32_t p, std::uint32_t r, const Field& field);
/// P_F x_{M_F} P_F for the flag of the partition.
GluingGroup parabolic_glue(const std::vector<std::size_t>& partition, const Field& field);
/// Throws InvalidArgument when the form is nondegenerate.
GluingGroup singular_form_group(const FormSpec& form, std::uint64_t cap = kDefaultCap);

} // namespace modinv

#endif // MODINV_GLUING_HPP
