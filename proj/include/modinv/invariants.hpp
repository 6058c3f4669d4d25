#ifndef MODINV_INVARIANTS_HPP
#define MODINV_INVARIANTS_HPP

#include <optional>
#include <string>
#include <vector>

#include "modinv/gluing.hpp"

namespace modinv {

/// A(t) = sum_j coeffs[j] t^(p^j).
struct AdditivePolynomial {
  std::vector<Polynomial> coeffs;
  Polynomial operator()(const Polynomial& t) const;
};

/// prod_{u in span_Fp(basis)} (t + u) as an additive polynomial in t.
/// Throws InvalidArgument if the basis is F_p-dependent.
AdditivePolynomial span_product(const std::vector<Polynomial>& fp_basis, const Field& field,
                                const VariableSpace& space);
/// F_p-basis {c v} of the F_q-span of the given polynomials.
std::vector<Polynomial> fp_expand(const std::vector<Polynomial>& fq_basis);

/// prod_{u in span_Fp(U)} (l + u).
Polynomial orbit_product(const Polynomial& l, const std::vector<Polynomial>& fp_basis);
/// Same, but U is given by an F_q-basis.
Polynomial orbit_product_fq(const Polynomial& l, const std::vector<Polynomial>& fq_basis);

struct OrbitProduct {
  Polynomial product;
  std::vector<Polynomial> basis;
};
/// Multiplies the distinct elements of the orbit of l directly, after checking
/// that the orbit is l plus an F_p-subspace.
OrbitProduct orbit_product_under_group(const Polynomial& l, const MatrixGroup& group);

/// Product in a balanced tree.
Polynomial product_tree(const std::vector<Polynomial>& factors, const Field& field, const VariableSpace& space);

/// Dickson invariants d_0..d_n of the F_q-span of n independent polynomials:
/// d_i is the coefficient of t^(q^(n-i)) in prod_v (t + v).
std::vector<Polynomial> dickson_of(const std::vector<Polynomial>& vs, const Field& field,
                                   const VariableSpace& space);
/// The same through the Moore determinant, dividing exactly by L_n.
std::vector<Polynomial> moore_dickson_of(const std::vector<Polynomial>& vs, const Field& field,
                                         const VariableSpace& space);
/// Determinant of a square matrix of polynomials by cofactor expansion.
Polynomial poly_determinant(const std::vector<std::vector<Polynomial>>& rows);

/// d_{i,n} in x1..xn.
Polynomial dickson(std::size_t n, const Field& field, std::size_t i);
Polynomial moore_dickson(std::size_t n, const Field& field, std::size_t i);

/// The list x1..xm, ym..y1 in the symplectic space of rank m.
std::vector<Polynomial> pinned_list(std::size_t m, const Field& field);
/// Dickson invariant d~_{i,l} of the first l entries of the pinned list.
Polynomial partial_dickson(std::size_t i, std::size_t l, std::size_t m, const Field& field);

/// xi_i for i >= 1; xi_0 = 0.
Polynomial xi(std::size_t m, const Field& field, std::int64_t i);
/// xi_i^(q^j), extended to i <= 0 by xi_0 = 0 and xi_{-i}^(q^j) = -xi_i^(q^(j-i)).
Polynomial xi_power(std::size_t m, const Field& field, std::int64_t i, std::int64_t j);

/// N_k as an additive polynomial: the product over W_k, the span of the first
/// 2m-k entries of the pinned list.
AdditivePolynomial n_k_additive(std::size_t k, std::size_t m, const Field& field);
Polynomial n_k(const Polynomial& t, std::size_t k, std::size_t m);

enum class Structure { PolynomialAlgebra, CompleteIntersection, Unknown };
const char* to_string(Structure s);

struct FamilyParams {
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::int64_t j = 0;
  std::vector<std::size_t> partition;
};

struct GeneratorFamily {
  std::string name;
  FamilyParams params;
  std::vector<std::string> labels;
  std::vector<Polynomial> polys;
  std::vector<std::uint64_t> degrees;
  MatrixGroup group;
  std::optional<GluingGroup> gluing;
  Structure structure = Structure::Unknown;
  /// Present when the relation degrees are known.
  std::optional<std::vector<std::uint64_t>> relation_degrees;
};

/// Builds a named generating family and checks every member against every
/// generator of its group (InvarianceFailure otherwise). Names:
/// carlisle_kropholler, stab_sub, sylow, max_para, eapg, fqexam, u_tilde,
/// parabolic_gl, diag_cc.
GeneratorFamily family(const std::string& name, const FamilyParams& params, const Field& field);
std::vector<std::string> family_names();

/// Replaces each y_j by the product of its orbit under the gluing's module.
Polynomial psi_substitute(const Polynomial& f, const GluingGroup& gluing);
/// psi(y_j) alone (j is 0-based).
Polynomial psi_of_y(std::size_t j, const GluingGroup& gluing);
/// Parabolic gluings: substitutes N_b(y_k) for every y_k, where N_b is the
/// product over the x-variables of flag blocks b, b+1, ... (b is 0-based).
Polynomial flag_substitute(const Polynomial& f, const GluingGroup& gluing, std::size_t block);

/// Kuhn-Mitchell generators of the flag stabilizer P_F acting on the given
/// variables (in block order).
std::vector<Polynomial> kuhn_mitchell(const std::vector<Polynomial>& vars, const std::vector<std::size_t>& partition);
std::vector<std::uint64_t> kuhn_mitchell_degrees(const std::vector<std::size_t>& partition, std::uint64_t q);

} // namespace modinv

#endif // MODINV_INVARIANTS_HPP
