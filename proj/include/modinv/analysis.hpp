#ifndef MODINV_ANALYSIS_HPP
#define MODINV_ANALYSIS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "modinv/invariants.hpp"

namespace modinv {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Skipped };
const char* to_string(Status s);

struct VerificationReport {
  std::string check;
  Json params = Json::object();
  Status status = Status::Pass;
  /// Counterexample for failures; reason for skips.
  std::string witness;
  std::string detail;
  double millis = 0;

  Json to_json() const;
};

VerificationReport pass_report(std::string check, Json params, std::string detail = {});
/// Throws InvalidArgument for an empty witness: failures must carry one.
VerificationReport fail_report(std::string check, Json params, std::string witness);
VerificationReport skip_report(std::string check, Json params, std::string reason);

/// Sum of f.g over all elements; throws InvalidArgument unless G is enumerated.
Polynomial transfer(const Polynomial& f, const MatrixGroup& g);
bool is_invariant(const Polynomial& f, const MatrixGroup& g);

/// Checks Tr^G(f) = Tr^{G1 x G2}(Tr^M(f)).
VerificationReport transfer_factorization_check(const Polynomial& f, const GluingGroup& gluing,
                                                std::uint64_t cap = kDefaultCap);

/// Degree-d monomials of the space, in grevlex-descending order.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, std::uint32_t d);

/// A row-reduced spanning set of a space of homogeneous polynomials of one degree.
class DegreeSpan {
public:
  DegreeSpan(Field field, VariableSpace space, std::uint32_t degree);
  /// True when f was independent of what was already there.
  bool insert(const Polynomial& f);
  bool contains(const Polynomial& f) const;
  std::size_t dimension() const { return rows_.size(); }
  std::vector<Polynomial> basis() const;

private:
  std::vector<std::uint32_t> coords(const Polynomial& f) const;
  void reduce(std::vector<std::uint32_t>& v) const;
  Field field_;
  VariableSpace space_;
  std::uint32_t degree_;
  std::vector<Monomial> monos_;
  std::vector<std::vector<std::uint32_t>> rows_;
  std::vector<std::size_t> pivots_;
};

struct TransferImage {
  std::uint32_t degree;
  std::vector<Polynomial> basis;
};

/// Row spaces of {Tr^G(monomial)} for degrees 0..D.
std::vector<TransferImage> transfer_image_basis(const MatrixGroup& g, const VariableSpace& space, std::uint32_t max_degree);
/// Every basis element is divisible by tau, and tau lies in the image at its own degree.
VerificationReport principal_check(const MatrixGroup& g, const VariableSpace& space, const Polynomial& tau,
                                   std::uint32_t max_degree);

/// Kernel dimension of f -> (f.g - f)_g on degree-d forms, g over the generators.
std::uint64_t invariant_dimension(const MatrixGroup& g, const VariableSpace& space, std::uint32_t d,
                                  std::uint64_t monomial_budget = 20000);

struct HilbertClaim {
  std::vector<std::uint64_t> generator_degrees;
  std::vector<std::uint64_t> relation_degrees;

  /// Coefficients 0..D of prod(1 - t^e) / prod(1 - t^d); entries may be negative.
  std::vector<std::int64_t> series(std::uint32_t max_degree) const;
};

VerificationReport hilbert_check(const HilbertClaim& claim, const MatrixGroup& g, const VariableSpace& space,
                                 std::uint32_t max_degree);

/// Polynomial-algebra families only: the product of the degrees equals the group order.
VerificationReport degree_product_check(const GeneratorFamily& family, const MatrixGroup& group,
                                        std::uint64_t cap = kDefaultCap);

/// Exact polynomial identities; see identity_names() for the list.
VerificationReport identity_suite(const std::string& name, const Json& params);
std::vector<std::string> identity_names();

/// Compares two sides; on failure the witness is the nonzero difference.
VerificationReport compare_sides(const std::string& check, const Json& params, const Polynomial& lhs,
                                 const Polynomial& rhs);

} // namespace modinv

#endif // MODINV_ANALYSIS_HPP
