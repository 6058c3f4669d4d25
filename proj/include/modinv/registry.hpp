#ifndef MODINV_REGISTRY_HPP
#define MODINV_REGISTRY_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "modinv/analysis.hpp"

namespace modinv {

Json to_json(const Field& f);
Json to_json(const Polynomial& f);
Json to_json(const Matrix& m);
/// Name, dimension, generators and (when present) the claimed order.
Json to_json(const MatrixGroup& g);
Json to_json(const GeneratorFamily& fam);
Polynomial polynomial_from_json(const Json& j);
Matrix matrix_from_json(const Field& field, const Json& rows);

/// "generic:n", "symplectic:m" or "gluing:m,n".
VariableSpace space_from_spec(const std::string& spec);

/// Group tokens: gl(n), u(n), sp(m), usp(m), pk(m,k), gk(m,k), spstab(m,k),
/// o3ex, o4ex, para(partition), trivial(n). Example: {"kind":"pk","m":2,"k":2}.
MatrixGroup group_from_spec(const Field& field, const Json& spec);
/// {"type":"glue","g1":{...},"g2":{...},"module":{"kind":"full"}}, and the
/// types diag, thin, para, singular.
GluingGroup gluing_from_spec(const Field& field, const Json& spec);
FamilyParams family_params_from_json(const Json& j);

struct RunOptions {
  std::uint64_t cap = kDefaultCap;
  std::uint32_t degree_bound = 10;
  std::uint64_t seed = 20240611;
};

/// Runs one named check. Module errors propagate as exceptions.
VerificationReport run_check(const std::string& name, const Json& params, const RunOptions& options);
std::vector<std::string> check_names();

struct ScenarioCheck {
  std::string check;
  Json params;
  Status expect = Status::Pass;
};

struct Scenario {
  std::string name;
  Json field;
  RunOptions options;
  unsigned workers = 1;
  double time_limit_s = 0;
  std::vector<ScenarioCheck> checks;
};

/// Throws Parse on malformed input or unknown checks.
Scenario parse_scenario(const std::string& text);

struct ScenarioResult {
  std::vector<VerificationReport> reports;
  /// Report matched its expected status (skips always match).
  std::vector<bool> matched;
  int exit_code = 0;
};

/// Runs the checks on up to `workers` threads; reports keep declaration order.
/// Errors other than budget or cap overruns are reported as failures.
ScenarioResult run_scenario(const Scenario& scenario);
std::string summary_table(const Scenario& scenario, const ScenarioResult& result);

} // namespace modinv

#endif // MODINV_REGISTRY_HPP
