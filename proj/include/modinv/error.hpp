#ifndef MODINV_ERROR_HPP
#define MODINV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace modinv {

enum class ErrorKind {
  InvalidArgument,
  FieldMismatch,
  DivisionByZero,
  InexactDivision,
  DimensionMismatch,
  CapExceeded,
  ClosureViolation,
  InvarianceFailure,
  Parse,
  Budget,
  Unsupported,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
  : std::runtime_error(what), kind_(kind)
  {}

  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what)
{ throw Error(kind, what); }

} // namespace modinv

#endif // MODINV_ERROR_HPP
