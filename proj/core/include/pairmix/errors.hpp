#ifndef PAIRMIX_ERRORS_HPP_
#define PAIRMIX_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace pairmix {

enum class ErrorKind {
  UnknownGenerator,
  NotInGroup,
  FamilyMismatch,
  BallTooLarge,
  NotInComplement,
  BadC,
  IdentityInput,
  SupportViolation,
  NotInGamma0,
  FixedPointExists,
  ConfigError,
  ParseError,
  InternalError,
};

//! All library failures are reported through this exception type; the kind
//! is stable and intended for programmatic dispatch (the CLI maps kinds to
//! exit codes), the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string const& msg)
      : std::runtime_error(msg), _kind(kind) {}

  ErrorKind kind() const noexcept {
    return _kind;
  }

 private:
  ErrorKind _kind;
};

[[noreturn]] inline void throw_error(ErrorKind kind, std::string const& msg) {
  throw Error(kind, msg);
}

inline char const* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownGenerator: return "UnknownGenerator";
    case ErrorKind::NotInGroup: return "NotInGroup";
    case ErrorKind::FamilyMismatch: return "FamilyMismatch";
    case ErrorKind::BallTooLarge: return "BallTooLarge";
    case ErrorKind::NotInComplement: return "NotInComplement";
    case ErrorKind::BadC: return "BadC";
    case ErrorKind::IdentityInput: return "IdentityInput";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::NotInGamma0: return "NotInGamma0";
    case ErrorKind::FixedPointExists: return "FixedPointExists";
    case ErrorKind::ConfigError: return "ConfigError";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace pairmix

#endif  // PAIRMIX_ERRORS_HPP_
