#ifndef GDET_ERRORS_HPP
#define GDET_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gdet {

enum class ErrorKind {
  // Cayley table validation
  NotLatinSquare,
  NoIdentity,
  NotAssociative,
  NoInverse,
  // resource limits
  OrderCapExceeded,
  ResourceBudgetExceeded,
  // preconditions
  NotASubgroup,
  UnmappedVariable,
  // reconstruction
  MalformedDeterminant,
  NoConsistentTable,
  VerificationFailed,
  // input parsing (CLI specs, polynomial text/JSON)
  InvalidSpec,
  // modular elimination ran out of retry attempts
  SingularPivotRetry,
  // internal invariant violation; reaching this is a bug
  Internal,
};

inline const char* error_kind_name(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotLatinSquare: return "NotLatinSquare";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::OrderCapExceeded: return "OrderCapExceeded";
    case ErrorKind::ResourceBudgetExceeded: return "ResourceBudgetExceeded";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::UnmappedVariable: return "UnmappedVariable";
    case ErrorKind::MalformedDeterminant: return "MalformedDeterminant";
    case ErrorKind::NoConsistentTable: return "NoConsistentTable";
    case ErrorKind::VerificationFailed: return "VerificationFailed";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::SingularPivotRetry: return "SingularPivotRetry";
    case ErrorKind::Internal: return "Internal";
  }
  return "UnknownError";
}

class GdetError : public std::runtime_error {
 public:
  GdetError(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& message) {
  throw GdetError(kind, message);
}

}  // namespace gdet

#endif  // GDET_ERRORS_HPP
