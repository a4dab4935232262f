#pragma once

#include <stdexcept>
#include <string>

namespace advreg {

enum class ErrorKind {
  kAlphabetMismatch,
  kLengthMismatch,
  kBoundExceeded,
  kSyntax,
  kUnboundVariable,
  kFreeVariables,
  kMissingInterpretation,
  kPrecondition,
  kCapExceeded,
  kIntegrity,
  kMode,
  kFormat,
  kIo,
};

const char* to_string(ErrorKind kind);

// All library failures are reported through this type; `kind()` lets callers
// (notably the CLI) map failures onto exit codes without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace advreg
