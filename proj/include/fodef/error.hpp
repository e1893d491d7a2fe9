#pragma once
#include <stdexcept>
#include <string>

namespace fodef {

enum class ErrorKind {
  UnknownSymbol,
  AlphabetMismatch,
  CapExceeded,
  NotUnary,
  AlphabetViolation,
  BadPrime,
  SyntaxError,
  UnknownOperator,
  NotHorn,
  PreconditionViolated,
  WindowUnstable,
  InconsistencyWithBot,
  NotLinear,
  NotNormalized,
  PositionOutOfRange,
  NotKrom,
  NotCore,
  NotPowersetAlphabet,
  UnboundPredicate,
  BadInput,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind k, const std::string& msg)
      : std::runtime_error(std::string(error_kind_name(k)) + ": " + msg), kind_(k) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace fodef
