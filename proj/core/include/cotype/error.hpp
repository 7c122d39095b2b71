#ifndef COTYPE_ERROR_HPP
#define COTYPE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace cotype {

// Every recoverable input problem surfaces as one of these codes so the CLI
// can map it to a stable exit status and report field.
enum class ErrorCode {
  StratificationViolation,
  ArityMismatch,
  DuplicateTypeName,
  CoinductiveRuleMissing,
  PolarityError,
  NonLinearPattern,
  UnboundRhsVariable,
  IncompatiblePair,
  UnknownIdentifier,
  ChoiceOutOfRange,
  DecodeError,
  InvalidRepresentation,
  SampleNotOfClaimedInputType,
  SyntaxError,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

const char* error_code_name(ErrorCode code);

}  // namespace cotype

#endif
