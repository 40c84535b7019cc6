#pragma once

#include <stdexcept>
#include <string>

namespace weft {

enum class Errc {
  DivisionByZero,
  NonInvertibleDenominator,
  CompositeModulus,
  CycleDetected,
  DanglingChild,
  MultipleOutputs,
  InvalidCircuit,
  DenominatorZeroAtPoint,
  EnumerationCapExceeded,
  TermCapExceeded,
  SubsetBlowup,
  DuplicateNodes,
  SizeCapExceeded,
  WeftTooHigh,
  DepthCapExceeded,
  InsufficientFieldPoints,
  NoValidShiftFound,
  DegreeBoundViolated,
  CharacteristicTooSmall,
  KPlusOneNotPrime,
  ParameterOutOfRange,
  EdgeNotFound,
  InvalidMinorModel,
  TooManyColors,
  LayoutMismatch,
  IdentityCheckFailed,
  ParseError,
};

const char* errc_name(Errc c);

/// Library-wide exception; `code()` identifies the failed precondition or cap.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace weft
