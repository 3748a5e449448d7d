#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace carpetdim {

enum class ErrorCode {
  InvalidArgument,
  BaseTooSmall,
  EmptyPattern,
  OutOfRangeCell,
  InvalidWeights,
  AlphaOutOfRange,
  DegenerateSpectrum,
  TauDegenerate,
  RatesOutOfRange,
  UnsupportedRow,
  WeightOffPattern,
  EmptyHorizon,
  SOutOfRange,
  RowNotInCarpet,
  LengthMismatch,
  BudgetExceeded,
  BracketNotStraddling,
  ConfigInvalid,
  UnknownSubcommand,
};

std::string_view to_string(ErrorCode code);

/// Domain error carrying a machine-readable code and, when the failure is
/// attributable to a single input, the name of that input.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string field = {})
      : std::runtime_error(message), code_(code), field_(std::move(field)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorCode code_;
  std::string field_;
};

}  // namespace carpetdim
