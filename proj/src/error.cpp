#include "carpetdim/error.hpp"

namespace carpetdim {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BaseTooSmall: return "BaseTooSmall";
    case ErrorCode::EmptyPattern: return "EmptyPattern";
    case ErrorCode::OutOfRangeCell: return "OutOfRangeCell";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::TauDegenerate: return "TauDegenerate";
    case ErrorCode::RatesOutOfRange: return "RatesOutOfRange";
    case ErrorCode::UnsupportedRow: return "UnsupportedRow";
    case ErrorCode::WeightOffPattern: return "WeightOffPattern";
    case ErrorCode::EmptyHorizon: return "EmptyHorizon";
    case ErrorCode::SOutOfRange: return "SOutOfRange";
    case ErrorCode::RowNotInCarpet: return "RowNotInCarpet";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::BracketNotStraddling: return "BracketNotStraddling";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::UnknownSubcommand: return "UnknownSubcommand";
  }
  return "Unknown";
}

}  // namespace carpetdim
