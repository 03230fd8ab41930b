#include "stablecredit/error.hpp"

namespace stablecredit {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kSchema: return "SchemaError";
    case ErrorCode::kRange: return "RangeError";
    case ErrorCode::kInvalidPool: return "InvalidPool";
    case ErrorCode::kNonConvergence: return "NonConvergence";
    case ErrorCode::kDrainedPool: return "DrainedPool";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kDivergence: return "Divergence";
    case ErrorCode::kExceedsLtv: return "ExceedsLTV";
    case ErrorCode::kNotLiquidatable: return "NotLiquidatable";
    case ErrorCode::kInsufficientReserve: return "InsufficientReserve";
    case ErrorCode::kStaleQuote: return "StaleQuote";
    case ErrorCode::kExceedsCreditLine: return "ExceedsCreditLine";
    case ErrorCode::kInvalidEntry: return "InvalidEntry";
    case ErrorCode::kScenarioInvalid: return "ScenarioInvalid";
    case ErrorCode::kArithmetic: return "ArithmeticError";
    case ErrorCode::kIo: return "IoError";
  }
  return "UnknownError";
}

}  // namespace stablecredit
