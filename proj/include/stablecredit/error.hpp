#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace stablecredit {

enum class ErrorCode {
  kParse,
  kSchema,
  kRange,
  kInvalidPool,
  kNonConvergence,
  kDrainedPool,
  kOutOfRange,
  kDivergence,
  kExceedsLtv,
  kNotLiquidatable,
  kInsufficientReserve,
  kStaleQuote,
  kExceedsCreditLine,
  kInvalidEntry,
  kScenarioInvalid,
  kArithmetic,
  kIo,
};

std::string_view error_code_name(ErrorCode code);

/// Every engine failure surfaces as this exception. `path` is a JSON-pointer
/// style location for scenario diagnostics and empty otherwise.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string path = {})
      : std::runtime_error(message), code_(code), path_(std::move(path)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& path() const noexcept { return path_; }

 private:
  ErrorCode code_;
  std::string path_;
};

}  // namespace stablecredit
