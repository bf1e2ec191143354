#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rfk {

enum class ErrorCode : std::uint8_t {
  kInvalidArgument,
  kMissingFile,
  kSchemaViolation,
  kNonMonotoneTimestamps,
  kTruncatedCloud,
  kImageDecodeError,
  kIoError,
  kNoPredecessor,
  kUnknownCamera,
  kDimensionMismatch,
  kPlanOutOfRange,
  kEmptyGrid,
  kZeroCleanScore,
  kUnknownFrame,
  kPolicyParseError,
  kConfigError,
};

std::string_view to_string(ErrorCode code);

/// Whether an error stems from user configuration (as opposed to bad data).
bool is_config_error(ErrorCode code);

/// Single exception type for the toolkit; the code carries the error kind so
/// callers can branch without RTTI on a class hierarchy.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace rfk
