#include "rfk/error.hpp"

namespace rfk {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMissingFile: return "MissingFile";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kNonMonotoneTimestamps: return "NonMonotoneTimestamps";
    case ErrorCode::kTruncatedCloud: return "TruncatedCloud";
    case ErrorCode::kImageDecodeError: return "ImageDecodeError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kNoPredecessor: return "NoPredecessor";
    case ErrorCode::kUnknownCamera: return "UnknownCamera";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kPlanOutOfRange: return "PlanOutOfRange";
    case ErrorCode::kEmptyGrid: return "EmptyGrid";
    case ErrorCode::kZeroCleanScore: return "ZeroCleanScore";
    case ErrorCode::kUnknownFrame: return "UnknownFrame";
    case ErrorCode::kPolicyParseError: return "PolicyParseError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

bool is_config_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kConfigError:
    case ErrorCode::kPolicyParseError:
    case ErrorCode::kUnknownCamera:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace rfk
