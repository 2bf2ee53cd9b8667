#include "gds/error.hpp"

namespace gds {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidSize: return "InvalidSize";
    case ErrorCode::DimensionError: return "DimensionError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::DegenerateDegree: return "DegenerateDegree";
    case ErrorCode::DegenerateSpectrum: return "DegenerateSpectrum";
    case ErrorCode::DegenerateGraph: return "DegenerateGraph";
    case ErrorCode::DefectiveMatrix: return "DefectiveMatrix";
    case ErrorCode::NotReconstructible: return "NotReconstructible";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::UnsupportedGraph: return "UnsupportedGraph";
  }
  return "Unknown";
}

bool is_input_error(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidSize:
    case ErrorCode::DimensionError:
    case ErrorCode::ParseError:
    case ErrorCode::TooLarge:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

}  // namespace gds
