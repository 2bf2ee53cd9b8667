#pragma once

#include <stdexcept>
#include <string>

namespace gds {

enum class ErrorCode {
  InvalidArgument,
  InvalidSize,
  DimensionError,
  ParseError,
  DegenerateData,
  DegenerateDegree,
  DegenerateSpectrum,
  DegenerateGraph,
  DefectiveMatrix,
  NotReconstructible,
  TooLarge,
  UnsupportedGraph,
};

const char* to_string(ErrorCode code) noexcept;

// Input errors are caller mistakes (bad sizes, unreadable files); the rest are
// domain conditions of a well-formed input.
bool is_input_error(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace gds
