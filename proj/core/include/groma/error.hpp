#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace groma {

enum class ErrorCode {
  // model
  MalformedDocument,
  ShapeMismatch,
  UnknownActivation,
  NonFiniteParameter,
  UnsupportedVersion,
  DimensionMismatch,
  // data
  BadMagic,
  TruncatedFile,
  CountMismatch,
  LabelOutOfRange,
  RaggedRows,
  NonNumericField,
  OutOfDomainValue,
  InsufficientSamples,
  UnknownLabel,
  // stats / aggregate
  EmptySample,
  NonFiniteInput,
  TooFewSamples,
  DegenerateSample,
  EmptyInput,
  EmptyVariance,
  // runner
  AllPointsMisclassified,
  InvalidConfig,
  IoError,
};

/// Stable identifier used in reports, e.g. "AllPointsMisclassified".
std::string_view to_string(ErrorCode code) noexcept;

/// The single exception type thrown by the library. Callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace groma
