#include "groma/error.hpp"

namespace groma {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedDocument: return "MalformedDocument";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::UnknownActivation: return "UnknownActivation";
    case ErrorCode::NonFiniteParameter: return "NonFiniteParameter";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::TruncatedFile: return "TruncatedFile";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::LabelOutOfRange: return "LabelOutOfRange";
    case ErrorCode::RaggedRows: return "RaggedRows";
    case ErrorCode::NonNumericField: return "NonNumericField";
    case ErrorCode::OutOfDomainValue: return "OutOfDomainValue";
    case ErrorCode::InsufficientSamples: return "InsufficientSamples";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::NonFiniteInput: return "NonFiniteInput";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::EmptyVariance: return "EmptyVariance";
    case ErrorCode::AllPointsMisclassified: return "AllPointsMisclassified";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace groma
