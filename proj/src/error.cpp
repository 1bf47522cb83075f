#include "setinfo/error.hpp"

namespace setinfo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::MalformedManifest: return "MalformedManifest";
    case ErrorCode::MalformedLine: return "MalformedLine";
    case ErrorCode::CorpusTooSmall: return "CorpusTooSmall";
    case ErrorCode::EmptyText: return "EmptyText";
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::ContextTooShort: return "ContextTooShort";
    case ErrorCode::SourceExhausted: return "SourceExhausted";
    case ErrorCode::UnknownScheme: return "UnknownScheme";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::EmptySelection: return "EmptySelection";
  }
  return "Unknown";
}

}  // namespace setinfo
