#include "emovec/error.hpp"

namespace emovec {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "Io";
    case ErrorCode::kMalformedContainer: return "MalformedContainer";
    case ErrorCode::kUnsupportedEncoding: return "UnsupportedEncoding";
    case ErrorCode::kEmptyAudio: return "EmptyAudio";
    case ErrorCode::kInvalidRate: return "InvalidRate";
    case ErrorCode::kMalformedSmf: return "MalformedSMF";
    case ErrorCode::kUnsupportedFormat: return "UnsupportedFormat";
    case ErrorCode::kInvalidFraming: return "InvalidFraming";
    case ErrorCode::kInsufficientOnsets: return "InsufficientOnsets";
    case ErrorCode::kInvalidRange: return "InvalidRange";
    case ErrorCode::kTooShort: return "TooShort";
    case ErrorCode::kNoEvents: return "NoEvents";
    case ErrorCode::kNoVoicedFrames: return "NoVoicedFrames";
    case ErrorCode::kInsufficientBeats: return "InsufficientBeats";
    case ErrorCode::kInsufficientBenchmark: return "InsufficientBenchmark";
    case ErrorCode::kNotCalibrated: return "NotCalibrated";
    case ErrorCode::kSchemaMismatch: return "SchemaMismatch";
    case ErrorCode::kCorruptGrid: return "CorruptGrid";
    case ErrorCode::kConfigMismatch: return "ConfigMismatch";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
  }
  return "Unknown";
}

}  // namespace emovec
