#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace emovec {

enum class ErrorCode {
  kIo,
  kMalformedContainer,
  kUnsupportedEncoding,
  kEmptyAudio,
  kInvalidRate,
  kMalformedSmf,
  kUnsupportedFormat,
  kInvalidFraming,
  kInsufficientOnsets,
  kInvalidRange,
  kTooShort,
  kNoEvents,
  kNoVoicedFrames,
  kInsufficientBeats,
  kInsufficientBenchmark,
  kNotCalibrated,
  kSchemaMismatch,
  kCorruptGrid,
  kConfigMismatch,
  kEmptyCorpus,
};

/// Stable machine-readable name, e.g. "InsufficientOnsets".
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace emovec
