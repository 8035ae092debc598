#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace emovec {

/// Mono audio. Samples are in [-1, 1].
struct AudioBuffer {
  std::vector<double> samples;
  int sample_rate = 0;

  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
  bool operator==(const AudioBuffer&) const = default;
};

/// Decodes RIFF/WAVE with PCM16, PCM24 or IEEE float32 samples, 1 or 2
/// channels. Stereo is mixed to mono by the per-frame mean; the original
/// sample rate is kept.
AudioBuffer decode_wav(std::span<const std::uint8_t> bytes);

/// 16-bit PCM mono WAV. Samples are scaled by 32768 and clamped.
std::vector<std::uint8_t> encode_wav_pcm16(const AudioBuffer& buf);

/// Band-limited (Kaiser-windowed sinc, polyphase) resampling. Returns a copy
/// when the rates already agree.
AudioBuffer resample(const AudioBuffer& buf, int target_rate);

std::vector<std::uint8_t> read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace emovec
