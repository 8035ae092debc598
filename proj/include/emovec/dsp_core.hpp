#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "emovec/audio_io.hpp"
#include "emovec/config.hpp"
#include "emovec/kernels.hpp"

namespace emovec {

/// One value per frame. Frame i starts at sample i * hop_length of the
/// centered (half-frame padded) signal, so its time is i * hop / rate.
struct FrameSeries {
  std::vector<double> values;
  std::size_t frame_length = config::kFrameLength;
  std::size_t hop_length = config::kHopLength;
  int sample_rate = config::kAnalysisRate;

  double frame_time(std::size_t i) const {
    return static_cast<double>(i * hop_length) / sample_rate;
  }
  double frames_per_second() const { return static_cast<double>(sample_rate) / hop_length; }
};

/// Magnitude spectrogram, row-major frames x bins; bin b is b * rate / frame_length Hz.
struct Spectrogram {
  std::size_t n_frames = 0;
  std::size_t n_bins = 0;
  std::size_t frame_length = 0;
  std::size_t hop_length = 0;
  int sample_rate = 0;
  std::vector<double> magnitude;

  std::span<const double> frame(std::size_t i) const {
    return std::span(magnitude).subspan(i * n_bins, n_bins);
  }
  double bin_hz(std::size_t b) const {
    return static_cast<double>(b) * sample_rate / static_cast<double>(frame_length);
  }
};

struct BeatTrack {
  double tempo_bpm = 0.0;
  std::vector<double> beat_times;  // seconds, strictly increasing
};

struct PitchTrack {
  std::vector<std::optional<double>> f0_hz;
  std::vector<bool> voiced;

  std::vector<double> voiced_f0() const;
};

/// Hann-windowed STFT magnitudes with centered, reflect-padded framing.
Spectrogram stft_magnitude(const AudioBuffer& buf, std::size_t frame_length = config::kFrameLength,
                           std::size_t hop_length = config::kHopLength);

/// Slaney-style triangular mel filterbank, n_mels x (frame_length/2 + 1).
std::vector<double> mel_filterbank(int sample_rate, std::size_t frame_length, int n_mels,
                                   double fmin, double fmax);

/// Spectral-flux onset envelope: log-power mel bands (floored 80 dB below the
/// global peak), positive first difference, mean over bands, delayed by half
/// a frame so a transient's peak lands on its own frame.
FrameSeries onset_strength(const AudioBuffer& buf);
FrameSeries onset_strength(const Spectrogram& spec);

/// Global tempo from the prior-weighted envelope autocorrelation, then
/// dynamic-programming beat placement.
BeatTrack beat_track(const FrameSeries& env);

FrameSeries rms_envelope(const AudioBuffer& buf);

/// Frame RMS over consecutive non-overlapping blocks of `block` samples.
/// Used by the attack-time cue where window overlap would smear onsets.
FrameSeries block_rms(const AudioBuffer& buf, std::size_t block = config::kHopLength);

FrameSeries spectral_bandwidth(const AudioBuffer& buf);
FrameSeries spectral_bandwidth(const Spectrogram& spec);

/// Lag search bounds and threshold for the YIN kernels. Throws InvalidRange.
kernels::YinParams make_yin_params(int sample_rate, double fmin, double fmax);

PitchTrack yin_f0(const AudioBuffer& buf, double fmin = config::kYinFmin,
                  double fmax = config::kYinFmax);


}  // namespace emovec
