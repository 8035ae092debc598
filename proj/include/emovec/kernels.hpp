#pragma once

// Data-parallel inner loops of the analysis pipeline.
//
// Each kernel exists twice: kernels::serial is the plain reference loop kept
// for testing and benchmarking, kernels::omp is the OpenMP version used by
// the library. Apart from yin (whose serial form evaluates the difference
// function directly rather than through an FFT) the two produce
// bit-identical output for any thread count: every output element is
// computed by the same code in the same order.

#include <cstddef>
#include <span>
#include <vector>

namespace emovec::kernels {

/// Reflect-pads x by `pad` samples at both ends (numpy "reflect" mode,
/// folding repeatedly for inputs shorter than the pad).
std::vector<double> reflect_pad(std::span<const double> x, std::size_t pad);

/// Frames produced by centered framing of n samples: 1 + n / hop.
inline std::size_t centered_frame_count(std::size_t n, std::size_t hop) { return 1 + n / hop; }

/// Periodic Hann window.
std::vector<double> hann_window(std::size_t length);

struct Framing {
  std::size_t frame_length;
  std::size_t hop_length;
  std::size_t n_frames;
};

struct YinParams {
  int sample_rate;
  std::size_t frame_length;  // samples per analysis frame
  std::size_t window;        // integration window, frame_length / 2
  std::size_t tau_min;
  std::size_t tau_max;
  double fmin;
  double fmax;
  double threshold;
};

/// Precomputed bank for rational-ratio windowed-sinc resampling.
struct PolyphaseFilter {
  long up = 1;        // target_rate / gcd
  long down = 1;      // source_rate / gcd
  long half_taps = 0; // taps per phase = 2 * half_taps
  std::vector<double> bank;  // up rows of 2 * half_taps coefficients

  static PolyphaseFilter design(int source_rate, int target_rate);
};

/// One synthesized note: fixed additive tone and ADSR envelope.
struct NoteVoice {
  long start_sample;
  long end_sample;      // exclusive; includes the release tail
  double frequency;
  double amplitude;
  double sample_rate;
  double release_start; // seconds after start when the key is released
};

namespace serial {
void stft_magnitude(std::span<const double> padded, const Framing& f, std::span<double> out);
void frame_rms(std::span<const double> padded, const Framing& f, std::span<double> out);
void yin(std::span<const double> padded, const YinParams& p, std::size_t hop,
         std::size_t n_frames, std::span<double> f0);
void resample(std::span<const double> x, const PolyphaseFilter& filt, std::span<double> out);
void render_notes(std::span<const NoteVoice> notes, std::span<double> out);
}  // namespace serial

namespace omp {
void stft_magnitude(std::span<const double> padded, const Framing& f, std::span<double> out);
void frame_rms(std::span<const double> padded, const Framing& f, std::span<double> out);
void yin(std::span<const double> padded, const YinParams& p, std::size_t hop,
         std::size_t n_frames, std::span<double> f0);
void resample(std::span<const double> x, const PolyphaseFilter& filt, std::span<double> out);
void render_notes(std::span<const NoteVoice> notes, std::span<double> out);
}  // namespace omp

}  // namespace emovec::kernels
