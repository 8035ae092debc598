#pragma once

// Per-element bodies shared by the serial and OpenMP kernel loops.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "emovec/kernels.hpp"
#include "fft.hpp"

namespace emovec::kernels::detail {

struct FftScratch {
  std::vector<double> real;
  std::vector<std::complex<double>> spectrum;
  std::vector<std::complex<double>> spectrum2;
  std::vector<double> work;
};

inline FftScratch& thread_scratch() {
  thread_local FftScratch s;
  return s;
}

inline void stft_frame(std::span<const double> padded, const Framing& f,
                       std::span<const double> window, const emovec::detail::RealFft& fft,
                       std::size_t frame, std::span<double> row) {
  FftScratch& s = thread_scratch();
  s.real.resize(f.frame_length);
  s.spectrum.resize(f.frame_length / 2 + 1);
  const double* x = padded.data() + frame * f.hop_length;
  for (std::size_t j = 0; j < f.frame_length; ++j) s.real[j] = x[j] * window[j];
  fft.forward(s.real, s.spectrum);
  for (std::size_t b = 0; b < row.size(); ++b) row[b] = std::abs(s.spectrum[b]);
}

inline double rms_frame(std::span<const double> padded, const Framing& f, std::size_t frame) {
  const double* x = padded.data() + frame * f.hop_length;
  double acc = 0.0;
  for (std::size_t j = 0; j < f.frame_length; ++j) acc += x[j] * x[j];
  return std::sqrt(acc / static_cast<double>(f.frame_length));
}

// Cumulative-mean-normalized difference, absolute threshold, descent to the
// local minimum and parabolic refinement. d holds d(0..tau_max+1). Returns
// f0 in Hz or 0 for an unvoiced frame.
inline double yin_pick(std::span<double> d, const YinParams& p) {
  const std::size_t last = p.tau_max + 1;
  std::vector<double>& cmnd = thread_scratch().work;
  cmnd.assign(last + 1, 1.0);
  double running = 0.0;
  for (std::size_t tau = 1; tau <= last; ++tau) {
    running += d[tau];
    cmnd[tau] = running > 0.0 ? d[tau] * static_cast<double>(tau) / running : 1.0;
  }

  std::size_t tau = p.tau_min;
  while (tau <= p.tau_max && !(cmnd[tau] < p.threshold)) ++tau;
  if (tau > p.tau_max) return 0.0;
  while (tau + 1 <= p.tau_max && cmnd[tau + 1] < cmnd[tau]) ++tau;

  double period = static_cast<double>(tau);
  if (tau >= 1) {
    const double a = cmnd[tau - 1], b = cmnd[tau], c = cmnd[tau + 1];
    const double denom = a - 2.0 * b + c;
    if (denom > 0.0) period += std::clamp(0.5 * (a - c) / denom, -1.0, 1.0);
  }
  const double sr = static_cast<double>(p.sample_rate);
  period = std::clamp(period, sr / p.fmax, sr / p.fmin);
  return sr / period;
}

inline void yin_difference_direct(const double* x, const YinParams& p, std::span<double> d) {
  for (std::size_t tau = 0; tau <= p.tau_max + 1; ++tau) {
    double acc = 0.0;
    for (std::size_t j = 0; j < p.window; ++j) {
      const double diff = x[j] - x[j + tau];
      acc += diff * diff;
    }
    d[tau] = acc;
  }
}

// d(tau) = e(0) + e(tau) - 2 r(tau): energies from a running sum, the cross
// term from one FFT correlation of the integration window against the frame.
inline void yin_difference_fft(const double* x, const YinParams& p,
                               const emovec::detail::RealFft& fft, std::span<double> d) {
  FftScratch& s = thread_scratch();
  const auto m = static_cast<std::size_t>(fft.size());
  const std::size_t bins = m / 2 + 1;
  s.real.assign(m, 0.0);
  s.spectrum.resize(bins);
  s.spectrum2.resize(bins);

  std::copy(x, x + p.window, s.real.begin());
  fft.forward(s.real, s.spectrum);
  std::copy(x, x + p.frame_length, s.real.begin());
  fft.forward(s.real, s.spectrum2);
  for (std::size_t b = 0; b < bins; ++b) s.spectrum2[b] *= std::conj(s.spectrum[b]);
  fft.inverse(s.spectrum2, s.real);

  const double scale = 1.0 / static_cast<double>(m);
  double e0 = 0.0;
  for (std::size_t j = 0; j < p.window; ++j) e0 += x[j] * x[j];
  double e_tau = e0;
  for (std::size_t tau = 0; tau <= p.tau_max + 1; ++tau) {
    if (tau > 0) {
      e_tau += x[tau + p.window - 1] * x[tau + p.window - 1] - x[tau - 1] * x[tau - 1];
    }
    d[tau] = std::max(0.0, e0 + std::max(0.0, e_tau) - 2.0 * s.real[tau] * scale);
  }
  d[0] = 0.0;
}

inline double resample_sample(std::span<const double> x, const PolyphaseFilter& filt, long n) {
  const long t = n * filt.down;
  const long base = t / filt.up;
  const long phase = t % filt.up;
  const double* h = filt.bank.data() + phase * 2 * filt.half_taps;
  const long len = static_cast<long>(x.size());
  double acc = 0.0;
  for (long k = -filt.half_taps + 1; k <= filt.half_taps; ++k) {
    const long idx = base + k;
    if (idx < 0 || idx >= len) continue;
    acc += x[static_cast<std::size_t>(idx)] * h[k + filt.half_taps - 1];
  }
  return std::clamp(acc, -1.0, 1.0);
}

inline constexpr double kAttack = 0.010;
inline constexpr double kDecay = 0.050;
inline constexpr double kSustain = 0.7;
inline constexpr double kRelease = 0.050;
inline constexpr int kHarmonics = 4;

inline double held_level(double t) {
  if (t < kAttack) return t / kAttack;
  if (t < kAttack + kDecay) return 1.0 - (1.0 - kSustain) * (t - kAttack) / kDecay;
  return kSustain;
}

inline double envelope(const NoteVoice& v, double t) {
  if (t < v.release_start) return held_level(t);
  const double level = held_level(v.release_start);
  return std::max(0.0, level * (1.0 - (t - v.release_start) / kRelease));
}

inline void render_block(std::span<const NoteVoice> notes, std::span<double> out, long begin,
                         long end) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  for (const NoteVoice& v : notes) {
    const long lo = std::max(begin, v.start_sample);
    const long hi = std::min(end, v.end_sample);
    for (long n = lo; n < hi; ++n) {
      const double t = static_cast<double>(n - v.start_sample) / v.sample_rate;
      double tone = 0.0;
      for (int h = 1; h <= kHarmonics; ++h) {
        const double f = v.frequency * h;
        if (f >= v.sample_rate / 2.0) break;
        tone += std::sin(two_pi * f * t) / h;
      }
      out[static_cast<std::size_t>(n)] += v.amplitude * envelope(v, t) * tone;
    }
  }
}

inline constexpr long kRenderBlock = 4096;

}  // namespace emovec::kernels::detail
