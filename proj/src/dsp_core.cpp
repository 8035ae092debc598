#include "emovec/dsp_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "emovec/error.hpp"
#include "emovec/kernels.hpp"

namespace emovec {
namespace {

double hz_to_mel(double hz) {
  constexpr double f_sp = 200.0 / 3.0;
  constexpr double min_log_hz = 1000.0;
  const double min_log_mel = min_log_hz / f_sp;
  const double logstep = std::log(6.4) / 27.0;
  return hz < min_log_hz ? hz / f_sp : min_log_mel + std::log(hz / min_log_hz) / logstep;
}

double mel_to_hz(double mel) {
  constexpr double f_sp = 200.0 / 3.0;
  constexpr double min_log_hz = 1000.0;
  const double min_log_mel = min_log_hz / f_sp;
  const double logstep = std::log(6.4) / 27.0;
  return mel < min_log_mel ? mel * f_sp : min_log_hz * std::exp(logstep * (mel - min_log_mel));
}

void check_buffer(const AudioBuffer& buf) {
  if (buf.samples.empty()) throw Error(ErrorCode::kEmptyAudio, "empty buffer");
  if (buf.sample_rate <= 0) throw Error(ErrorCode::kInvalidRate, "non-positive sample rate");
}

}  // namespace

std::vector<double> PitchTrack::voiced_f0() const {
  std::vector<double> out;
  for (const auto& f : f0_hz) {
    if (f) out.push_back(*f);
  }
  return out;
}

Spectrogram stft_magnitude(const AudioBuffer& buf, std::size_t frame_length,
                           std::size_t hop_length) {
  if (hop_length == 0 || frame_length < hop_length || frame_length < 2) {
    throw Error(ErrorCode::kInvalidFraming, "frame " + std::to_string(frame_length) + ", hop " +
                                                std::to_string(hop_length));
  }
  check_buffer(buf);
  const std::vector<double> padded = kernels::reflect_pad(buf.samples, frame_length / 2);
  const kernels::Framing framing{frame_length, hop_length,
                                 kernels::centered_frame_count(buf.samples.size(), hop_length)};
  Spectrogram spec;
  spec.n_frames = framing.n_frames;
  spec.n_bins = frame_length / 2 + 1;
  spec.frame_length = frame_length;
  spec.hop_length = hop_length;
  spec.sample_rate = buf.sample_rate;
  spec.magnitude.resize(spec.n_frames * spec.n_bins);
  kernels::omp::stft_magnitude(padded, framing, spec.magnitude);
  return spec;
}

std::vector<double> mel_filterbank(int sample_rate, std::size_t frame_length, int n_mels,
                                   double fmin, double fmax) {
  const std::size_t bins = frame_length / 2 + 1;
  std::vector<double> edges(static_cast<std::size_t>(n_mels) + 2);
  const double lo = hz_to_mel(fmin), hi = hz_to_mel(fmax);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = mel_to_hz(lo + (hi - lo) * static_cast<double>(i) / (edges.size() - 1));
  }
  std::vector<double> weights(static_cast<std::size_t>(n_mels) * bins, 0.0);
  for (int m = 0; m < n_mels; ++m) {
    const double left = edges[m], center = edges[m + 1], right = edges[m + 2];
    const double norm = 2.0 / (right - left);
    for (std::size_t b = 0; b < bins; ++b) {
      const double f = static_cast<double>(b) * sample_rate / static_cast<double>(frame_length);
      const double rise = (f - left) / (center - left);
      const double fall = (right - f) / (right - center);
      weights[static_cast<std::size_t>(m) * bins + b] = norm * std::max(0.0, std::min(rise, fall));
    }
  }
  return weights;
}

FrameSeries onset_strength(const Spectrogram& spec) {
  const int n_mels = config::kOnsetMelBands;
  const std::vector<double> fb = mel_filterbank(spec.sample_rate, spec.frame_length, n_mels, 0.0,
                                                spec.sample_rate / 2.0);
  const std::size_t frames = spec.n_frames;
  std::vector<double> log_mel(frames * n_mels);
  double peak_db = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < frames; ++t) {
    const auto mag = spec.frame(t);
    for (int m = 0; m < n_mels; ++m) {
      const double* w = fb.data() + static_cast<std::size_t>(m) * spec.n_bins;
      double power = 0.0;
      for (std::size_t b = 0; b < spec.n_bins; ++b) power += w[b] * mag[b] * mag[b];
      const double db = 10.0 * std::log10(std::max(1e-10, power));
      log_mel[t * n_mels + m] = db;
      peak_db = std::max(peak_db, db);
    }
  }
  const double floor_db = peak_db - config::kOnsetTopDb;
  for (double& v : log_mel) v = std::max(v, floor_db);

  std::vector<double> flux(frames, 0.0);
  for (std::size_t t = 1; t < frames; ++t) {
    double acc = 0.0;
    for (int m = 0; m < n_mels; ++m) {
      acc += std::max(0.0, log_mel[t * n_mels + m] - log_mel[(t - 1) * n_mels + m]);
    }
    flux[t] = acc / n_mels;
  }

  // A transient enters the centered window half a frame before its own frame.
  const std::size_t delay = spec.frame_length / (2 * spec.hop_length);
  FrameSeries env;
  env.frame_length = spec.frame_length;
  env.hop_length = spec.hop_length;
  env.sample_rate = spec.sample_rate;
  env.values.assign(frames, 0.0);
  for (std::size_t t = delay; t < frames; ++t) env.values[t] = flux[t - delay];
  return env;
}

FrameSeries onset_strength(const AudioBuffer& buf) { return onset_strength(stft_magnitude(buf)); }

FrameSeries rms_envelope(const AudioBuffer& buf) {
  check_buffer(buf);
  const std::size_t frame = config::kFrameLength, hop = config::kHopLength;
  const std::vector<double> padded = kernels::reflect_pad(buf.samples, frame / 2);
  const kernels::Framing framing{frame, hop,
                                 kernels::centered_frame_count(buf.samples.size(), hop)};
  FrameSeries out;
  out.sample_rate = buf.sample_rate;
  out.values.resize(framing.n_frames);
  kernels::omp::frame_rms(padded, framing, out.values);
  return out;
}

FrameSeries block_rms(const AudioBuffer& buf, std::size_t block) {
  check_buffer(buf);
  if (block == 0) throw Error(ErrorCode::kInvalidFraming, "zero block length");
  FrameSeries out;
  out.frame_length = block;
  out.hop_length = block;
  out.sample_rate = buf.sample_rate;
  const std::size_t n = buf.samples.size();
  out.values.resize((n + block - 1) / block);
  for (std::size_t i = 0; i < out.values.size(); ++i) {
    const std::size_t begin = i * block, end = std::min(n, begin + block);
    double acc = 0.0;
    for (std::size_t j = begin; j < end; ++j) acc += buf.samples[j] * buf.samples[j];
    out.values[i] = std::sqrt(acc / static_cast<double>(end - begin));
  }
  return out;
}

FrameSeries spectral_bandwidth(const Spectrogram& spec) {
  FrameSeries out;
  out.frame_length = spec.frame_length;
  out.hop_length = spec.hop_length;
  out.sample_rate = spec.sample_rate;
  out.values.assign(spec.n_frames, 0.0);
  for (std::size_t t = 0; t < spec.n_frames; ++t) {
    const auto mag = spec.frame(t);
    double total = 0.0, moment = 0.0;
    for (std::size_t b = 0; b < spec.n_bins; ++b) {
      total += mag[b];
      moment += spec.bin_hz(b) * mag[b];
    }
    if (total <= 0.0) continue;
    const double centroid = moment / total;
    double spread = 0.0;
    for (std::size_t b = 0; b < spec.n_bins; ++b) {
      const double d = spec.bin_hz(b) - centroid;
      spread += mag[b] * d * d;
    }
    out.values[t] = std::sqrt(spread / total);
  }
  return out;
}

FrameSeries spectral_bandwidth(const AudioBuffer& buf) {
  return spectral_bandwidth(stft_magnitude(buf));
}

kernels::YinParams make_yin_params(int sample_rate, double fmin, double fmax) {
  if (!(fmin > 0.0) || !(fmin < fmax) || !(fmax < sample_rate / 2.0)) {
    throw Error(ErrorCode::kInvalidRange, "need 0 < fmin < fmax < rate/2");
  }
  kernels::YinParams p;
  p.sample_rate = sample_rate;
  p.frame_length = config::kFrameLength;
  p.window = p.frame_length / 2;
  p.tau_min = static_cast<std::size_t>(std::ceil(sample_rate / fmax));
  p.tau_max = static_cast<std::size_t>(std::floor(sample_rate / fmin));
  p.fmin = fmin;
  p.fmax = fmax;
  p.threshold = config::kYinThreshold;
  if (p.tau_min < 2 || p.tau_max + 2 + p.window > p.frame_length) {
    throw Error(ErrorCode::kInvalidRange, "lag range does not fit the analysis frame");
  }
  return p;
}

PitchTrack yin_f0(const AudioBuffer& buf, double fmin, double fmax) {
  check_buffer(buf);
  const kernels::YinParams p = make_yin_params(buf.sample_rate, fmin, fmax);
  const std::size_t hop = config::kHopLength;
  const std::vector<double> padded = kernels::reflect_pad(buf.samples, p.frame_length / 2);
  const std::size_t frames = kernels::centered_frame_count(buf.samples.size(), hop);
  std::vector<double> f0(frames, 0.0);
  kernels::omp::yin(padded, p, hop, frames, f0);

  PitchTrack track;
  track.f0_hz.resize(frames);
  track.voiced.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    if (f0[i] > 0.0) {
      track.f0_hz[i] = f0[i];
      track.voiced[i] = true;
    }
  }
  return track;
}

}  // namespace emovec
