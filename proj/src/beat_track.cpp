#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "emovec/dsp_core.hpp"
#include "emovec/error.hpp"

namespace emovec {
namespace {

double median(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  if (v.size() % 2 == 1) return v[mid];
  const double upper = v[mid];
  const double lower = *std::max_element(v.begin(), v.begin() + mid);
  return 0.5 * (lower + upper);
}

// Offset of the vertex of the parabola through (-1, a), (0, b), (1, c).
double parabolic_offset(double a, double b, double c) {
  const double denom = a - 2.0 * b + c;
  if (!(denom < 0.0)) return 0.0;
  return std::clamp(0.5 * (a - c) / denom, -0.5, 0.5);
}

std::size_t count_peaks(const std::vector<double>& e, double threshold) {
  std::size_t peaks = 0;
  for (std::size_t i = 1; i + 1 < e.size(); ++i) {
    if (e[i] > threshold && e[i] > e[i - 1] && e[i] >= e[i + 1]) ++peaks;
  }
  return peaks;
}

double tempo_prior(double bpm) {
  const double octaves = std::log2(bpm / config::kTempoPriorBpm);
  return std::exp(-0.5 * octaves * octaves /
                  (config::kTempoPriorSigmaOctaves * config::kTempoPriorSigmaOctaves));
}

// Beat period in frames: argmax of the prior-weighted autocorrelation over
// lags spanning the allowed BPM range, refined to a fractional lag.
double estimate_period(const std::vector<double>& e, double fps) {
  const auto n = static_cast<long>(e.size());
  const long lag_min = std::max(2L, static_cast<long>(std::ceil(60.0 * fps / config::kTempoMaxBpm)));
  const long lag_max = std::min(n - 2, static_cast<long>(std::floor(60.0 * fps / config::kTempoMinBpm)));
  if (lag_max < lag_min) throw Error(ErrorCode::kInsufficientOnsets, "envelope too short for tempo");

  auto weighted = [&](long lag) {
    double acc = 0.0;
    for (long t = 0; t + lag < n; ++t) acc += e[t] * e[t + lag];
    return acc * tempo_prior(60.0 * fps / static_cast<double>(lag));
  };
  std::vector<double> score(static_cast<std::size_t>(lag_max + 2), 0.0);
  for (long lag = lag_min - 1; lag <= lag_max + 1; ++lag) score[lag] = weighted(lag);

  long best = lag_min;
  for (long lag = lag_min; lag <= lag_max; ++lag) {
    if (score[lag] > score[best]) best = lag;
  }
  if (!(score[best] > 0.0)) throw Error(ErrorCode::kInsufficientOnsets, "flat autocorrelation");
  return static_cast<double>(best) +
         parabolic_offset(score[best - 1], score[best], score[best + 1]);
}

std::vector<double> local_score(const std::vector<double>& e, double period) {
  const auto n = e.size();
  const double mean = std::accumulate(e.begin(), e.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double v : e) var += (v - mean) * (v - mean);
  const double sd = n > 1 ? std::sqrt(var / static_cast<double>(n - 1)) : 0.0;
  const double scale = sd > 0.0 ? 1.0 / sd : 1.0;

  const long radius = std::lround(period);
  std::vector<double> kernel(static_cast<std::size_t>(2 * radius + 1));
  for (long k = -radius; k <= radius; ++k) {
    const double x = static_cast<double>(k) * 32.0 / period;
    kernel[static_cast<std::size_t>(k + radius)] = std::exp(-0.5 * x * x);
  }
  std::vector<double> out(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double acc = 0.0;
    for (long k = -radius; k <= radius; ++k) {
      const long j = static_cast<long>(i) + k;
      if (j < 0 || j >= static_cast<long>(n)) continue;
      acc += e[static_cast<std::size_t>(j)] * kernel[static_cast<std::size_t>(k + radius)];
    }
    out[i] = acc * scale;
  }
  return out;
}

std::vector<long> dp_beats(const std::vector<double>& score, double period) {
  const auto n = static_cast<long>(score.size());
  const long far = std::lround(2.0 * period);
  const long near = std::max(1L, std::lround(period / 2.0));
  const double threshold = 0.01 * *std::max_element(score.begin(), score.end());

  std::vector<double> cumulative(score.size());
  std::vector<long> backlink(score.size(), -1);
  bool first_beat = true;
  for (long i = 0; i < n; ++i) {
    double best = -std::numeric_limits<double>::infinity();
    long best_prev = -1;
    for (long gap = far; gap >= near; --gap) {
      const long prev = i - gap;
      if (prev < 0) continue;
      const double l = std::log(static_cast<double>(gap) / period);
      const double candidate = cumulative[prev] - config::kBeatTightness * l * l;
      if (candidate > best) {
        best = candidate;
        best_prev = prev;
      }
    }
    cumulative[i] = score[i] + (best_prev >= 0 ? best : 0.0);
    if (first_beat && score[i] < threshold) {
      backlink[i] = -1;
    } else {
      backlink[i] = best_prev;
      first_beat = false;
    }
  }

  // Last beat: the final local maximum of the cumulative score that is
  // at least half the median local-maximum height.
  std::vector<long> maxima;
  for (long i = 1; i + 1 < n; ++i) {
    if (cumulative[i] > cumulative[i - 1] && cumulative[i] >= cumulative[i + 1]) maxima.push_back(i);
  }
  long last = std::distance(cumulative.begin(),
                            std::max_element(cumulative.begin(), cumulative.end()));
  if (!maxima.empty()) {
    std::vector<double> heights;
    for (long i : maxima) heights.push_back(cumulative[i]);
    const double cut = 0.5 * median(heights);
    for (long i : maxima) {
      if (cumulative[i] >= cut) last = i;
    }
  }

  std::vector<long> beats;
  for (long b = last; b >= 0; b = backlink[b]) beats.push_back(b);
  std::reverse(beats.begin(), beats.end());
  return beats;
}

// Drops weak leading and trailing beats.
std::vector<long> trim_beats(const std::vector<long>& beats, const std::vector<double>& score) {
  if (beats.size() < 3) return beats;
  constexpr double w[5] = {0.0, 0.5, 1.0, 0.5, 0.0};
  const auto m = static_cast<long>(beats.size());
  std::vector<double> smooth(beats.size(), 0.0);
  double sq = 0.0;
  for (long i = 0; i < m; ++i) {
    for (long k = -2; k <= 2; ++k) {
      const long j = i + k;
      if (j >= 0 && j < m) smooth[i] += score[beats[j]] * w[k + 2];
    }
    sq += smooth[i] * smooth[i];
  }
  const double threshold = 0.5 * std::sqrt(sq / static_cast<double>(m));
  long first = 0, last = m - 1;
  while (first < m && !(smooth[first] > threshold)) ++first;
  while (last >= first && !(smooth[last] > threshold)) --last;
  return {beats.begin() + first, beats.begin() + last + 1};
}

}  // namespace

BeatTrack beat_track(const FrameSeries& env) {
  const std::vector<double>& e = env.values;
  for (double v : e) {
    if (!(v >= 0.0)) throw Error(ErrorCode::kInsufficientOnsets, "negative onset envelope");
  }
  const double peak = e.empty() ? 0.0 : *std::max_element(e.begin(), e.end());
  if (!(peak > 0.0) || count_peaks(e, 0.1 * peak) < 4) {
    throw Error(ErrorCode::kInsufficientOnsets, "fewer than 4 envelope peaks");
  }

  const double fps = env.frames_per_second();
  const double period = estimate_period(e, fps);
  const std::vector<double> score = local_score(e, period);
  const std::vector<long> frames = trim_beats(dp_beats(score, period), score);
  if (frames.size() < 2) throw Error(ErrorCode::kInsufficientOnsets, "fewer than 2 beats");

  BeatTrack track;
  const auto n = static_cast<long>(score.size());
  for (long f : frames) {
    double pos = static_cast<double>(f);
    if (f > 0 && f + 1 < n) pos += parabolic_offset(score[f - 1], score[f], score[f + 1]);
    track.beat_times.push_back(pos / fps);
  }
  std::vector<double> intervals;
  for (std::size_t i = 1; i < track.beat_times.size(); ++i) {
    intervals.push_back(track.beat_times[i] - track.beat_times[i - 1]);
  }
  track.tempo_bpm =
      std::clamp(60.0 / median(intervals), config::kTempoMinBpm, config::kTempoMaxBpm);
  return track;
}

}  // namespace emovec
