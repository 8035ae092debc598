#include "emovec/cue_extract.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "emovec/config.hpp"
#include "emovec/csv.hpp"

namespace emovec {
namespace {

constexpr std::array<std::string_view, kCueCount> kCueNames = {
    "tempo",         "sound_level",       "sound_level_variability",
    "high_frequency_energy", "pitch_level", "pitch_variability",
    "tone_attack_speed",     "microstructural_irregularity"};

double mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double population_sd(const std::vector<double>& v, double mu) {
  double acc = 0.0;
  for (double x : v) acc += (x - mu) * (x - mu);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t mid = v.size() / 2;
  return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

}  // namespace

std::string_view cue_name(CueId id) { return kCueNames[index(id)]; }

std::optional<CueId> cue_from_name(std::string_view name) {
  for (CueId id : kAllCues) {
    if (cue_name(id) == name) return id;
  }
  return std::nullopt;
}

std::vector<double> attack_durations(const FrameSeries& energy) {
  const std::vector<double>& e = energy.values;
  const double peak = e.empty() ? 0.0 : *std::max_element(e.begin(), e.end());
  if (!(peak > 0.0)) throw Error(ErrorCode::kNoEvents, "no energy");
  const double threshold = config::kAttackThreshold * peak;
  const double frame_seconds = static_cast<double>(energy.hop_length) / energy.sample_rate;

  std::vector<double> durations;
  std::size_t i = 0;
  while (i < e.size()) {
    if (e[i] < threshold) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    std::size_t end = i;
    while (end < e.size() && e[end] >= threshold) ++end;
    std::size_t top = start;
    while (top + 1 < end && e[top + 1] > e[top]) ++top;
    durations.push_back(static_cast<double>(top - start + 1) * frame_seconds);
    i = end;
  }
  if (durations.empty()) throw Error(ErrorCode::kNoEvents, "no run above threshold");
  return durations;
}

std::vector<double> attack_durations(const AudioBuffer& buf) {
  return attack_durations(block_rms(buf));
}

double beat_irregularity(const BeatTrack& beats) {
  const auto& t = beats.beat_times;
  if (t.size() < 4) {
    throw Error(ErrorCode::kInsufficientBeats, std::to_string(t.size()) + " beats");
  }
  const double period = 60.0 / beats.tempo_bpm;
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    acc += std::abs((t[i + 1] - t[i]) - period) / period;
  }
  return acc / static_cast<double>(t.size() - 1);
}

double beat_irregularity(const AudioBuffer& buf) {
  const BeatTrack beats = [&] {
    try {
      return beat_track(onset_strength(buf));
    } catch (const Error& e) {
      throw Error(ErrorCode::kInsufficientBeats, e.what());
    }
  }();
  return beat_irregularity(beats);
}

CueVector extract_cues(const AudioBuffer& buf) {
  if (buf.sample_rate != config::kAnalysisRate) {
    throw Error(ErrorCode::kInvalidRate, "expected " + std::to_string(config::kAnalysisRate) +
                                             " Hz, got " + std::to_string(buf.sample_rate));
  }
  if (buf.duration_seconds() < config::kMinDurationSeconds) {
    throw Error(ErrorCode::kTooShort, std::to_string(buf.duration_seconds()) + " s");
  }

  CueVector cues;
  const Spectrogram spec = stft_magnitude(buf);

  try {
    const BeatTrack beats = beat_track(onset_strength(spec));
    cues.set(CueId::kTempo, beats.tempo_bpm);
    try {
      cues.set(CueId::kMicrostructuralIrregularity, beat_irregularity(beats));
    } catch (const Error& e) {
      cues.set_missing(CueId::kMicrostructuralIrregularity, e.code());
    }
  } catch (const Error& e) {
    cues.set_missing(CueId::kTempo, e.code());
    cues.set_missing(CueId::kMicrostructuralIrregularity, ErrorCode::kInsufficientBeats);
  }

  const FrameSeries rms = rms_envelope(buf);
  const double level = mean(rms.values);
  cues.set(CueId::kSoundLevel, level);
  cues.set(CueId::kSoundLevelVariability, population_sd(rms.values, level));

  cues.set(CueId::kHighFrequencyEnergy, mean(spectral_bandwidth(spec).values));

  const std::vector<double> f0 = yin_f0(buf).voiced_f0();
  if (f0.empty()) {
    cues.set_missing(CueId::kPitchLevel, ErrorCode::kNoVoicedFrames);
    cues.set_missing(CueId::kPitchVariability, ErrorCode::kNoVoicedFrames);
  } else {
    const double centre = median(f0);
    std::vector<double> semitones(f0.size());
    for (std::size_t i = 0; i < f0.size(); ++i) semitones[i] = 12.0 * std::log2(f0[i] / centre);
    cues.set(CueId::kPitchLevel, centre);
    cues.set(CueId::kPitchVariability, population_sd(semitones, mean(semitones)));
  }

  try {
    cues.set(CueId::kToneAttackSpeed, mean(attack_durations(buf)));
  } catch (const Error& e) {
    cues.set_missing(CueId::kToneAttackSpeed, e.code());
  }
  return cues;
}

std::string cue_csv_header() {
  std::string h = "path";
  for (CueId id : kAllCues) {
    h += ',';
    h += cue_name(id);
  }
  return h;
}

std::string cue_csv_row(std::string_view path, const CueVector& cues) {
  std::string row = csv::quote(path);
  for (CueId id : kAllCues) {
    row += ',';
    if (auto v = cues.get(id)) row += csv::format_exact(*v);
  }
  return row;
}

}  // namespace emovec
