#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "emovec/cue_extract.hpp"

namespace emovec {

inline constexpr std::size_t kGridPoints = 101;
inline constexpr std::size_t kMinBenchmarkSamples = 10;
inline constexpr std::string_view kCalibrationSchema = "emovec-calibration/1";

using QuantileGrid = std::array<double, kGridPoints>;

/// Analysis configuration a calibration was built under.
struct CalibrationMetadata {
  int analysis_rate = 0;
  int frame_length = 0;
  int hop_length = 0;
  int onset_mel_bands = 0;
  double tempo_prior_bpm = 0.0;
  double tempo_prior_sigma_octaves = 0.0;
  double beat_tightness = 0.0;
  double yin_fmin = 0.0;
  double yin_fmax = 0.0;
  double yin_threshold = 0.0;
  double attack_threshold = 0.0;
  std::string sound_level_statistic;
  std::string variability_statistic;
  std::string artifact_version;
  std::string benchmark_digest;

  /// The running build's configuration.
  static CalibrationMetadata current(std::string benchmark_digest = {});

  /// Names of analysis parameters that differ from `other` (version and
  /// digest are informational and never compared).
  std::vector<std::string> config_differences(const CalibrationMetadata& other) const;

  bool operator==(const CalibrationMetadata&) const = default;
};

struct CueCalibration {
  QuantileGrid grid{};
  std::size_t sample_count = 0;
  bool operator==(const CueCalibration&) const = default;
};

struct Calibration {
  CalibrationMetadata metadata;
  std::array<std::optional<CueCalibration>, kCueCount> cues{};

  bool operator==(const Calibration&) const = default;
};

/// Ranks in [0, 1] after polarity, so 1 always means "more" of the cue's
/// quality (for tone attacks: faster).
struct RankVector {
  std::array<std::optional<double>, kCueCount> ranks{};

  std::optional<double> get(CueId id) const { return ranks[index(id)]; }
  std::size_t coverage() const;
};

/// 101 linearly interpolated percentiles (p = 0..100) of the values.
QuantileGrid percentile_grid(std::vector<double> values);

/// Throws InsufficientBenchmark naming the first cue with fewer than ten
/// present values.
Calibration build_calibration(std::span<const CueVector> cue_vectors,
                              CalibrationMetadata metadata);

/// Only tone_attack_speed is inverted: shorter attack durations rank higher.
constexpr bool inverted_polarity(CueId id) { return id == CueId::kToneAttackSpeed; }

/// Position of value in the grid without polarity: 0 below the minimum, 1
/// above the maximum, mid-rank over flat spans, linear in between.
double grid_rank(const QuantileGrid& grid, double value);

/// Throws NotCalibrated if the calibration has no grid for the cue.
double percentile_rank(const Calibration& cal, CueId cue, double value);

/// Missing cues (and cues without a grid) stay missing.
RankVector rank_cues(const Calibration& cal, const CueVector& cues);

std::string save_calibration(const Calibration& cal);

enum class ConfigPolicy { kStrict, kWarn };

struct LoadedCalibration {
  Calibration calibration;
  std::vector<std::string> warnings;
};

/// Throws SchemaMismatch, CorruptGrid, or (under kStrict) ConfigMismatch.
LoadedCalibration load_calibration(std::string_view text, ConfigPolicy policy = ConfigPolicy::kStrict);

}  // namespace emovec
