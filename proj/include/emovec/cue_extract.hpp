#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "emovec/audio_io.hpp"
#include "emovec/dsp_core.hpp"
#include "emovec/error.hpp"

namespace emovec {

/// Ordinal order is part of the file formats; do not reorder.
enum class CueId : std::size_t {
  kTempo,
  kSoundLevel,
  kSoundLevelVariability,
  kHighFrequencyEnergy,
  kPitchLevel,
  kPitchVariability,
  kToneAttackSpeed,
  kMicrostructuralIrregularity,
};

inline constexpr std::size_t kCueCount = 8;

inline constexpr std::array<CueId, kCueCount> kAllCues = {
    CueId::kTempo,          CueId::kSoundLevel,       CueId::kSoundLevelVariability,
    CueId::kHighFrequencyEnergy, CueId::kPitchLevel, CueId::kPitchVariability,
    CueId::kToneAttackSpeed, CueId::kMicrostructuralIrregularity};

constexpr std::size_t index(CueId id) { return static_cast<std::size_t>(id); }

/// snake_case name used in CSV headers and calibration files.
std::string_view cue_name(CueId id);
std::optional<CueId> cue_from_name(std::string_view name);

/// Raw cue values. Each cue is either a finite value or missing with a reason.
class CueVector {
 public:
  std::optional<double> get(CueId id) const { return values_[index(id)]; }
  std::optional<ErrorCode> missing_reason(CueId id) const { return reasons_[index(id)]; }
  bool present(CueId id) const { return values_[index(id)].has_value(); }

  void set(CueId id, double value) {
    values_[index(id)] = value;
    reasons_[index(id)].reset();
  }
  void set_missing(CueId id, ErrorCode reason) {
    values_[index(id)].reset();
    reasons_[index(id)] = reason;
  }

  bool operator==(const CueVector&) const = default;

 private:
  std::array<std::optional<double>, kCueCount> values_{};
  std::array<std::optional<ErrorCode>, kCueCount> reasons_{};
};

/// All eight cues of one track at the analysis rate. Throws TooShort below
/// one second and InvalidRate for any other sample rate; per-cue failures
/// become missing values.
CueVector extract_cues(const AudioBuffer& buf);

/// Attack duration of every energy event, in seconds. Events are maximal
/// runs of block RMS at or above 10% of its maximum; an attack lasts from
/// the run start through its first local maximum. Throws NoEvents.
std::vector<double> attack_durations(const AudioBuffer& buf);
std::vector<double> attack_durations(const FrameSeries& energy);

/// Mean relative deviation of inter-beat intervals from the tracked period.
/// Throws InsufficientBeats for fewer than four beats.
double beat_irregularity(const AudioBuffer& buf);
double beat_irregularity(const BeatTrack& beats);

/// Raw-cue CSV: header plus one row per track, missing values empty.
std::string cue_csv_header();
std::string cue_csv_row(std::string_view path, const CueVector& cues);

}  // namespace emovec
