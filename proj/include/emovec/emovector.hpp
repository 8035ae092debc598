#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "emovec/calibration.hpp"

namespace emovec {

enum class Emotion : std::size_t { kAnger, kFear, kHappiness, kSadness, kTenderness };

inline constexpr std::size_t kEmotionCount = 5;
inline constexpr std::array<Emotion, kEmotionCount> kAllEmotions = {
    Emotion::kAnger, Emotion::kFear, Emotion::kHappiness, Emotion::kSadness, Emotion::kTenderness};

constexpr std::size_t index(Emotion e) { return static_cast<std::size_t>(e); }
std::string_view emotion_name(Emotion e);

/// Target rank per emotion and cue; nullopt marks a cue that does not
/// characterize the emotion.
using PrototypeTable = std::array<std::array<std::optional<double>, kCueCount>, kEmotionCount>;

/// Indicative cue levels per emotion (columns in CueId order; pitch contour
/// is not measured and has no column).
inline constexpr PrototypeTable kPrototypes = {{
    //  tempo  level  lvl-var  hf-energy  pitch  pitch-var  attack       irregularity
    {{1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 0.5}},                    // anger
    {{1.0, 0.0, 1.0, 0.0, 1.0, 0.0, std::nullopt, 1.0}},           // fear
    {{1.0, 0.75, std::nullopt, 0.5, 1.0, 1.0, 1.0, 0.25}},         // happiness
    {{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.5}},                    // sadness
    {{0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0}},                    // tenderness
}};

struct Emovector {
  std::array<int, kEmotionCount> scores{};
  std::array<int, kEmotionCount> coverage{};

  int score(Emotion e) const { return scores[index(e)]; }
  int cover(Emotion e) const { return coverage[index(e)]; }
  bool operator==(const Emovector&) const = default;
};

/// Counts, per emotion, the applicable present cues whose rank lies within
/// `band` of the prototype (inclusive). Requires 0 < band <= 0.5.
Emovector score_emotions(const RankVector& ranks, const PrototypeTable& table = kPrototypes,
                         double band = config::kDefaultBand);

/// path, 8 ranks (4 decimals, empty when missing), 5 scores, 5 coverages.
std::string emovector_csv_header();
std::string emovector_row(std::string_view path, const RankVector& ranks, const Emovector& ev);

}  // namespace emovec
