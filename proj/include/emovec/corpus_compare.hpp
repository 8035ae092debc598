#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emovec/emovector.hpp"

namespace emovec {

struct EmotionSummary {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> sd;  // sample SD, absent for n < 2
  std::optional<double> mean_normalized;  // mean of score/coverage over tracks with coverage > 0
};

struct EmotionStats {
  std::array<EmotionSummary, kEmotionCount> emotions{};
  const EmotionSummary& at(Emotion e) const { return emotions[index(e)]; }
};

/// Throws EmptyCorpus.
EmotionStats summarize(std::span<const Emovector> corpus);

enum class Direction { kAGreater, kBGreater, kTie };
std::string_view direction_label(Direction d);  // "A>B", "A<B", "tie"

struct MannWhitney {
  double u = 0.0;        // statistic for sample a: #{a > b} + 0.5 #{a == b}
  double p_value = 1.0;  // two-sided
  bool underpowered = false;
};

/// Normal approximation with tie-corrected variance and continuity
/// correction. Throws EmptyCorpus.
MannWhitney mann_whitney(std::span<const double> a, std::span<const double> b);

struct EmotionComparison {
  double mean_difference = 0.0;  // a - b
  MannWhitney test;
  Direction direction = Direction::kTie;
};

struct ComparisonReport {
  std::string label_a = "A";
  std::string label_b = "B";
  EmotionStats stats_a;
  EmotionStats stats_b;
  std::array<EmotionComparison, kEmotionCount> emotions{};
};

ComparisonReport compare(std::span<const Emovector> a, std::span<const Emovector> b);

/// Human-readable Markdown table, one row per emotion.
std::string render_markdown(const ComparisonReport& report);
/// Machine-readable document, schema "emovec-comparison/1".
std::string render_json(const ComparisonReport& report);

/// Reads an emovector CSV. Throws SchemaMismatch on a header or field error.
struct EmovectorTable {
  std::vector<std::string> paths;
  std::vector<RankVector> ranks;
  std::vector<Emovector> vectors;
};
EmovectorTable parse_emovector_csv(std::string_view text);

}  // namespace emovec
