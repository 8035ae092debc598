#include "emovec/emovector.hpp"

#include <cmath>
#include <stdexcept>

#include "emovec/csv.hpp"

namespace emovec {

std::string_view emotion_name(Emotion e) {
  static constexpr std::array<std::string_view, kEmotionCount> names = {
      "anger", "fear", "happiness", "sadness", "tenderness"};
  return names[index(e)];
}

Emovector score_emotions(const RankVector& ranks, const PrototypeTable& table, double band) {
  if (!(band > 0.0 && band <= 0.5)) throw std::invalid_argument("band must lie in (0, 0.5]");
  // Ranks and prototypes are short decimals; the slack keeps |r - p| == band inclusive.
  const double limit = band + 1e-12;
  Emovector ev;
  for (Emotion e : kAllEmotions) {
    for (CueId c : kAllCues) {
      const auto& proto = table[index(e)][index(c)];
      const auto rank = ranks.get(c);
      if (!proto || !rank) continue;
      ++ev.coverage[index(e)];
      if (std::abs(*rank - *proto) <= limit) ++ev.scores[index(e)];
    }
  }
  return ev;
}

std::string emovector_csv_header() {
  std::string h = "path";
  for (CueId c : kAllCues) h += ",rank_" + std::string(cue_name(c));
  for (Emotion e : kAllEmotions) h += "," + std::string(emotion_name(e));
  for (Emotion e : kAllEmotions) h += ",cov_" + std::string(emotion_name(e));
  return h;
}

std::string emovector_row(std::string_view path, const RankVector& ranks, const Emovector& ev) {
  std::string row = csv::quote(path);
  for (CueId c : kAllCues) {
    row += ',';
    if (auto r = ranks.get(c)) row += csv::format_fixed(*r, 4);
  }
  for (int s : ev.scores) row += "," + std::to_string(s);
  for (int c : ev.coverage) row += "," + std::to_string(c);
  return row;
}

}  // namespace emovec
