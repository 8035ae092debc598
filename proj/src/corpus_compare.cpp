#include "emovec/corpus_compare.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <json.hpp>
#include <limits>
#include <map>

#include "emovec/csv.hpp"
#include "emovec/error.hpp"

namespace emovec {
namespace {

constexpr std::size_t kUnderpoweredBelow = 4;

std::vector<double> scores_of(std::span<const Emovector> corpus, Emotion e) {
  std::vector<double> out;
  out.reserve(corpus.size());
  for (const Emovector& v : corpus) out.push_back(v.score(e));
  return out;
}

std::string fixed_or_dash(const std::optional<double>& v, int decimals) {
  return v ? csv::format_fixed(*v, decimals) : std::string("—");
}

}  // namespace

EmotionStats summarize(std::span<const Emovector> corpus) {
  if (corpus.empty()) throw Error(ErrorCode::kEmptyCorpus, "no emovectors");
  EmotionStats stats;
  const double n = static_cast<double>(corpus.size());
  for (Emotion e : kAllEmotions) {
    EmotionSummary& s = stats.emotions[index(e)];
    s.n = corpus.size();
    double sum = 0.0, normalized = 0.0;
    std::size_t covered = 0;
    for (const Emovector& v : corpus) {
      sum += v.score(e);
      if (v.cover(e) > 0) {
        normalized += static_cast<double>(v.score(e)) / v.cover(e);
        ++covered;
      }
    }
    s.mean = sum / n;
    if (covered > 0) s.mean_normalized = normalized / static_cast<double>(covered);
    if (corpus.size() >= 2) {
      double ss = 0.0;
      for (const Emovector& v : corpus) ss += (v.score(e) - s.mean) * (v.score(e) - s.mean);
      s.sd = std::sqrt(ss / (n - 1.0));
    }
  }
  return stats;
}

std::string_view direction_label(Direction d) {
  switch (d) {
    case Direction::kAGreater: return "A>B";
    case Direction::kBGreater: return "A<B";
    case Direction::kTie: return "tie";
  }
  return "tie";
}

MannWhitney mann_whitney(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kEmptyCorpus, "Mann-Whitney needs two samples");
  const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
  const double n = na + nb;

  std::vector<double> pooled(a.begin(), a.end());
  pooled.insert(pooled.end(), b.begin(), b.end());
  std::sort(pooled.begin(), pooled.end());

  // Mid-ranks; tie groups feed the variance correction.
  std::map<double, double> mid_rank;
  double tie_term = 0.0;
  for (std::size_t i = 0; i < pooled.size();) {
    std::size_t j = i;
    while (j < pooled.size() && pooled[j] == pooled[i]) ++j;
    const double t = static_cast<double>(j - i);
    mid_rank[pooled[i]] = 0.5 * static_cast<double>(i + 1 + j);
    tie_term += t * t * t - t;
    i = j;
  }
  double rank_sum = 0.0;
  for (double x : a) rank_sum += mid_rank[x];

  MannWhitney out;
  out.u = rank_sum - na * (na + 1.0) / 2.0;
  out.underpowered = std::min(a.size(), b.size()) < kUnderpoweredBelow;

  const double mu = na * nb / 2.0;
  const double variance = na * nb / 12.0 * ((n + 1.0) - tie_term / (n * (n - 1.0)));
  if (!(variance > 0.0)) {
    out.p_value = 1.0;
    return out;
  }
  const double z = std::max(0.0, std::abs(out.u - mu) - 0.5) / std::sqrt(variance);
  out.p_value = std::clamp(std::erfc(z / std::sqrt(2.0)), std::numeric_limits<double>::min(), 1.0);
  return out;
}

ComparisonReport compare(std::span<const Emovector> a, std::span<const Emovector> b) {
  ComparisonReport report;
  report.stats_a = summarize(a);
  report.stats_b = summarize(b);
  for (Emotion e : kAllEmotions) {
    EmotionComparison& c = report.emotions[index(e)];
    c.mean_difference = report.stats_a.at(e).mean - report.stats_b.at(e).mean;
    const auto sa = scores_of(a, e), sb = scores_of(b, e);
    c.test = mann_whitney(sa, sb);
    c.direction = c.mean_difference > 0.0   ? Direction::kAGreater
                  : c.mean_difference < 0.0 ? Direction::kBGreater
                                            : Direction::kTie;
  }
  return report;
}

std::string render_markdown(const ComparisonReport& r) {
  std::string out;
  out += "| Emotion | n (A) | mean (A) | sd (A) | n (B) | mean (B) | sd (B) | Δmean | U | p | Direction |\n";
  out += "|---|---:|---:|---:|---:|---:|---:|---:|---:|---:|:---:|\n";
  bool any_underpowered = false;
  for (Emotion e : kAllEmotions) {
    const auto& a = r.stats_a.at(e);
    const auto& b = r.stats_b.at(e);
    const auto& c = r.emotions[index(e)];
    any_underpowered = any_underpowered || c.test.underpowered;
    out += "| " + std::string(emotion_name(e));
    out += " | " + std::to_string(a.n) + " | " + csv::format_fixed(a.mean, 3) + " | " +
           fixed_or_dash(a.sd, 3);
    out += " | " + std::to_string(b.n) + " | " + csv::format_fixed(b.mean, 3) + " | " +
           fixed_or_dash(b.sd, 3);
    out += " | " + csv::format_fixed(c.mean_difference, 3) + " | " +
           csv::format_fixed(c.test.u, 1) + " | " + csv::format_fixed(c.test.p_value, 4) +
           (c.test.underpowered ? "*" : "") + " | " + std::string(direction_label(c.direction)) +
           " |\n";
  }
  out += "\nA = " + r.label_a + "; B = " + r.label_b + ".\n";
  out += "sd is the sample standard deviation (n-1 denominator). U and p: two-sided "
         "Mann-Whitney test on per-track scores, normal approximation with tie and "
         "continuity correction.\n";
  if (any_underpowered) out += "* underpowered: fewer than 4 tracks in a corpus.\n";
  return out;
}

std::string render_json(const ComparisonReport& r) {
  using Json = nlohmann::ordered_json;
  auto summary = [](const EmotionSummary& s) {
    Json j;
    j["n"] = s.n;
    j["mean"] = s.mean;
    j["sd"] = s.sd ? Json(*s.sd) : Json(nullptr);
    j["mean_normalized"] = s.mean_normalized ? Json(*s.mean_normalized) : Json(nullptr);
    return j;
  };
  Json doc;
  doc["schema"] = "emovec-comparison/1";
  doc["corpus_a"] = r.label_a;
  doc["corpus_b"] = r.label_b;
  doc["sd_convention"] = "sample";
  doc["p_method"] = "normal_approximation_tie_corrected_continuity_corrected";
  Json rows = Json::array();
  for (Emotion e : kAllEmotions) {
    const auto& c = r.emotions[index(e)];
    Json row;
    row["emotion"] = emotion_name(e);
    row["a"] = summary(r.stats_a.at(e));
    row["b"] = summary(r.stats_b.at(e));
    row["mean_difference"] = c.mean_difference;
    row["mann_whitney_u"] = c.test.u;
    row["p_value"] = c.test.p_value;
    row["underpowered"] = c.test.underpowered;
    row["direction"] = direction_label(c.direction);
    rows.push_back(std::move(row));
  }
  doc["emotions"] = std::move(rows);
  return doc.dump(2) + "\n";
}

EmovectorTable parse_emovector_csv(std::string_view text) {
  std::vector<csv::Row> rows;
  try {
    rows = csv::parse(text);
  } catch (const std::invalid_argument& e) {
    throw Error(ErrorCode::kSchemaMismatch, e.what());
  }
  if (rows.empty()) throw Error(ErrorCode::kSchemaMismatch, "missing header");
  const csv::Row expected = csv::parse(emovector_csv_header()).front();
  if (rows.front() != expected) throw Error(ErrorCode::kSchemaMismatch, "unexpected header");

  auto parse_number = [](const std::string& s, auto& out, std::size_t line) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw Error(ErrorCode::kSchemaMismatch,
                  "line " + std::to_string(line) + ": bad number '" + s + "'");
    }
  };

  EmovectorTable table;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const csv::Row& row = rows[i];
    if (row.size() == 1 && row[0].empty()) continue;
    if (row.size() != expected.size()) {
      throw Error(ErrorCode::kSchemaMismatch, "line " + std::to_string(i + 1) + ": " +
                                                  std::to_string(row.size()) + " fields");
    }
    RankVector ranks;
    for (std::size_t c = 0; c < kCueCount; ++c) {
      if (row[1 + c].empty()) continue;
      double r = 0.0;
      parse_number(row[1 + c], r, i + 1);
      if (r < 0.0 || r > 1.0) throw Error(ErrorCode::kSchemaMismatch, "rank outside [0, 1]");
      ranks.ranks[c] = r;
    }
    Emovector ev;
    for (std::size_t e = 0; e < kEmotionCount; ++e) {
      parse_number(row[1 + kCueCount + e], ev.scores[e], i + 1);
      parse_number(row[1 + kCueCount + kEmotionCount + e], ev.coverage[e], i + 1);
      if (ev.scores[e] < 0 || ev.scores[e] > ev.coverage[e]) {
        throw Error(ErrorCode::kSchemaMismatch, "score exceeds coverage");
      }
    }
    table.paths.push_back(row[0]);
    table.ranks.push_back(ranks);
    table.vectors.push_back(ev);
  }
  return table;
}

}  // namespace emovec
