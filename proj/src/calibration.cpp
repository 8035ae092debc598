#include "emovec/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <json.hpp>

#include "emovec/config.hpp"
#include "emovec/error.hpp"

namespace emovec {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void schema_error(const std::string& what) {
  throw Error(ErrorCode::kSchemaMismatch, what);
}

Json metadata_to_json(const CalibrationMetadata& m) {
  Json j;
  j["analysis_rate"] = m.analysis_rate;
  j["frame_length"] = m.frame_length;
  j["hop_length"] = m.hop_length;
  j["onset_mel_bands"] = m.onset_mel_bands;
  j["tempo_prior_bpm"] = m.tempo_prior_bpm;
  j["tempo_prior_sigma_octaves"] = m.tempo_prior_sigma_octaves;
  j["beat_tightness"] = m.beat_tightness;
  j["yin_fmin"] = m.yin_fmin;
  j["yin_fmax"] = m.yin_fmax;
  j["yin_threshold"] = m.yin_threshold;
  j["attack_threshold"] = m.attack_threshold;
  j["sound_level_statistic"] = m.sound_level_statistic;
  j["variability_statistic"] = m.variability_statistic;
  j["artifact_version"] = m.artifact_version;
  j["benchmark_digest"] = m.benchmark_digest;
  return j;
}

template <typename T>
T field(const Json& j, const char* key) {
  if (!j.contains(key)) schema_error(std::string("missing field ") + key);
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception&) {
    schema_error(std::string("wrong type for ") + key);
  }
}

CalibrationMetadata metadata_from_json(const Json& j) {
  if (!j.is_object()) schema_error("metadata is not an object");
  CalibrationMetadata m;
  m.analysis_rate = field<int>(j, "analysis_rate");
  m.frame_length = field<int>(j, "frame_length");
  m.hop_length = field<int>(j, "hop_length");
  m.onset_mel_bands = field<int>(j, "onset_mel_bands");
  m.tempo_prior_bpm = field<double>(j, "tempo_prior_bpm");
  m.tempo_prior_sigma_octaves = field<double>(j, "tempo_prior_sigma_octaves");
  m.beat_tightness = field<double>(j, "beat_tightness");
  m.yin_fmin = field<double>(j, "yin_fmin");
  m.yin_fmax = field<double>(j, "yin_fmax");
  m.yin_threshold = field<double>(j, "yin_threshold");
  m.attack_threshold = field<double>(j, "attack_threshold");
  m.sound_level_statistic = field<std::string>(j, "sound_level_statistic");
  m.variability_statistic = field<std::string>(j, "variability_statistic");
  m.artifact_version = field<std::string>(j, "artifact_version");
  m.benchmark_digest = field<std::string>(j, "benchmark_digest");
  return m;
}

}  // namespace

CalibrationMetadata CalibrationMetadata::current(std::string benchmark_digest) {
  CalibrationMetadata m;
  m.analysis_rate = config::kAnalysisRate;
  m.frame_length = config::kFrameLength;
  m.hop_length = config::kHopLength;
  m.onset_mel_bands = config::kOnsetMelBands;
  m.tempo_prior_bpm = config::kTempoPriorBpm;
  m.tempo_prior_sigma_octaves = config::kTempoPriorSigmaOctaves;
  m.beat_tightness = config::kBeatTightness;
  m.yin_fmin = config::kYinFmin;
  m.yin_fmax = config::kYinFmax;
  m.yin_threshold = config::kYinThreshold;
  m.attack_threshold = config::kAttackThreshold;
  m.sound_level_statistic = "mean_rms";
  m.variability_statistic = "population_sd";
  m.artifact_version = config::kVersion;
  m.benchmark_digest = std::move(benchmark_digest);
  return m;
}

std::vector<std::string> CalibrationMetadata::config_differences(
    const CalibrationMetadata& other) const {
  std::vector<std::string> diffs;
  auto check = [&](const char* name, auto a, auto b) {
    if (a != b) diffs.emplace_back(name);
  };
  check("analysis_rate", analysis_rate, other.analysis_rate);
  check("frame_length", frame_length, other.frame_length);
  check("hop_length", hop_length, other.hop_length);
  check("onset_mel_bands", onset_mel_bands, other.onset_mel_bands);
  check("tempo_prior_bpm", tempo_prior_bpm, other.tempo_prior_bpm);
  check("tempo_prior_sigma_octaves", tempo_prior_sigma_octaves, other.tempo_prior_sigma_octaves);
  check("beat_tightness", beat_tightness, other.beat_tightness);
  check("yin_fmin", yin_fmin, other.yin_fmin);
  check("yin_fmax", yin_fmax, other.yin_fmax);
  check("yin_threshold", yin_threshold, other.yin_threshold);
  check("attack_threshold", attack_threshold, other.attack_threshold);
  check("sound_level_statistic", sound_level_statistic, other.sound_level_statistic);
  check("variability_statistic", variability_statistic, other.variability_statistic);
  return diffs;
}

std::size_t RankVector::coverage() const {
  return static_cast<std::size_t>(
      std::count_if(ranks.begin(), ranks.end(), [](const auto& r) { return r.has_value(); }));
}

QuantileGrid percentile_grid(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::kInsufficientBenchmark, "no values");
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  QuantileGrid grid{};
  for (std::size_t p = 0; p < kGridPoints; ++p) {
    const double pos = static_cast<double>(p) * static_cast<double>(n - 1) / 100.0;
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const double frac = pos - static_cast<double>(lo);
    double q = values[lo];
    if (lo + 1 < n && frac > 0.0) q += frac * (values[lo + 1] - values[lo]);
    grid[p] = std::min(values.back(), p > 0 ? std::max(q, grid[p - 1]) : q);
  }
  grid[0] = values.front();
  grid[kGridPoints - 1] = values.back();
  return grid;
}

Calibration build_calibration(std::span<const CueVector> cue_vectors,
                              CalibrationMetadata metadata) {
  Calibration cal;
  cal.metadata = std::move(metadata);
  for (CueId id : kAllCues) {
    std::vector<double> values;
    for (const CueVector& v : cue_vectors) {
      if (auto x = v.get(id)) values.push_back(*x);
    }
    if (values.size() < kMinBenchmarkSamples) {
      throw Error(ErrorCode::kInsufficientBenchmark,
                  std::string(cue_name(id)) + " has " + std::to_string(values.size()) +
                      " samples, need " + std::to_string(kMinBenchmarkSamples));
    }
    CueCalibration c;
    c.sample_count = values.size();
    c.grid = percentile_grid(std::move(values));
    cal.cues[index(id)] = c;
  }
  return cal;
}

double grid_rank(const QuantileGrid& grid, double value) {
  if (value < grid.front()) return 0.0;
  if (value > grid.back()) return 1.0;
  const auto lo = std::lower_bound(grid.begin(), grid.end(), value);
  const auto hi = std::upper_bound(grid.begin(), grid.end(), value);
  if (lo != hi) {
    const auto first = static_cast<double>(lo - grid.begin());
    const auto last = static_cast<double>(hi - grid.begin() - 1);
    return 0.5 * (first + last) / 100.0;
  }
  const auto p = static_cast<std::size_t>(lo - grid.begin()) - 1;
  const double frac = (value - grid[p]) / (grid[p + 1] - grid[p]);
  return std::clamp((static_cast<double>(p) + frac) / 100.0, 0.0, 1.0);
}

double percentile_rank(const Calibration& cal, CueId cue, double value) {
  const auto& c = cal.cues[index(cue)];
  if (!c) throw Error(ErrorCode::kNotCalibrated, std::string(cue_name(cue)));
  if (!std::isfinite(value)) throw Error(ErrorCode::kInvalidRange, "non-finite cue value");
  const double rank = grid_rank(c->grid, value);
  return inverted_polarity(cue) ? 1.0 - rank : rank;
}

RankVector rank_cues(const Calibration& cal, const CueVector& cues) {
  RankVector out;
  for (CueId id : kAllCues) {
    const auto v = cues.get(id);
    if (!v || !cal.cues[index(id)]) continue;
    out.ranks[index(id)] = percentile_rank(cal, id, *v);
  }
  return out;
}

std::string save_calibration(const Calibration& cal) {
  Json doc;
  doc["schema"] = kCalibrationSchema;
  doc["metadata"] = metadata_to_json(cal.metadata);
  Json cues = Json::array();
  for (CueId id : kAllCues) {
    const auto& c = cal.cues[index(id)];
    if (!c) continue;
    Json entry;
    entry["cue"] = cue_name(id);
    entry["sample_count"] = c->sample_count;
    entry["grid"] = c->grid;
    cues.push_back(std::move(entry));
  }
  doc["cues"] = std::move(cues);
  return doc.dump(2) + "\n";
}

LoadedCalibration load_calibration(std::string_view text, ConfigPolicy policy) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    schema_error(std::string("not a JSON document: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != kCalibrationSchema) {
    schema_error("expected schema " + std::string(kCalibrationSchema));
  }
  if (!doc.contains("metadata")) schema_error("missing metadata");
  if (!doc.contains("cues") || !doc["cues"].is_array()) schema_error("missing cues array");

  LoadedCalibration out;
  Calibration& cal = out.calibration;
  cal.metadata = metadata_from_json(doc["metadata"]);

  for (const Json& entry : doc["cues"]) {
    if (!entry.is_object()) schema_error("cue entry is not an object");
    const auto name = field<std::string>(entry, "cue");
    const auto id = cue_from_name(name);
    if (!id) schema_error("unknown cue " + name);
    if (cal.cues[index(*id)]) schema_error("duplicate cue " + name);
    const auto values = field<std::vector<double>>(entry, "grid");
    if (values.size() != kGridPoints) {
      schema_error(name + " grid has " + std::to_string(values.size()) + " points");
    }
    CueCalibration c;
    c.sample_count = field<std::size_t>(entry, "sample_count");
    for (std::size_t p = 0; p < kGridPoints; ++p) {
      if (!std::isfinite(values[p])) throw Error(ErrorCode::kCorruptGrid, name + " non-finite");
      if (p > 0 && values[p] < values[p - 1]) {
        throw Error(ErrorCode::kCorruptGrid, name + " grid decreases at p=" + std::to_string(p));
      }
      c.grid[p] = values[p];
    }
    if (c.sample_count < kMinBenchmarkSamples) {
      throw Error(ErrorCode::kCorruptGrid, name + " built from too few samples");
    }
    cal.cues[index(*id)] = c;
  }

  const auto diffs = cal.metadata.config_differences(CalibrationMetadata::current());
  if (!diffs.empty()) {
    std::string list;
    for (const auto& d : diffs) list += (list.empty() ? "" : ", ") + d;
    if (policy == ConfigPolicy::kStrict) {
      throw Error(ErrorCode::kConfigMismatch, "calibration differs in " + list);
    }
    out.warnings.push_back("ConfigMismatch: calibration differs in " + list);
  }
  return out;
}

}  // namespace emovec
