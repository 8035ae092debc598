// emovec: batch emotion-cue analysis.
//
//   emovec calibrate   --input DIR --out FILE [--cues-out FILE]
//   emovec analyze     --calibration FILE --input PATH... --out FILE
//                      [--cues-out FILE] [--band R] [--strict]
//   emovec compare     --a FILE --b FILE --out-prefix PATH
//   emovec render-midi --input FILE --out FILE
//
// Exit status: 0 success, 1 I/O, 2 validation or configuration, 3 empty result.

#include <omp.h>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "emovec/audio_io.hpp"
#include "emovec/calibration.hpp"
#include "emovec/config.hpp"
#include "emovec/corpus_compare.hpp"
#include "emovec/error.hpp"
#include "emovec/midi_render.hpp"
#include "emovec/pipeline.hpp"

namespace fs = std::filesystem;
using namespace emovec;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitInvalid = 2;
constexpr int kExitEmpty = 3;

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo:
      return kExitIo;
    case ErrorCode::kEmptyCorpus:
      return kExitEmpty;
    default:
      return kExitInvalid;
  }
}

void report_tracks(const std::vector<pipeline::TrackCues>& tracks) {
  for (const auto& t : tracks) {
    for (const auto& w : t.warnings) std::cerr << "warning: " << t.path.string() << ": " << w << "\n";
    if (!t.cues) std::cerr << "skipped " << t.path.string() << ": " << t.error << "\n";
  }
}

std::size_t survivors(const std::vector<pipeline::TrackCues>& tracks) {
  std::size_t n = 0;
  for (const auto& t : tracks) n += t.cues.has_value();
  return n;
}

struct CalibrateArgs {
  fs::path input;
  fs::path out;
  fs::path cues_out;
};

int run_calibrate(const CalibrateArgs& args, int jobs) {
  const std::vector<std::string> exts = {".wav"};
  const std::vector<fs::path> roots = {args.input};
  const auto files = pipeline::collect_inputs(roots, exts);
  const auto tracks = pipeline::extract_all(files, jobs);
  report_tracks(tracks);

  const std::size_t ok = survivors(tracks);
  if (ok < kMinBenchmarkSamples) {
    std::cerr << "error: " << ok << " of " << files.size()
              << " benchmark files decoded; at least " << kMinBenchmarkSamples << " are required\n";
    return kExitInvalid;
  }

  std::vector<CueVector> vectors;
  for (const auto& t : tracks) {
    if (t.cues) vectors.push_back(*t.cues);
  }
  const Calibration cal =
      build_calibration(vectors, CalibrationMetadata::current(pipeline::corpus_digest(tracks)));
  write_text_file(args.out, save_calibration(cal));
  if (!args.cues_out.empty()) write_text_file(args.cues_out, pipeline::cue_csv(tracks));

  std::cout << "calibrated on " << ok << " of " << files.size() << " files\n";
  for (CueId id : kAllCues) {
    std::cout << "  " << cue_name(id) << ": " << cal.cues[index(id)]->sample_count << "\n";
  }
  return kExitOk;
}

struct AnalyzeArgs {
  fs::path calibration;
  std::vector<fs::path> inputs;
  fs::path out;
  fs::path cues_out;
  double band = config::kDefaultBand;
  bool strict = false;
};

int run_analyze(const AnalyzeArgs& args, int jobs) {
  if (!(args.band > 0.0 && args.band <= 0.5)) {
    std::cerr << "error: --band must lie in (0, 0.5]\n";
    return kExitInvalid;
  }
  const std::vector<std::uint8_t> raw = read_file(args.calibration);
  const LoadedCalibration loaded =
      load_calibration(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()),
                       args.strict ? ConfigPolicy::kStrict : ConfigPolicy::kWarn);
  for (const auto& w : loaded.warnings) std::cerr << "warning: " << w << "\n";

  const std::vector<std::string> exts = {".wav", ".mid", ".midi"};
  const auto files = pipeline::collect_inputs(args.inputs, exts);
  const auto tracks = pipeline::extract_all(files, jobs);
  report_tracks(tracks);

  const auto rows = pipeline::score_tracks(tracks, loaded.calibration, args.band);
  write_text_file(args.out, pipeline::emovector_csv(rows));
  if (!args.cues_out.empty()) write_text_file(args.cues_out, pipeline::cue_csv(tracks));

  std::cerr << "analyzed " << rows.size() << " of " << files.size() << " files\n";
  return rows.empty() ? kExitEmpty : kExitOk;
}

struct CompareArgs {
  fs::path a;
  fs::path b;
  std::string out_prefix;
};

EmovectorTable read_table(const fs::path& path) {
  const std::vector<std::uint8_t> raw = read_file(path);
  return parse_emovector_csv(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
}

int run_compare(const CompareArgs& args) {
  const EmovectorTable a = read_table(args.a);
  const EmovectorTable b = read_table(args.b);
  ComparisonReport report = compare(a.vectors, b.vectors);
  report.label_a = args.a.filename().string();
  report.label_b = args.b.filename().string();
  const std::string md = render_markdown(report);
  write_text_file(args.out_prefix + ".md", md);
  write_text_file(args.out_prefix + ".json", render_json(report));
  std::cout << md;
  return kExitOk;
}

struct RenderArgs {
  fs::path input;
  fs::path out;
};

int run_render(const RenderArgs& args) {
  std::vector<std::string> warnings;
  const Timeline timeline = parse_smf(read_file(args.input), &warnings);
  if (timeline.notes.empty()) warnings.push_back("no pitched notes; wrote 0.1 s of silence");
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
  write_file(args.out, encode_wav_pcm16(synthesize(timeline, config::kAnalysisRate)));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acoustic emotion-cue analysis of music corpora"};
  app.set_version_flag("--version", std::string(config::kVersion));
  app.require_subcommand(1);

  int jobs = 0;
  app.add_option("-j,--jobs", jobs, "Worker threads (default: EMOVEC_JOBS or processor count)")
      ->check(CLI::PositiveNumber);

  CalibrateArgs cal;
  auto* calibrate = app.add_subcommand("calibrate", "Build percentile grids from a benchmark corpus");
  calibrate->add_option("--input", cal.input, "Benchmark directory (.wav, searched recursively)")
      ->required();
  calibrate->add_option("--out", cal.out, "Calibration file to write")->required();
  calibrate->add_option("--cues-out", cal.cues_out, "Optional raw-cue CSV");

  AnalyzeArgs an;
  auto* analyze = app.add_subcommand("analyze", "Score tracks against a calibration");
  analyze->add_option("--calibration", an.calibration, "Calibration file")->required();
  analyze->add_option("--input", an.inputs, "Files or directories (.wav, .mid, .midi)")
      ->required()
      ->expected(1, -1);
  analyze->add_option("--out", an.out, "Emovector CSV to write")->required();
  analyze->add_option("--cues-out", an.cues_out, "Optional raw-cue CSV");
  analyze->add_option("--band", an.band, "Match band around each prototype, in (0, 0.5]");
  analyze->add_flag("--strict", an.strict, "Fail when the calibration configuration differs");

  CompareArgs cmp;
  auto* comparec = app.add_subcommand("compare", "Compare the emovectors of two corpora");
  comparec->add_option("--a", cmp.a, "Emovector CSV of corpus A")->required();
  comparec->add_option("--b", cmp.b, "Emovector CSV of corpus B")->required();
  comparec->add_option("--out-prefix", cmp.out_prefix, "Writes PREFIX.md and PREFIX.json")
      ->required();

  RenderArgs rm;
  auto* render = app.add_subcommand("render-midi", "Render a Standard MIDI File to WAV");
  render->add_option("--input", rm.input, "SMF format 0 or 1")->required();
  render->add_option("--out", rm.out, "16-bit mono WAV to write")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  if (jobs <= 0) jobs = pipeline::default_jobs();
  omp_set_num_threads(jobs);

  try {
    if (calibrate->parsed()) return run_calibrate(cal, jobs);
    if (analyze->parsed()) return run_analyze(an, jobs);
    if (comparec->parsed()) return run_compare(cmp);
    if (render->parsed()) return run_render(rm);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitInvalid;
}
