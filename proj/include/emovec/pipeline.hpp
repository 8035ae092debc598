#pragma once

// Corpus-level batch processing behind the command-line tool.

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "emovec/calibration.hpp"
#include "emovec/cue_extract.hpp"
#include "emovec/emovector.hpp"

namespace emovec::pipeline {

namespace fs = std::filesystem;

/// Files under the given roots (directories are searched recursively) whose
/// extension, lower-cased, is one of `extensions`. Sorted by path, without
/// duplicates. Throws Io for a root that does not exist.
std::vector<fs::path> collect_inputs(std::span<const fs::path> roots,
                                     std::span<const std::string> extensions);

/// .wav decoded and resampled to the analysis rate; .mid/.midi rendered,
/// stored as 16-bit PCM and decoded again, exactly as if the rendered file
/// had been written to disk and analyzed.
AudioBuffer load_audio(const fs::path& path, std::vector<std::string>* warnings = nullptr);

AudioBuffer render_midi_file(std::span<const std::uint8_t> smf,
                             std::vector<std::string>* warnings = nullptr);

struct TrackCues {
  fs::path path;
  std::optional<CueVector> cues;  // empty when the file failed
  std::string error;
  std::string sha256;
  std::vector<std::string> warnings;
};

/// Extracts cues for every file with up to `jobs` worker threads. Results are
/// in the order of `files` regardless of scheduling.
std::vector<TrackCues> extract_all(const std::vector<fs::path>& files, int jobs);

/// SHA-256 over the per-file digests of the successful tracks, in order.
std::string corpus_digest(std::span<const TrackCues> tracks);

std::string sha256_hex(std::span<const std::uint8_t> bytes);

/// Parallelism: EMOVEC_JOBS when set to a positive integer, else the number
/// of processors.
int default_jobs();

std::string cue_csv(std::span<const TrackCues> tracks);

struct AnalyzedTrack {
  std::string path;
  RankVector ranks;
  Emovector emovector;
};

std::vector<AnalyzedTrack> score_tracks(std::span<const TrackCues> tracks,
                                        const Calibration& cal, double band);

std::string emovector_csv(std::span<const AnalyzedTrack> rows);

}  // namespace emovec::pipeline
