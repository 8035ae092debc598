#include "emovec/pipeline.hpp"

#include <omp.h>
#include <openssl/evp.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <set>

#include "emovec/audio_io.hpp"
#include "emovec/config.hpp"
#include "emovec/error.hpp"
#include "emovec/midi_render.hpp"

namespace emovec::pipeline {
namespace {

std::string lower_extension(const fs::path& p) {
  std::string ext = p.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

bool is_midi(const fs::path& p) {
  const std::string ext = lower_extension(p);
  return ext == ".mid" || ext == ".midi";
}

TrackCues process(const fs::path& path) {
  TrackCues out;
  out.path = path;
  try {
    const std::vector<std::uint8_t> bytes = read_file(path);
    out.sha256 = sha256_hex(bytes);
    AudioBuffer audio = is_midi(path) ? render_midi_file(bytes, &out.warnings) : decode_wav(bytes);
    if (audio.sample_rate != config::kAnalysisRate) audio = resample(audio, config::kAnalysisRate);
    out.cues = extract_cues(audio);
  } catch (const std::exception& e) {
    out.cues.reset();
    out.error = e.what();
  }
  return out;
}

}  // namespace

std::vector<fs::path> collect_inputs(std::span<const fs::path> roots,
                                     std::span<const std::string> extensions) {
  auto wanted = [&](const fs::path& p) {
    return std::find(extensions.begin(), extensions.end(), lower_extension(p)) != extensions.end();
  };
  std::set<fs::path> found;
  for (const fs::path& root : roots) {
    std::error_code ec;
    if (fs::is_directory(root, ec)) {
      for (auto it = fs::recursive_directory_iterator(root, ec);
           !ec && it != fs::recursive_directory_iterator(); it.increment(ec)) {
        if (it->is_regular_file(ec) && wanted(it->path())) found.insert(it->path());
      }
      if (ec) throw Error(ErrorCode::kIo, "cannot list " + root.string() + ": " + ec.message());
    } else if (fs::is_regular_file(root, ec)) {
      found.insert(root);
    } else {
      throw Error(ErrorCode::kIo, "no such file or directory: " + root.string());
    }
  }
  return {found.begin(), found.end()};
}

AudioBuffer render_midi_file(std::span<const std::uint8_t> smf, std::vector<std::string>* warnings) {
  const Timeline timeline = parse_smf(smf, warnings);
  if (timeline.notes.empty() && warnings) {
    warnings->push_back("no pitched notes; rendering 0.1 s of silence");
  }
  const AudioBuffer rendered = synthesize(timeline, config::kAnalysisRate);
  return decode_wav(encode_wav_pcm16(rendered));
}

AudioBuffer load_audio(const fs::path& path, std::vector<std::string>* warnings) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  AudioBuffer audio = is_midi(path) ? render_midi_file(bytes, warnings) : decode_wav(bytes);
  if (audio.sample_rate != config::kAnalysisRate) audio = resample(audio, config::kAnalysisRate);
  return audio;
}

std::vector<TrackCues> extract_all(const std::vector<fs::path>& files, int jobs) {
  std::vector<TrackCues> results(files.size());
  const auto n = static_cast<long>(files.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs)) if (jobs > 1 && n > 1)
  for (long i = 0; i < n; ++i) {
    results[static_cast<std::size_t>(i)] = process(files[static_cast<std::size_t>(i)]);
  }
  return results;
}

std::string sha256_hex(std::span<const std::uint8_t> bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[digest[i] >> 4];
    out += hex[digest[i] & 0xF];
  }
  return out;
}

std::string corpus_digest(std::span<const TrackCues> tracks) {
  std::string joined;
  for (const TrackCues& t : tracks) {
    if (t.cues) joined += t.sha256 + "\n";
  }
  return "sha256:" +
         sha256_hex(std::span(reinterpret_cast<const std::uint8_t*>(joined.data()), joined.size()));
}

int default_jobs() {
  if (const char* env = std::getenv("EMOVEC_JOBS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 1024L));
  }
  return std::max(1, omp_get_num_procs());
}

std::string cue_csv(std::span<const TrackCues> tracks) {
  std::string out = cue_csv_header() + "\n";
  for (const TrackCues& t : tracks) {
    if (t.cues) out += cue_csv_row(t.path.string(), *t.cues) + "\n";
  }
  return out;
}

std::vector<AnalyzedTrack> score_tracks(std::span<const TrackCues> tracks, const Calibration& cal,
                                        double band) {
  std::vector<AnalyzedTrack> rows;
  for (const TrackCues& t : tracks) {
    if (!t.cues) continue;
    AnalyzedTrack row;
    row.path = t.path.string();
    row.ranks = rank_cues(cal, *t.cues);
    row.emovector = score_emotions(row.ranks, kPrototypes, band);
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string emovector_csv(std::span<const AnalyzedTrack> rows) {
  std::string out = emovector_csv_header() + "\n";
  for (const AnalyzedTrack& r : rows) out += emovector_row(r.path, r.ranks, r.emovector) + "\n";
  return out;
}

}  // namespace emovec::pipeline
