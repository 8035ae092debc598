#pragma once

// Synthetic melodic tracks and on-disk corpora for end-to-end tests.

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>

#include "emovec/audio_io.hpp"
#include "emovec/midi_render.hpp"
#include "support/signals.hpp"

namespace emovec::test {

struct TrackStyle {
  double bpm = 120.0;
  int base_pitch = 60;
  int span = 12;            // semitones above base_pitch
  double amplitude = 0.5;   // peak of the melody before noise
  double noise = 0.0;       // white-noise amplitude added on top
  double gate = 0.8;        // fraction of the beat a note sounds
  double jitter = 0.0;      // onset jitter, fraction of the beat
  double seconds = 30.0;
  unsigned seed = 1;
};

inline AudioBuffer styled_track(const TrackStyle& s) {
  std::mt19937 rng(s.seed);
  std::uniform_int_distribution<int> step(0, std::max(0, s.span));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double beat = 60.0 / s.bpm;
  Timeline tl;
  for (double t = 0.2; t + beat < s.seconds; t += beat) {
    const double onset = std::max(0.0, t + s.jitter * beat * u(rng));
    tl.notes.push_back(NoteEvent{onset, s.gate * beat, s.base_pitch + step(rng), 100, 0});
  }
  std::sort(tl.notes.begin(), tl.notes.end(),
            [](const NoteEvent& a, const NoteEvent& b) { return a.onset_seconds < b.onset_seconds; });
  for (const NoteEvent& n : tl.notes) tl.total_seconds = std::max(tl.total_seconds, n.onset_seconds + n.duration_seconds);

  AudioBuffer out = synthesize(tl, kRate);
  out.samples.resize(static_cast<std::size_t>(s.seconds * kRate), 0.0);
  std::mt19937 noise_rng(s.seed + 1000);
  std::uniform_real_distribution<double> nz(-1.0, 1.0);
  const double gain = s.amplitude / kRenderPeak;
  for (double& x : out.samples) {
    x = std::clamp(x * gain + s.noise * nz(noise_rng), -1.0, 1.0);
  }
  return out;
}

/// Varied styles spanning the range the test corpora are drawn from.
inline TrackStyle benchmark_style(unsigned i, double seconds = 30.0) {
  std::mt19937 rng(1234 + i);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  TrackStyle s;
  s.bpm = 60.0 + 120.0 * u(rng);
  s.base_pitch = 45 + static_cast<int>(30 * u(rng));
  s.span = 2 + static_cast<int>(14 * u(rng));
  s.amplitude = 0.05 + 0.85 * u(rng);
  s.noise = 0.08 * u(rng) * s.amplitude;
  s.gate = 0.3 + 0.65 * u(rng);
  s.jitter = 0.08 * u(rng);
  s.seconds = seconds;
  s.seed = i + 1;
  return s;
}

/// Loud, fast, bright, high; `quiet` is the opposite corner.
inline TrackStyle energetic_style(unsigned i, double seconds) {
  TrackStyle s;
  s.bpm = 160.0 + 4.0 * i;
  s.base_pitch = 74 + static_cast<int>(i % 3);
  s.span = 12;
  s.amplitude = 0.85;
  s.noise = 0.06;
  s.gate = 0.5;
  s.seconds = seconds;
  s.seed = 500 + i;
  return s;
}

inline TrackStyle quiet_style(unsigned i, double seconds) {
  TrackStyle s;
  s.bpm = 64.0 + 2.0 * i;
  s.base_pitch = 46 + static_cast<int>(i % 3);
  s.span = 3;
  s.amplitude = 0.08;
  s.noise = 0.0;
  s.gate = 0.95;
  s.seconds = seconds;
  s.seed = 700 + i;
  return s;
}

inline void write_wav(const std::filesystem::path& path, const AudioBuffer& b) {
  std::filesystem::create_directories(path.parent_path());
  write_file(path, encode_wav_pcm16(b));
}

inline std::string track_name(const std::string& stem, unsigned i) {
  std::string n = std::to_string(i);
  return stem + std::string(3 - std::min<std::size_t>(3, n.size()), '0') + n + ".wav";
}

}  // namespace emovec::test
