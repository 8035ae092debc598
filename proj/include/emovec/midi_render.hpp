#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "emovec/audio_io.hpp"

namespace emovec {

struct NoteEvent {
  double onset_seconds = 0.0;
  double duration_seconds = 0.0;
  int pitch = 0;     // MIDI note number
  int velocity = 0;  // 1..127
  int channel = 0;   // 0..15
  bool operator==(const NoteEvent&) const = default;
};

/// Notes sorted by onset, ties by (channel, pitch).
struct Timeline {
  std::vector<NoteEvent> notes;
  double total_seconds = 0.0;
};

/// Parses SMF format 0 or 1 into timed notes using the file's tempo map.
/// Percussion (channel index 9) is dropped. Note-ons left open at the end of
/// a track are closed there and reported through `warnings`.
Timeline parse_smf(std::span<const std::uint8_t> bytes,
                   std::vector<std::string>* warnings = nullptr);

/// Renders with one fixed timbre: four harmonics at 1, 1/2, 1/3, 1/4, ADSR
/// 10 ms / 50 ms / 0.7 / 50 ms, amplitude velocity/127, mix peak-normalized
/// to -1 dBFS. An empty timeline yields 0.1 s of silence.
AudioBuffer synthesize(const Timeline& timeline, int sample_rate);

/// Equal-temperament frequency of a MIDI note.
double midi_to_hz(int pitch);

inline constexpr double kRenderPeak = 0.89125093813374556;  // 10^(-1/20)

}  // namespace emovec
