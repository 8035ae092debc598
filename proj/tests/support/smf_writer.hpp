#pragma once

// Builds Standard MIDI File bytes event by event.

#include <cstdint>
#include <initializer_list>
#include <vector>

namespace emovec::test {

class SmfTrack {
 public:
  SmfTrack& event(std::uint32_t delta, std::initializer_list<std::uint8_t> bytes) {
    vlq(delta);
    data_.insert(data_.end(), bytes);
    return *this;
  }
  SmfTrack& note_on(std::uint32_t delta, int ch, int pitch, int vel) {
    return event(delta, {static_cast<std::uint8_t>(0x90 | ch), static_cast<std::uint8_t>(pitch),
                         static_cast<std::uint8_t>(vel)});
  }
  SmfTrack& note_off(std::uint32_t delta, int ch, int pitch) {
    return event(delta, {static_cast<std::uint8_t>(0x80 | ch), static_cast<std::uint8_t>(pitch), 64});
  }
  SmfTrack& tempo(std::uint32_t delta, std::uint32_t usec_per_quarter) {
    return event(delta, {0xFF, 0x51, 0x03, static_cast<std::uint8_t>(usec_per_quarter >> 16),
                         static_cast<std::uint8_t>(usec_per_quarter >> 8),
                         static_cast<std::uint8_t>(usec_per_quarter)});
  }
  SmfTrack& end(std::uint32_t delta = 0) { return event(delta, {0xFF, 0x2F, 0x00}); }

  const std::vector<std::uint8_t>& bytes() const { return data_; }

 private:
  void vlq(std::uint32_t v) {
    std::uint8_t buf[5];
    int n = 0;
    buf[n++] = v & 0x7F;
    while (v >>= 7) buf[n++] = static_cast<std::uint8_t>(0x80 | (v & 0x7F));
    while (n) data_.push_back(buf[--n]);
  }
  std::vector<std::uint8_t> data_;
};

inline void put_be(std::vector<std::uint8_t>& out, std::uint32_t v, int bytes) {
  for (int i = bytes - 1; i >= 0; --i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

inline std::vector<std::uint8_t> smf_bytes(int format, int division,
                                           const std::vector<SmfTrack>& tracks) {
  std::vector<std::uint8_t> out = {'M', 'T', 'h', 'd'};
  put_be(out, 6, 4);
  put_be(out, static_cast<std::uint32_t>(format), 2);
  put_be(out, static_cast<std::uint32_t>(tracks.size()), 2);
  put_be(out, static_cast<std::uint32_t>(division), 2);
  for (const SmfTrack& t : tracks) {
    out.insert(out.end(), {'M', 'T', 'r', 'k'});
    put_be(out, static_cast<std::uint32_t>(t.bytes().size()), 4);
    out.insert(out.end(), t.bytes().begin(), t.bytes().end());
  }
  return out;
}

/// One note per beat at `bpm` for `seconds`, cycling through a C major
/// arpeggio; each note lasts `gate` of a beat. 480 ticks per quarter.
inline std::vector<std::uint8_t> beat_melody_smf(double bpm, double seconds, double gate = 0.9,
                                                 int velocity = 100) {
  const int ppq = 480;
  SmfTrack t;
  t.tempo(0, static_cast<std::uint32_t>(60e6 / bpm));
  const int pitches[] = {60, 64, 67, 72, 67, 64};
  const auto beats = static_cast<int>(seconds * bpm / 60.0);
  const auto on_ticks = static_cast<std::uint32_t>(ppq * gate);
  std::uint32_t carry = 0;
  for (int i = 0; i < beats; ++i) {
    const int p = pitches[i % 6];
    t.note_on(carry, 0, p, velocity);
    t.note_off(on_ticks, 0, p);
    carry = ppq - on_ticks;
  }
  t.end(carry);
  return smf_bytes(0, ppq, {t});
}

/// A single note.
inline std::vector<std::uint8_t> single_note_smf(int pitch, double seconds, int velocity = 100) {
  const int ppq = 480;  // default tempo: 960 ticks per second
  SmfTrack t;
  t.note_on(0, 0, pitch, velocity);
  t.note_off(static_cast<std::uint32_t>(seconds * 960.0), 0, pitch);
  t.end();
  return smf_bytes(0, ppq, {t});
}

}  // namespace emovec::test
