#include <algorithm>
#include <cstring>
#include <deque>
#include <map>
#include <tuple>

#include "emovec/error.hpp"
#include "emovec/midi_render.hpp"

namespace emovec {
namespace {

constexpr int kPercussionChannel = 9;
constexpr std::uint32_t kDefaultTempo = 500000;  // microseconds per quarter note

[[noreturn]] void malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedSmf, what);
}

std::uint32_t be32(const std::uint8_t* p) {
  return (static_cast<std::uint32_t>(p[0]) << 24) | (static_cast<std::uint32_t>(p[1]) << 16) |
         (static_cast<std::uint32_t>(p[2]) << 8) | p[3];
}

std::uint16_t be16(const std::uint8_t* p) { return static_cast<std::uint16_t>(p[0] << 8 | p[1]); }

class Reader {
 public:
  Reader(const std::uint8_t* begin, const std::uint8_t* end) : p_(begin), end_(end) {}

  bool done() const { return p_ >= end_; }

  std::uint8_t byte() {
    if (p_ >= end_) malformed("event runs past end of track");
    return *p_++;
  }

  std::uint8_t peek() const {
    if (p_ >= end_) malformed("event runs past end of track");
    return *p_;
  }

  std::uint8_t data_byte() {
    std::uint8_t b = byte();
    if (b & 0x80) malformed("status byte where data byte expected");
    return b;
  }

  std::uint32_t vlq() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) {
      std::uint8_t b = byte();
      v = (v << 7) | (b & 0x7F);
      if (!(b & 0x80)) return v;
    }
    malformed("variable-length quantity longer than 4 bytes");
  }

  const std::uint8_t* take(std::uint32_t n) {
    if (static_cast<std::size_t>(end_ - p_) < n) malformed("event runs past end of track");
    const std::uint8_t* q = p_;
    p_ += n;
    return q;
  }

 private:
  const std::uint8_t* p_;
  const std::uint8_t* end_;
};

struct TempoChange {
  std::uint64_t tick;
  int order;
  std::uint32_t usec_per_quarter;
};

struct RawNote {
  std::uint64_t on_tick;
  std::uint64_t off_tick;
  int pitch;
  int velocity;
  int channel;
};

// Converts ticks to seconds piecewise over the tempo map.
class TickClock {
 public:
  TickClock(std::vector<TempoChange> changes, std::uint16_t division) {
    if (division & 0x8000) {
      const int fps_code = -static_cast<int>(static_cast<std::int8_t>(division >> 8));
      const int ticks_per_frame = division & 0xFF;
      const double fps = fps_code == 29 ? 29.97 : static_cast<double>(fps_code);
      if (fps <= 0.0 || ticks_per_frame == 0) malformed("invalid SMPTE division");
      smpte_seconds_per_tick_ = 1.0 / (fps * ticks_per_frame);
      return;
    }
    if (division == 0) malformed("zero ticks per quarter note");
    ticks_per_quarter_ = division;
    std::stable_sort(changes.begin(), changes.end(), [](const auto& a, const auto& b) {
      return std::tie(a.tick, a.order) < std::tie(b.tick, b.order);
    });
    segments_.push_back({0, 0.0, kDefaultTempo});
    for (const auto& c : changes) {
      Segment& last = segments_.back();
      if (c.tick == last.tick) {
        last.usec_per_quarter = c.usec_per_quarter;
        continue;
      }
      const double start = last.start_seconds + seconds_in(last, c.tick - last.tick);
      segments_.push_back({c.tick, start, c.usec_per_quarter});
    }
  }

  double seconds(std::uint64_t tick) const {
    if (smpte_seconds_per_tick_ > 0.0) return static_cast<double>(tick) * smpte_seconds_per_tick_;
    auto it = std::upper_bound(segments_.begin(), segments_.end(), tick,
                               [](std::uint64_t t, const Segment& s) { return t < s.tick; });
    const Segment& s = *std::prev(it);
    return s.start_seconds + seconds_in(s, tick - s.tick);
  }

 private:
  struct Segment {
    std::uint64_t tick;
    double start_seconds;
    std::uint32_t usec_per_quarter;
  };

  double seconds_in(const Segment& s, std::uint64_t ticks) const {
    return static_cast<double>(ticks) * s.usec_per_quarter / (1e6 * ticks_per_quarter_);
  }

  double ticks_per_quarter_ = 0.0;
  double smpte_seconds_per_tick_ = 0.0;
  std::vector<Segment> segments_;
};

void parse_track(Reader r, int track_index, std::vector<TempoChange>& tempi,
                 std::vector<RawNote>& notes, std::vector<std::string>* warnings) {
  std::map<std::pair<int, int>, std::deque<std::pair<std::uint64_t, int>>> open;
  std::uint64_t tick = 0;
  std::uint8_t running = 0;
  int order = 0;

  while (!r.done()) {
    tick += r.vlq();
    std::uint8_t status = r.peek();
    if (status & 0x80) {
      r.byte();
    } else if (running) {
      status = running;
    } else {
      malformed("running status without a preceding channel message");
    }

    if (status == 0xFF) {
      const std::uint8_t type = r.byte();
      const std::uint32_t len = r.vlq();
      const std::uint8_t* data = r.take(len);
      if (type == 0x51) {
        if (len != 3) malformed("tempo meta event with length " + std::to_string(len));
        const std::uint32_t usec = (static_cast<std::uint32_t>(data[0]) << 16) |
                                   (static_cast<std::uint32_t>(data[1]) << 8) | data[2];
        if (usec == 0) malformed("zero tempo");
        tempi.push_back({tick, track_index * 1000000 + order++, usec});
      } else if (type == 0x2F) {
        break;
      }
      continue;
    }
    if (status == 0xF0 || status == 0xF7) {
      r.take(r.vlq());
      running = 0;
      continue;
    }
    if (status >= 0xF0) malformed("system message inside track data");

    running = status;
    const int kind = status & 0xF0;
    const int channel = status & 0x0F;
    if (kind == 0xC0 || kind == 0xD0) {
      r.data_byte();
      continue;
    }
    const int a = r.data_byte();
    const int b = r.data_byte();
    if (kind != 0x80 && kind != 0x90) continue;  // aftertouch, CC and pitch bend are ignored

    auto& slot = open[{channel, a}];
    if (kind == 0x90 && b > 0) {
      slot.emplace_back(tick, b);
    } else if (!slot.empty()) {
      auto [on_tick, velocity] = slot.front();
      slot.pop_front();
      notes.push_back({on_tick, tick, a, velocity, channel});
    }
  }

  for (auto& [key, pending] : open) {
    for (auto [on_tick, velocity] : pending) {
      if (warnings) {
        warnings->push_back("DanglingNoteOn: track " + std::to_string(track_index) +
                            " channel " + std::to_string(key.first) + " pitch " +
                            std::to_string(key.second) + " closed at end of track");
      }
      notes.push_back({on_tick, tick, key.second, velocity, key.first});
    }
  }
}

}  // namespace

Timeline parse_smf(std::span<const std::uint8_t> bytes, std::vector<std::string>* warnings) {
  if (bytes.size() < 14 || std::memcmp(bytes.data(), "MThd", 4) != 0) {
    malformed("missing MThd header");
  }
  const std::uint32_t header_len = be32(bytes.data() + 4);
  if (header_len < 6 || header_len > bytes.size() - 8) malformed("bad header length");
  const std::uint16_t format = be16(bytes.data() + 8);
  const std::uint16_t declared_tracks = be16(bytes.data() + 10);
  const std::uint16_t division = be16(bytes.data() + 12);
  if (format == 2) throw Error(ErrorCode::kUnsupportedFormat, "SMF format 2");
  if (format > 2) malformed("unknown SMF format " + std::to_string(format));

  std::vector<TempoChange> tempi;
  std::vector<RawNote> raw;
  std::size_t pos = 8 + header_len;
  int tracks = 0;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t len = be32(chunk + 4);
    if (len > bytes.size() - pos - 8) malformed("chunk length overruns file");
    if (std::memcmp(chunk, "MTrk", 4) == 0) {
      parse_track(Reader(chunk + 8, chunk + 8 + len), tracks, tempi, raw, warnings);
      ++tracks;
    }
    pos += 8 + len;
  }
  if (tracks < declared_tracks) {
    malformed("header declares " + std::to_string(declared_tracks) + " tracks, found " +
              std::to_string(tracks));
  }

  const TickClock clock(std::move(tempi), division);
  Timeline out;
  for (const RawNote& n : raw) {
    if (n.channel == kPercussionChannel) continue;
    const double on = clock.seconds(n.on_tick);
    const double off = clock.seconds(n.off_tick);
    if (!(off > on)) continue;
    out.notes.push_back({on, off - on, n.pitch, n.velocity, n.channel});
  }
  std::sort(out.notes.begin(), out.notes.end(), [](const NoteEvent& a, const NoteEvent& b) {
    return std::tie(a.onset_seconds, a.channel, a.pitch, a.duration_seconds, a.velocity) <
           std::tie(b.onset_seconds, b.channel, b.pitch, b.duration_seconds, b.velocity);
  });
  for (const NoteEvent& n : out.notes) {
    out.total_seconds = std::max(out.total_seconds, n.onset_seconds + n.duration_seconds);
  }
  return out;
}

}  // namespace emovec
