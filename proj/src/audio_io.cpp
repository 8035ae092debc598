#include "emovec/audio_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <optional>
#include <string>

#include "emovec/error.hpp"

namespace emovec {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t read_u16(const std::uint8_t* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t read_u32(const std::uint8_t* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xFF));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>((v >> (8 * i)) & 0xFF));
}

struct Format {
  std::uint16_t tag = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
  std::uint16_t block_align = 0;
};

double decode_sample(const std::uint8_t* p, const Format& fmt) {
  if (fmt.tag == kFormatFloat) {
    float f;
    std::uint32_t raw = read_u32(p);
    std::memcpy(&f, &raw, sizeof f);
    if (!std::isfinite(f)) return 0.0;
    return std::clamp(static_cast<double>(f), -1.0, 1.0);
  }
  if (fmt.bits == 16) {
    auto v = static_cast<std::int16_t>(read_u16(p));
    return static_cast<double>(v) / 32768.0;
  }
  // 24-bit, sign-extended through the top byte.
  std::int32_t v = static_cast<std::int32_t>(static_cast<std::uint32_t>(p[0]) << 8 |
                                             static_cast<std::uint32_t>(p[1]) << 16 |
                                             static_cast<std::uint32_t>(p[2]) << 24) >>
                   8;
  return static_cast<double>(v) / 8388608.0;
}

}  // namespace

AudioBuffer decode_wav(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw Error(ErrorCode::kMalformedContainer, "missing RIFF/WAVE magic");
  }

  std::optional<Format> fmt;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t size = read_u32(chunk + 4);
    const std::size_t body = pos + 8;
    const std::size_t remaining = bytes.size() - body;

    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || size > remaining) {
        throw Error(ErrorCode::kMalformedContainer, "bad fmt chunk size");
      }
      Format f;
      f.tag = read_u16(chunk + 8);
      f.channels = read_u16(chunk + 10);
      f.sample_rate = read_u32(chunk + 12);
      f.block_align = read_u16(chunk + 20);
      f.bits = read_u16(chunk + 22);
      if (f.tag == kFormatExtensible) {
        if (size < 40) throw Error(ErrorCode::kMalformedContainer, "short extensible fmt chunk");
        f.tag = read_u16(chunk + 8 + 24);
      }
      fmt = f;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      std::size_t n = size;
      // 0 and 0xFFFFFFFF are written by streaming encoders that never patch the header.
      if (size == 0xFFFFFFFFu || (size == 0 && remaining > 0)) {
        n = remaining;
      } else if (n > remaining) {
        throw Error(ErrorCode::kMalformedContainer, "data chunk overruns file");
      }
      data = chunk + 8;
      data_size = n;
      if (fmt) break;
    }

    if (size > remaining) break;
    pos = body + size + (size & 1u);
  }

  if (!fmt) throw Error(ErrorCode::kMalformedContainer, "no fmt chunk");
  if (!data) throw Error(ErrorCode::kMalformedContainer, "no data chunk");

  const bool pcm = fmt->tag == kFormatPcm && (fmt->bits == 16 || fmt->bits == 24);
  const bool flt = fmt->tag == kFormatFloat && fmt->bits == 32;
  if (!pcm && !flt) {
    throw Error(ErrorCode::kUnsupportedEncoding,
                "format tag " + std::to_string(fmt->tag) + ", " + std::to_string(fmt->bits) +
                    " bits");
  }
  if (fmt->channels < 1 || fmt->channels > 2) {
    throw Error(ErrorCode::kUnsupportedEncoding,
                std::to_string(fmt->channels) + " channels");
  }
  if (fmt->sample_rate == 0) throw Error(ErrorCode::kMalformedContainer, "zero sample rate");

  const std::size_t bytes_per_sample = fmt->bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * fmt->channels;
  if (fmt->block_align != 0 && fmt->block_align != frame_bytes) {
    throw Error(ErrorCode::kMalformedContainer, "block align disagrees with sample format");
  }
  const std::size_t frames = data_size / frame_bytes;
  if (frames == 0) throw Error(ErrorCode::kEmptyAudio, "no sample frames");

  AudioBuffer out;
  out.sample_rate = static_cast<int>(fmt->sample_rate);
  out.samples.resize(frames);
  for (std::size_t i = 0; i < frames; ++i) {
    const std::uint8_t* p = data + i * frame_bytes;
    if (fmt->channels == 1) {
      out.samples[i] = decode_sample(p, *fmt);
    } else {
      out.samples[i] = (decode_sample(p, *fmt) + decode_sample(p + bytes_per_sample, *fmt)) / 2.0;
    }
  }
  return out;
}

std::vector<std::uint8_t> encode_wav_pcm16(const AudioBuffer& buf) {
  const auto n = static_cast<std::uint32_t>(buf.samples.size());
  const std::uint32_t data_bytes = n * 2;
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_bytes);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, static_cast<std::uint32_t>(buf.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(buf.sample_rate) * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_bytes);
  for (double s : buf.samples) {
    const double scaled = std::round(s * 32768.0);
    const auto v = static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    put_u16(out, static_cast<std::uint16_t>(v));
  }
  return out;
}

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed for " + path.string());
  return bytes;
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace emovec
