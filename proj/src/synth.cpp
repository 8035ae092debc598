#include <algorithm>
#include <cmath>

#include "emovec/kernels.hpp"
#include "emovec/midi_render.hpp"
#include "kernels/elementwise.hpp"

namespace emovec {

double midi_to_hz(int pitch) { return 440.0 * std::pow(2.0, (pitch - 69) / 12.0); }

AudioBuffer synthesize(const Timeline& timeline, int sample_rate) {
  const double sr = sample_rate;
  std::vector<kernels::NoteVoice> voices;
  voices.reserve(timeline.notes.size());
  long length = 0;
  for (const NoteEvent& n : timeline.notes) {
    kernels::NoteVoice v;
    v.start_sample = std::lround(n.onset_seconds * sr);
    v.end_sample = v.start_sample +
                   static_cast<long>(std::ceil((n.duration_seconds + kernels::detail::kRelease) * sr));
    v.frequency = midi_to_hz(n.pitch);
    v.amplitude = n.velocity / 127.0;
    v.sample_rate = sr;
    v.release_start = n.duration_seconds;
    length = std::max(length, v.end_sample);
    voices.push_back(v);
  }

  AudioBuffer out;
  out.sample_rate = sample_rate;
  if (voices.empty()) {
    out.samples.assign(static_cast<std::size_t>(std::lround(0.1 * sr)), 0.0);
    return out;
  }
  out.samples.assign(static_cast<std::size_t>(length), 0.0);
  kernels::omp::render_notes(voices, out.samples);

  double peak = 0.0;
  for (double s : out.samples) peak = std::max(peak, std::abs(s));
  if (peak > 0.0) {
    const double gain = kRenderPeak / peak;
    for (double& s : out.samples) s *= gain;
  }
  return out;
}

}  // namespace emovec
