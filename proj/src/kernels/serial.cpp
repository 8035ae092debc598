#include "elementwise.hpp"

namespace emovec::kernels::serial {

void stft_magnitude(std::span<const double> padded, const Framing& f, std::span<double> out) {
  const std::vector<double> window = hann_window(f.frame_length);
  const emovec::detail::RealFft fft(static_cast<int>(f.frame_length));
  const std::size_t bins = f.frame_length / 2 + 1;
  for (std::size_t i = 0; i < f.n_frames; ++i) {
    detail::stft_frame(padded, f, window, fft, i, out.subspan(i * bins, bins));
  }
}

void frame_rms(std::span<const double> padded, const Framing& f, std::span<double> out) {
  for (std::size_t i = 0; i < f.n_frames; ++i) out[i] = detail::rms_frame(padded, f, i);
}

void yin(std::span<const double> padded, const YinParams& p, std::size_t hop,
         std::size_t n_frames, std::span<double> f0) {
  std::vector<double> d(p.tau_max + 2);
  for (std::size_t i = 0; i < n_frames; ++i) {
    detail::yin_difference_direct(padded.data() + i * hop, p, d);
    f0[i] = detail::yin_pick(d, p);
  }
}

void resample(std::span<const double> x, const PolyphaseFilter& filt, std::span<double> out) {
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = detail::resample_sample(x, filt, static_cast<long>(n));
  }
}

void render_notes(std::span<const NoteVoice> notes, std::span<double> out) {
  const long total = static_cast<long>(out.size());
  for (long begin = 0; begin < total; begin += detail::kRenderBlock) {
    detail::render_block(notes, out, begin, std::min(total, begin + detail::kRenderBlock));
  }
}

}  // namespace emovec::kernels::serial
