#include <omp.h>

#include "elementwise.hpp"

// Inner kernels stay serial when already inside a parallel region (the CLI
// parallelizes over files).

namespace emovec::kernels::omp {
namespace {

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

}  // namespace

void stft_magnitude(std::span<const double> padded, const Framing& f, std::span<double> out) {
  const std::vector<double> window = hann_window(f.frame_length);
  const emovec::detail::RealFft fft(static_cast<int>(f.frame_length));
  const std::size_t bins = f.frame_length / 2 + 1;
  const auto n = static_cast<long>(f.n_frames);
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
  for (long i = 0; i < n; ++i) {
    const auto fi = static_cast<std::size_t>(i);
    detail::stft_frame(padded, f, window, fft, fi, out.subspan(fi * bins, bins));
  }
}

void frame_rms(std::span<const double> padded, const Framing& f, std::span<double> out) {
  const auto n = static_cast<long>(f.n_frames);
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = detail::rms_frame(padded, f, static_cast<std::size_t>(i));
  }
}

void yin(std::span<const double> padded, const YinParams& p, std::size_t hop,
         std::size_t n_frames, std::span<double> f0) {
  const emovec::detail::RealFft fft(static_cast<int>(next_pow2(p.frame_length + p.window)));
  const auto n = static_cast<long>(n_frames);
#pragma omp parallel if (!omp_in_parallel())
  {
    std::vector<double> d(p.tau_max + 2);
#pragma omp for schedule(static)
    for (long i = 0; i < n; ++i) {
      const auto fi = static_cast<std::size_t>(i);
      detail::yin_difference_fft(padded.data() + fi * hop, p, fft, d);
      f0[fi] = detail::yin_pick(d, p);
    }
  }
}

void resample(std::span<const double> x, const PolyphaseFilter& filt, std::span<double> out) {
  const auto n = static_cast<long>(out.size());
#pragma omp parallel for schedule(static) if (!omp_in_parallel())
  for (long i = 0; i < n; ++i) {
    out[static_cast<std::size_t>(i)] = detail::resample_sample(x, filt, i);
  }
}

void render_notes(std::span<const NoteVoice> notes, std::span<double> out) {
  const long total = static_cast<long>(out.size());
  const long blocks = (total + detail::kRenderBlock - 1) / detail::kRenderBlock;
#pragma omp parallel for schedule(dynamic) if (!omp_in_parallel())
  for (long b = 0; b < blocks; ++b) {
    const long begin = b * detail::kRenderBlock;
    detail::render_block(notes, out, begin, std::min(total, begin + detail::kRenderBlock));
  }
}

}  // namespace emovec::kernels::omp
