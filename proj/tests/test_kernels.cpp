#include <gtest/gtest.h>
#include <omp.h>

#include <cmath>

#include "emovec/dsp_core.hpp"
#include "emovec/kernels.hpp"
#include "emovec/midi_render.hpp"
#include "support/signals.hpp"

using namespace emovec;
using namespace emovec::test;
namespace k = emovec::kernels;

namespace {

class KernelParity : public ::testing::TestWithParam<int> {
 protected:
  void SetUp() override {
    saved_ = omp_get_max_threads();
    omp_set_num_threads(GetParam());
  }
  void TearDown() override { omp_set_num_threads(saved_); }

  static std::vector<double> padded_noise(double seconds) {
    const AudioBuffer b = white_noise(seconds, 0.5, 21);
    return k::reflect_pad(b.samples, 1024);
  }

 private:
  int saved_ = 1;
};

}  // namespace

TEST(ReflectPad, MatchesNumpyReflect) {
  const std::vector<double> x = {1, 2, 3, 4};
  EXPECT_EQ(k::reflect_pad(x, 2), (std::vector<double>{3, 2, 1, 2, 3, 4, 3, 2}));
  // Longer than the input: folds repeatedly.
  EXPECT_EQ(k::reflect_pad(std::vector<double>{1, 2}, 3), (std::vector<double>{2, 1, 2, 1, 2, 1, 2, 1}));
  EXPECT_EQ(k::reflect_pad(std::vector<double>{5}, 2), (std::vector<double>{5, 5, 5, 5, 5}));
}

TEST(HannWindow, Periodic) {
  const auto w = k::hann_window(8);
  ASSERT_EQ(w.size(), 8u);
  EXPECT_EQ(w[0], 0.0);
  EXPECT_NEAR(w[4], 1.0, 1e-15);
  EXPECT_NEAR(w[2], 0.5, 1e-15);
  EXPECT_NEAR(w[1], w[7], 1e-15);
}

TEST_P(KernelParity, StftBitIdentical) {
  const auto x = padded_noise(2.0);
  const k::Framing f{2048, 512, k::centered_frame_count(x.size() - 2048, 512)};
  std::vector<double> a(f.n_frames * 1025), b(a.size());
  k::serial::stft_magnitude(x, f, a);
  k::omp::stft_magnitude(x, f, b);
  EXPECT_EQ(a, b);
}

TEST_P(KernelParity, RmsBitIdentical) {
  const auto x = padded_noise(2.0);
  const k::Framing f{2048, 512, k::centered_frame_count(x.size() - 2048, 512)};
  std::vector<double> a(f.n_frames), b(f.n_frames);
  k::serial::frame_rms(x, f, a);
  k::omp::frame_rms(x, f, b);
  EXPECT_EQ(a, b);
}

TEST_P(KernelParity, YinAgrees) {
  AudioBuffer mix = sine(220.0, 2.0, 0.4);
  const AudioBuffer over = sine(660.0, 2.0, 0.2);
  for (std::size_t i = 0; i < mix.samples.size(); ++i) mix.samples[i] += over.samples[i];
  const auto x = k::reflect_pad(mix.samples, 1024);
  const auto p = make_yin_params(22050, 65.0, 2093.0);
  const std::size_t frames = k::centered_frame_count(mix.samples.size(), 512);
  std::vector<double> a(frames), b(frames);
  k::serial::yin(x, p, 512, frames, a);
  k::omp::yin(x, p, 512, frames, b);
  for (std::size_t i = 0; i < frames; ++i) {
    EXPECT_EQ(a[i] > 0.0, b[i] > 0.0) << i;
    EXPECT_NEAR(a[i], b[i], 1e-6 * std::max(1.0, a[i])) << i;
  }
}

TEST_P(KernelParity, YinAgreesOnNoise) {
  const auto x = padded_noise(1.0);
  const auto p = make_yin_params(22050, 65.0, 2093.0);
  const std::size_t frames = k::centered_frame_count(x.size() - 2048, 512);
  std::vector<double> a(frames), b(frames);
  k::serial::yin(x, p, 512, frames, a);
  k::omp::yin(x, p, 512, frames, b);
  for (std::size_t i = 0; i < frames; ++i) EXPECT_NEAR(a[i], b[i], 1e-6 * std::max(1.0, a[i])) << i;
}

TEST_P(KernelParity, ResampleBitIdentical) {
  const AudioBuffer src = white_noise(1.0, 0.5, 8, 44100);
  const auto filt = k::PolyphaseFilter::design(44100, 22050);
  std::vector<double> a(22050), b(22050);
  k::serial::resample(src.samples, filt, a);
  k::omp::resample(src.samples, filt, b);
  EXPECT_EQ(a, b);
}

TEST_P(KernelParity, RenderBitIdentical) {
  std::vector<k::NoteVoice> notes;
  for (int i = 0; i < 40; ++i) {
    const long start = i * 5000;
    notes.push_back({start, start + 20000, midi_to_hz(48 + i % 24), 0.5 + 0.01 * i, 22050.0, 0.8});
  }
  std::vector<double> a(230000, 0.0), b(230000, 0.0);
  k::serial::render_notes(notes, a);
  k::omp::render_notes(notes, b);
  EXPECT_EQ(a, b);
}

INSTANTIATE_TEST_SUITE_P(Threads, KernelParity, ::testing::Values(1, 2, 4, 8));
