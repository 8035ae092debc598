// Serial reference kernels against their OpenMP counterparts.
//
//   bench_kernels [--benchmark_filter=REGEX]
//
// OpenMP variants take the thread count as their argument.

#include <benchmark/benchmark.h>
#include <omp.h>

#include <cmath>
#include <random>
#include <vector>

#include "emovec/dsp_core.hpp"
#include "emovec/kernels.hpp"
#include "emovec/midi_render.hpp"

namespace k = emovec::kernels;

namespace {

constexpr std::size_t kFrame = 2048;
constexpr std::size_t kHop = 512;
constexpr int kRate = 22050;

std::vector<double> noise(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  return x;
}

// Ten seconds of audio, reflect-padded for centered framing.
struct Signal {
  std::vector<double> raw = noise(10 * kRate, 1);
  std::vector<double> padded = k::reflect_pad(raw, kFrame / 2);
  k::Framing framing{kFrame, kHop, k::centered_frame_count(raw.size(), kHop)};
};

const Signal& signal() {
  static const Signal s;
  return s;
}

std::vector<k::NoteVoice> melody() {
  std::vector<k::NoteVoice> notes;
  for (int i = 0; i < 80; ++i) {
    const long start = i * kRate / 8;
    notes.push_back({start, start + kRate / 4, emovec::midi_to_hz(48 + (i * 5) % 24), 0.8, kRate, 0.2});
  }
  return notes;
}

class Threads {
 public:
  explicit Threads(int n) : saved_(omp_get_max_threads()) { omp_set_num_threads(n); }
  ~Threads() { omp_set_num_threads(saved_); }

 private:
  int saved_;
};

template <auto Kernel>
void stft(benchmark::State& state) {
  const Signal& s = signal();
  std::vector<double> out(s.framing.n_frames * (kFrame / 2 + 1));
  for (auto _ : state) {
    Kernel(s.padded, s.framing, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.framing.n_frames));
}

template <auto Kernel>
void rms(benchmark::State& state) {
  const Signal& s = signal();
  std::vector<double> out(s.framing.n_frames);
  for (auto _ : state) {
    Kernel(s.padded, s.framing, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.framing.n_frames));
}

template <auto Kernel>
void yin(benchmark::State& state) {
  const Signal& s = signal();
  const auto p = emovec::make_yin_params(kRate, 65.0, 2093.0);
  std::vector<double> f0(s.framing.n_frames);
  for (auto _ : state) {
    Kernel(s.padded, p, kHop, s.framing.n_frames, f0);
    benchmark::DoNotOptimize(f0.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(s.framing.n_frames));
}

template <auto Kernel>
void resample(benchmark::State& state) {
  static const std::vector<double> x = noise(10 * 44100, 2);
  static const auto filt = k::PolyphaseFilter::design(44100, kRate);
  std::vector<double> out(10 * kRate);
  for (auto _ : state) {
    Kernel(x, filt, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(out.size()));
}

template <auto Kernel>
void render(benchmark::State& state) {
  static const std::vector<k::NoteVoice> notes = melody();
  std::vector<double> out(notes.back().end_sample);
  for (auto _ : state) {
    std::fill(out.begin(), out.end(), 0.0);
    Kernel(notes, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(out.size()));
}

template <void (*Body)(benchmark::State&)>
void with_threads(benchmark::State& state) {
  const Threads t(static_cast<int>(state.range(0)));
  Body(state);
}

void thread_args(benchmark::internal::Benchmark* b) {
  for (int n = 1; n <= std::max(4, omp_get_num_procs()); n *= 2) b->Arg(n);
  b->UseRealTime();
}

}  // namespace

BENCHMARK(stft<k::serial::stft_magnitude>)->Name("stft/serial")->UseRealTime();
BENCHMARK(with_threads<stft<k::omp::stft_magnitude>>)->Name("stft/omp")->Apply(thread_args);
BENCHMARK(rms<k::serial::frame_rms>)->Name("rms/serial")->UseRealTime();
BENCHMARK(with_threads<rms<k::omp::frame_rms>>)->Name("rms/omp")->Apply(thread_args);
BENCHMARK(yin<k::serial::yin>)->Name("yin/serial")->UseRealTime();
BENCHMARK(with_threads<yin<k::omp::yin>>)->Name("yin/omp")->Apply(thread_args);
BENCHMARK(resample<k::serial::resample>)->Name("resample/serial")->UseRealTime();
BENCHMARK(with_threads<resample<k::omp::resample>>)->Name("resample/omp")->Apply(thread_args);
BENCHMARK(render<k::serial::render_notes>)->Name("render/serial")->UseRealTime();
BENCHMARK(with_threads<render<k::omp::render_notes>>)->Name("render/omp")->Apply(thread_args);

BENCHMARK_MAIN();
