#include "emovec/audio_io.hpp"
#include "emovec/error.hpp"
#include "emovec/kernels.hpp"

namespace emovec {

AudioBuffer resample(const AudioBuffer& buf, int target_rate) {
  if (target_rate <= 0) throw Error(ErrorCode::kInvalidRate, "target rate must be positive");
  if (buf.sample_rate <= 0) throw Error(ErrorCode::kInvalidRate, "source rate must be positive");
  if (buf.samples.empty()) throw Error(ErrorCode::kEmptyAudio, "cannot resample an empty buffer");
  if (target_rate == buf.sample_rate) return buf;

  const auto filt = kernels::PolyphaseFilter::design(buf.sample_rate, target_rate);
  const long long len = static_cast<long long>(buf.samples.size());
  const long long out_len = (len * target_rate + buf.sample_rate / 2) / buf.sample_rate;

  AudioBuffer out;
  out.sample_rate = target_rate;
  out.samples.resize(static_cast<std::size_t>(std::max(1LL, out_len)));
  kernels::omp::resample(buf.samples, filt, out.samples);
  return out;
}

}  // namespace emovec
