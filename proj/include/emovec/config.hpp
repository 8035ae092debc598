#pragma once

// Analysis constants shared by every stage. Calibration files record these
// values and refuse (or warn) when loaded by a build with different ones.

namespace emovec::config {

inline constexpr int kAnalysisRate = 22050;
inline constexpr int kFrameLength = 2048;
inline constexpr int kHopLength = 512;

inline constexpr int kOnsetMelBands = 40;
inline constexpr double kOnsetTopDb = 80.0;

inline constexpr double kTempoMinBpm = 30.0;
inline constexpr double kTempoMaxBpm = 300.0;
inline constexpr double kTempoPriorBpm = 120.0;
inline constexpr double kTempoPriorSigmaOctaves = 1.0;
inline constexpr double kBeatTightness = 100.0;

inline constexpr double kYinFmin = 65.0;
inline constexpr double kYinFmax = 2093.0;
inline constexpr double kYinThreshold = 0.1;

inline constexpr double kAttackThreshold = 0.1;
inline constexpr double kMinDurationSeconds = 1.0;

inline constexpr double kDefaultBand = 0.25;

inline constexpr const char* kVersion = "emovec " EMOVEC_VERSION;

}  // namespace emovec::config
