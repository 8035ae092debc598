#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "emovec/csv.hpp"
#include "emovec/emovector.hpp"

using namespace emovec;

namespace {

constexpr std::optional<double> na = std::nullopt;

// Independent transcription of the indicative cue levels, columns: tempo,
// sound level, sound-level variability, high-frequency energy, pitch level,
// pitch variability, tone attack, microstructural irregularity.
const std::optional<double> kLiteral[5][8] = {
    {1, 1, 1, 1, 1, 1, 1, 0.5},      // anger
    {1, 0, 1, 0, 1, 0, na, 1},       // fear
    {1, 0.75, na, 0.5, 1, 1, 1, 0.25},  // happiness
    {0, 0, 0, 0, 0, 0, 0, 0.5},      // sadness
    {0, 0, 0, 0, 0, 0, 0, 0},        // tenderness
};

RankVector constant_ranks(double r) {
  RankVector v;
  v.ranks.fill(r);
  return v;
}

RankVector random_ranks(std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  RankVector v;
  for (auto& r : v.ranks) r = u(rng);
  return v;
}

}  // namespace

TEST(PrototypeTable, EqualsLiteralTranscription) {
  for (std::size_t e = 0; e < kEmotionCount; ++e) {
    for (std::size_t c = 0; c < kCueCount; ++c) {
      EXPECT_EQ(kPrototypes[e][c], kLiteral[e][c]) << emotion_name(kAllEmotions[e]) << " " << c;
    }
  }
  EXPECT_FALSE(kPrototypes[index(Emotion::kFear)][index(CueId::kToneAttackSpeed)].has_value());
  EXPECT_FALSE(kPrototypes[index(Emotion::kHappiness)][index(CueId::kSoundLevelVariability)].has_value());
}

TEST(EmotionNames, Order) {
  EXPECT_EQ(emotion_name(Emotion::kAnger), "anger");
  EXPECT_EQ(emotion_name(Emotion::kFear), "fear");
  EXPECT_EQ(emotion_name(Emotion::kHappiness), "happiness");
  EXPECT_EQ(emotion_name(Emotion::kSadness), "sadness");
  EXPECT_EQ(emotion_name(Emotion::kTenderness), "tenderness");
}

TEST(ScoreEmotions, ForcedValues) {
  using S = std::array<int, 5>;
  EXPECT_EQ(score_emotions(constant_ranks(1.0)).scores, (S{7, 4, 5, 0, 0}));
  EXPECT_EQ(score_emotions(constant_ranks(0.0)).scores, (S{0, 3, 1, 7, 8}));
  EXPECT_EQ(score_emotions(constant_ranks(0.5)).scores, (S{1, 0, 3, 1, 0}));
  EXPECT_EQ(score_emotions(constant_ranks(0.5)).coverage, (S{8, 7, 7, 8, 8}));
}

TEST(ScoreEmotions, AllMissing) {
  const Emovector ev = score_emotions(RankVector{});
  for (Emotion e : kAllEmotions) {
    EXPECT_EQ(ev.score(e), 0);
    EXPECT_EQ(ev.cover(e), 0);
  }
}

TEST(ScoreEmotions, BandBoundaryIsInclusive) {
  EXPECT_EQ(score_emotions(constant_ranks(0.75)).score(Emotion::kAnger), 8);
  EXPECT_EQ(score_emotions(constant_ranks(0.25)).score(Emotion::kTenderness), 8);
}

TEST(ScoreEmotions, MissingCuesReduceCoverage) {
  RankVector r = constant_ranks(1.0);
  r.ranks[index(CueId::kTempo)].reset();
  r.ranks[index(CueId::kToneAttackSpeed)].reset();
  const Emovector ev = score_emotions(r);
  EXPECT_EQ(ev.cover(Emotion::kAnger), 6);
  EXPECT_EQ(ev.cover(Emotion::kFear), 6);
  EXPECT_EQ(ev.score(Emotion::kAnger), 5);
}

TEST(ScoreEmotions, ScoreNeverExceedsCoverage) {
  std::mt19937 rng(1);
  for (int i = 0; i < 500; ++i) {
    RankVector r = random_ranks(rng);
    if (i % 3 == 0) r.ranks[i % 8].reset();
    const Emovector ev = score_emotions(r);
    for (Emotion e : kAllEmotions) {
      EXPECT_LE(ev.score(e), ev.cover(e));
      EXPECT_GE(ev.score(e), 0);
    }
    EXPECT_LE(ev.cover(Emotion::kFear), 7);
    EXPECT_LE(ev.cover(Emotion::kHappiness), 7);
  }
}

TEST(ScoreEmotions, ShrinkingBandNeverIncreasesScores) {
  std::mt19937 rng(2);
  for (int i = 0; i < 300; ++i) {
    const RankVector r = random_ranks(rng);
    Emovector prev = score_emotions(r, kPrototypes, 0.5);
    for (double band : {0.4, 0.3, 0.25, 0.1, 0.01}) {
      const Emovector cur = score_emotions(r, kPrototypes, band);
      for (std::size_t e = 0; e < kEmotionCount; ++e) EXPECT_LE(cur.scores[e], prev.scores[e]);
      prev = cur;
    }
  }
}

TEST(ScoreEmotions, HalfBandMatchesHalfLine) {
  std::mt19937 rng(3);
  for (int i = 0; i < 200; ++i) {
    const RankVector r = random_ranks(rng);
    const Emovector ev = score_emotions(r, kPrototypes, 0.5);
    for (std::size_t e = 0; e < kEmotionCount; ++e) {
      int expected = 0;
      for (std::size_t c = 0; c < kCueCount; ++c) {
        const auto p = kPrototypes[e][c];
        if (!p) continue;
        const double rank = *r.ranks[c];
        if (*p == 0.5) expected += 1;
        else if (*p == 0.0) expected += rank <= 0.5;
        else if (*p == 1.0) expected += rank >= 0.5;
        else expected += std::abs(rank - *p) <= 0.5;
      }
      EXPECT_EQ(ev.scores[e], expected);
    }
  }
}

TEST(ScoreEmotions, UniformRankExpectation) {
  std::mt19937 rng(42);
  std::array<double, 5> sum{};
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    const Emovector ev = score_emotions(random_ranks(rng));
    for (std::size_t e = 0; e < kEmotionCount; ++e) sum[e] += ev.scores[e];
  }
  // Window length per cue: 0.25 at an extreme prototype, 0.5 in the interior.
  const std::array<double, 5> expected = {2.25, 1.75, 2.5, 2.25, 2.0};
  for (std::size_t e = 0; e < kEmotionCount; ++e) EXPECT_NEAR(sum[e] / n, expected[e], 0.15) << e;
}

TEST(ScoreEmotions, InvalidBand) {
  EXPECT_THROW(score_emotions(constant_ranks(0.5), kPrototypes, 0.0), std::invalid_argument);
  EXPECT_THROW(score_emotions(constant_ranks(0.5), kPrototypes, 0.51), std::invalid_argument);
  EXPECT_NO_THROW(score_emotions(constant_ranks(0.5), kPrototypes, 0.5));
}

TEST(EmovectorCsv, Header) {
  EXPECT_EQ(emovector_csv_header(),
            "path,rank_tempo,rank_sound_level,rank_sound_level_variability,"
            "rank_high_frequency_energy,rank_pitch_level,rank_pitch_variability,"
            "rank_tone_attack_speed,rank_microstructural_irregularity,anger,fear,happiness,"
            "sadness,tenderness,cov_anger,cov_fear,cov_happiness,cov_sadness,cov_tenderness");
}

TEST(EmovectorCsv, RowFormatting) {
  RankVector r = constant_ranks(0.123456);
  r.ranks[index(CueId::kPitchLevel)].reset();
  r.ranks[index(CueId::kTempo)] = 1.0;
  const Emovector ev = score_emotions(r);
  const std::string row = emovector_row("dir/a,b.wav", r, ev);
  const auto parsed = csv::parse(row + "\n");
  ASSERT_EQ(parsed.size(), 1u);
  const auto& f = parsed[0];
  ASSERT_EQ(f.size(), 19u);
  EXPECT_EQ(f[0], "dir/a,b.wav");
  EXPECT_EQ(row.substr(0, 13), "\"dir/a,b.wav\"");
  EXPECT_EQ(f[1], "1.0000");
  EXPECT_EQ(f[2], "0.1235");
  EXPECT_EQ(f[5], "");
  EXPECT_EQ(f[9], std::to_string(ev.score(Emotion::kAnger)));
  EXPECT_EQ(f[18], std::to_string(ev.cover(Emotion::kTenderness)));
}
