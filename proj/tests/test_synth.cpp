#include <cmath>
#include <numeric>

#include "gtest/gtest.h"
#include "cyclesvd/error.hpp"
#include "cyclesvd/experiments.hpp"
#include "cyclesvd/report.hpp"
#include "cyclesvd/svd.hpp"
#include "cyclesvd/synth.hpp"

namespace {
using namespace cyclesvd;

TEST(RngTest, ReproducibleStreams) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next_u64();
    EXPECT_EQ(x, b.next_u64());
    EXPECT_NE(x, c.next_u64());
  }
  EXPECT_NE(derive_seed(42, 0), derive_seed(42, 1));
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
}

TEST(RngTest, KnownSplitMixValue) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(RngTest, MomentsAndRanges) {
  Rng rng(1);
  double sn = 0, sn2 = 0, se = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    const double e = rng.exponential();
    ASSERT_GE(e, 0.0);
    se += e;
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    ASSERT_LT(rng.index(7), 7u);
  }
  EXPECT_NEAR(sn / n, 0.0, 0.01);
  EXPECT_NEAR(sn2 / n, 1.0, 0.02);
  EXPECT_NEAR(se / n, 1.0, 0.01);
}

TEST(RngTest, ShuffleIsPermutation) {
  Rng rng(3);
  std::vector<int> v(50);
  std::iota(v.begin(), v.end(), 0);
  rng.shuffle(std::span<int>(v));
  std::vector<int> sorted = v;
  std::sort(sorted.begin(), sorted.end());
  for (int i = 0; i < 50; ++i) EXPECT_EQ(sorted[i], i);
  EXPECT_FALSE(std::is_sorted(v.begin(), v.end()));
}

TEST(GeneratorTest, RandomMatrixMeans) {
  for (auto d : {Distribution::kStandardNormal, Distribution::kShiftedExponential}) {
    double total = 0.0;
    for (std::uint64_t s = 0; s < 10; ++s) {
      Rng rng(s);
      total += grand_mean(gen_random_matrix(rng, 50, 50, d));
    }
    EXPECT_NEAR(total / 10, 0.0, 0.05) << to_string(d);
  }
  EXPECT_EQ(parse_distribution("shifted_exponential"), Distribution::kShiftedExponential);
  EXPECT_THROW(parse_distribution("cauchy"), InvalidArgument);
}

TEST(GeneratorTest, NoiselessBlockIsRankOne) {
  BlockSignalParams p;
  p.noise_sigma = 0.0;
  p.spike_cycles.clear();
  Rng rng(1);
  const auto s = singular_values(reshape(gen_block_signal(rng, p), 100).matrix);
  EXPECT_EQ(svr_from_spectrum(s), kSvrSentinel);
  EXPECT_LE(s[1], 1e-12 * s[0]);
}

TEST(GeneratorTest, BlockSpikeCyclesValidated) {
  BlockSignalParams p;
  p.spike_cycles = {10};
  Rng rng(1);
  EXPECT_THROW(gen_block_signal(rng, p), InvalidArgument);
}

TEST(GeneratorTest, NoiselessPeriodicSigma1) {
  Rng rng(1);
  const auto a = smooth_profile(50, std::sqrt(12.5));
  const auto s = singular_values(reshape(gen_periodic_signal(rng, a, 10, 0.0), 50, false).matrix);
  EXPECT_NEAR(s[0], std::sqrt(10.0) * std::sqrt(12.5), 1e-12);
  EXPECT_THROW(gen_periodic_signal(rng, a, 10, -1.0), InvalidArgument);
}

TEST(GeneratorTest, Fig5Sigma1) {
  const auto a0 = smooth_profile(50, std::sqrt(12.5));
  for (int k = 1; k <= 3; ++k) {
    std::vector<double> a(a0);
    for (double& v : a) v *= k;
    Rng rng(100 + k);
    const double s1 = singular_values(reshape(gen_periodic_signal(rng, a, 10, 0.2), 50, false).matrix)[0];
    EXPECT_NEAR(s1, 11.2 * k, 0.05 * 11.2 * k);
  }
}

TEST(GeneratorTest, CoolerAnalogShape) {
  Rng rng(42);
  const CoolerAnalog g = gen_cooler_analog(rng);
  EXPECT_EQ(g.series.size(), 4368u);
  EXPECT_EQ(g.surge_days.size(), 1u);
  EXPECT_EQ(g.shape_anomaly_days.size(), 1u);
  EXPECT_NE(g.surge_days[0], g.shape_anomaly_days[0]);
  EXPECT_GT(g.activity[g.surge_days[0]], 0.0);
  const auto profile = cooler_daily_profile();
  EXPECT_DOUBLE_EQ(profile[3], 0.25);
  EXPECT_DOUBLE_EQ(profile[12], 1.0);
  EXPECT_DOUBLE_EQ(profile[21], 0.25);
  CoolerParams short_run;
  short_run.days = 6;
  EXPECT_THROW(gen_cooler_analog(rng, short_run), InvalidArgument);
}

TEST(ExperimentTest, UniversalityWithheldOnOneTrial) {
  UniversalityOptions o;
  o.trials = 1;
  o.size = 10;
  const ExperimentResult r = experiment_universality(o);
  ASSERT_EQ(r.verdicts.size(), 2u);
  for (const Verdict& v : r.verdicts) EXPECT_TRUE(v.withheld);
  EXPECT_FALSE(r.passed());
  EXPECT_EQ(r.conditions[0].mean.size(), 10u);
}

TEST(ExperimentTest, MeanShiftZeroAlphaIdentical) {
  MeanShiftOptions o;
  o.alpha = 0.0;
  o.trials = 20;
  const ExperimentResult r = experiment_mean_shift(o);
  EXPECT_EQ(r.condition("zero_mean").spectra, r.condition("shifted").spectra);
}

TEST(ExperimentTest, MeanShiftHugeAlphaRankOne) {
  MeanShiftOptions o;
  o.p = 2;
  o.q = 2;
  o.alpha = 1e6;
  o.trials = 10;
  const ExperimentResult r = experiment_mean_shift(o);
  EXPECT_NEAR(r.condition("shifted").mean[0] / (o.alpha * 2.0), 1.0, 1e-5);
}

TEST(ExperimentTest, DeterministicAcrossThreads) {
  SignalStrengthOptions a;
  a.trials = 8;
  a.band_trials = 8;
  a.threads = 1;
  SignalStrengthOptions b = a;
  b.threads = 3;
  EXPECT_EQ(dump_json(experiment_json(experiment_signal_strength(a))),
            dump_json(experiment_json(experiment_signal_strength(b))));
}

TEST(ExperimentTest, MeanRelativeDifference) {
  EXPECT_DOUBLE_EQ(mean_relative_difference({2, 4}, {1, 4}), 0.25);
  EXPECT_THROW(mean_relative_difference({1}, {1, 2}), InvalidArgument);
}

}  // namespace
