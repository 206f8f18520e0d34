#include <algorithm>
#include <cmath>

#include "gtest/gtest.h"
#include "cyclesvd/error.hpp"
#include "cyclesvd/lowrank.hpp"
#include "cyclesvd/synth.hpp"
#include "test_util.hpp"

namespace {
using namespace cyclesvd;
using cyclesvd::test::random_matrix;

CycleFrame frame_of(const Matrix& m) {
  std::vector<double> x;
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) x.push_back(m(i, j));
  return reshape(x, m.rows(), false);
}

CycleFrame block_frame(std::uint64_t seed) {
  Rng rng(seed);
  return reshape(gen_block_signal(rng), 100);
}

TEST(LowRankTest, RankValidated) {
  const CycleFrame f = frame_of(random_matrix(1, 6, 4));
  EXPECT_THROW(approximate(f, 0), InvalidArgument);
  EXPECT_THROW(approximate(f, 5), InvalidArgument);
}

TEST(LowRankTest, SplitAndTailIdentity) {
  const Matrix m = random_matrix(64, 6, 4);
  const CycleFrame f = frame_of(m);
  const auto oracle = singular_values_via_gram(m);
  const RankKApprox a = approximate(f, 2);
  EXPECT_LE(max_abs_diff(add(a.approx_frame, a.residual_frame), f.matrix), 1e-12);
  const double tail = oracle[2] * oracle[2] + oracle[3] * oracle[3];
  EXPECT_NEAR(a.frob_residual * a.frob_residual, tail, 1e-9 * tail);
  EXPECT_NEAR(a.spectral_residual, oracle[2], 1e-10);
  EXPECT_EQ(a.u_profiles.cols(), 2u);
  EXPECT_EQ(a.v_coeffs.rows(), 4u);
}

TEST(LowRankTest, FullRankHasNoResidual) {
  const CycleFrame f = frame_of(random_matrix(2, 5, 5));
  const RankKApprox a = approximate(f, 5);
  EXPECT_LE(a.frob_residual, 1e-9);
  EXPECT_EQ(a.spectral_residual, 0.0);
  const Series resid = residual_series(f, a);
  for (double r : resid.values()) EXPECT_NEAR(r, 0.0, 1e-12);
}

TEST(LowRankTest, AdditivityAndOrthogonality) {
  const CycleFrame f = frame_of(random_matrix(3, 9, 7));
  const SvdResult s = svd(f.matrix);
  for (std::size_t k = 1; k <= 7; ++k) {
    const RankKApprox a = approximate(f, s, k);
    Matrix sum(9, 7);
    for (std::size_t j = 0; j < k; ++j) {
      std::vector<double> d(63);
      for (std::size_t r = 0; r < 9; ++r)
        for (std::size_t c = 0; c < 7; ++c) d[r * 7 + c] = s.s[j] * s.u(r, j) * s.v(c, j);
      sum = add(sum, Matrix(9, 7, d));
    }
    EXPECT_LE(max_abs_diff(sum, a.approx_frame), 1e-10);
    const double fro = frobenius_norm(f.matrix);
    EXPECT_LE(std::abs(inner_product(a.approx_frame, a.residual_frame)), 1e-8 * fro * fro);
  }
}

TEST(LowRankTest, EckartYoungAgainstRandomCompetitors) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CycleFrame f = frame_of(random_matrix(500 + seed, 8, 5));
    for (std::size_t k = 1; k < 5; ++k) {
      const RankKApprox a = approximate(f, k);
      for (std::uint64_t c = 0; c < 10; ++c) {
        const Matrix competitor = matmul(random_matrix(seed * 100 + c, 8, k), random_matrix(seed * 100 + c + 50, k, 5));
        EXPECT_LE(a.frob_residual, frobenius_norm(subtract(f.matrix, competitor)));
      }
    }
  }
}

TEST(SignificantRankTest, Examples) {
  EXPECT_EQ(significant_rank(std::vector<double>{10, 0, 0}, 0.99), 1u);
  EXPECT_EQ(significant_rank(std::vector<double>{3, 3, 3}, 0.5), 2u);
  EXPECT_EQ(significant_rank(std::vector<double>{0, 0}, 0.99), 0u);
  EXPECT_EQ(significant_rank(std::vector<double>{3, 3, 3}, 1.0), 3u);
  EXPECT_THROW(significant_rank(std::vector<double>{1, 2}, 0.0), InvalidArgument);
}

TEST(BlockSignalDecompositionTest, TwoSignificantComponents) {
  const CycleFrame f = block_frame(42);
  const SvdResult s = svd(f.matrix);
  EXPECT_EQ(significant_rank(s.s), 2u);
  EXPECT_LT(s.s[2] / s.s[0], 0.1);
  const RankKApprox a = approximate(f, s, 2);
  EXPECT_EQ(approximation_series(f, a).size(), 1000u);
}

TEST(BlockSignalDecompositionTest, RankTwoResidualHasNoPeriodicStructure) {
  const CycleFrame f = block_frame(42);
  const auto r = residual_series(f, approximate(f, 2));
  const auto x = r.values();
  double num = 0.0, den = 0.0;
  for (std::size_t t = 0; t < x.size(); ++t) {
    den += x[t] * x[t];
    if (t + 100 < x.size()) num += x[t] * x[t + 100];
  }
  EXPECT_LT(std::abs(num / den), 0.2);
}

TEST(BlockSignalDecompositionTest, RankOneResidualConcentratesOnSpikes) {
  const CycleFrame f = block_frame(42);
  const RankKApprox a = approximate(f, 1);
  std::vector<std::pair<double, std::size_t>> energy;
  for (std::size_t j = 0; j < f.cycles; ++j) {
    double e = 0.0;
    for (std::size_t i = 0; i < f.period; ++i) e += a.residual_frame(i, j) * a.residual_frame(i, j);
    energy.emplace_back(e, j);
  }
  std::sort(energy.rbegin(), energy.rend());
  std::vector<std::size_t> top{energy[0].second, energy[1].second, energy[2].second};
  std::sort(top.begin(), top.end());
  EXPECT_EQ(top, (std::vector<std::size_t>{2, 5, 8}));
}

}  // namespace
