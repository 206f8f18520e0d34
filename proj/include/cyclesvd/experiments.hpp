#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclesvd/rng.hpp"

namespace cyclesvd {

// Trial-averaged spectra of one experimental condition.
struct Condition {
  std::string label;
  std::vector<std::vector<double>> spectra;  // one per trial, descending
  std::vector<double> mean;                  // per index
  std::vector<double> p05;
  std::vector<double> p95;
};

// One pass/fail assertion. `relation` reads "measured <relation> expected",
// or "measured in [expected_low, expected]".
struct Verdict {
  std::string name;
  double measured = 0.0;
  double expected = 0.0;
  std::optional<double> expected_low;
  std::string relation;
  bool passed = false;
  bool withheld = false;  // too few trials to judge; never counts as passed
  std::string note;
};

struct ExperimentResult {
  std::string name;
  nlohmann::json parameters;
  std::vector<Condition> conditions;
  std::vector<Verdict> verdicts;

  // True when every verdict is judged and passed.
  bool passed() const;
  const Condition& condition(const std::string& label) const;
  const Verdict& verdict(const std::string& name) const;
};

// Verdicts need at least this many trials; fewer are reported as withheld.
inline constexpr std::size_t kMinJudgedTrials = 50;

struct UniversalityOptions {
  std::size_t size = 50;
  std::size_t trials = 200;
  double self_consistency_tolerance = 0.01;
  double universality_tolerance = 0.03;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
};

struct MeanShiftOptions {
  std::size_t p = 10;
  std::size_t q = 10;
  double alpha = 5.0;
  std::size_t trials = 200;
  double bound_tolerance = 0.02;
  double tail_tolerance = 0.05;
  double svr_ratio = 2.0;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
};

struct SignalStrengthOptions {
  double epsilon = 0.2;
  std::size_t p = 50;
  std::size_t q = 10;
  std::vector<double> k_values{0, 1, 2, 3};
  double a0_norm = 3.5355339059327378;  // sqrt(12.5)
  double nominal_slope = 11.2;          // sigma1 ~ sqrt(q) ||a0|| k
  std::size_t trials = 50;
  std::size_t band_trials = 200;
  double band_quantile = 0.01;  // band is [q, 1 - q] of noise-only sigma1
  double sigma1_tolerance = 0.05;
  double gap_tolerance = 0.10;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
};

// Normal vs normal (fresh stream) vs shifted exponential square matrices.
ExperimentResult experiment_universality(const UniversalityOptions& options = {});
// Zero-mean normal A0 against A0 + alpha.
ExperimentResult experiment_mean_shift(const MeanShiftOptions& options = {});
// Frames of k * a0 repeated q times plus eps noise, for each k.
ExperimentResult experiment_signal_strength(const SignalStrengthOptions& options = {});

// (1/r) sum_i |a_i - b_i| / |a_i| over indices with a_i != 0.
double mean_relative_difference(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace cyclesvd
