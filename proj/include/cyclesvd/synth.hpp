#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cyclesvd/matrix.hpp"
#include "cyclesvd/rng.hpp"
#include "cyclesvd/series.hpp"

namespace cyclesvd {

enum class Distribution {
  kStandardNormal,
  kShiftedExponential,  // rate-1 exponential minus 1: mean 0, variance 1
};
std::string to_string(Distribution d);
Distribution parse_distribution(const std::string& text);

Matrix gen_random_matrix(Rng& rng, std::size_t p, std::size_t q, Distribution distribution);

// Square wave with one high block per cycle, i.i.d. Gaussian noise and
// short spikes at a fixed in-cycle offset in selected cycles.
struct BlockSignalParams {
  std::size_t n = 1000;
  std::size_t period = 100;
  std::size_t block_start = 17;  // high on [block_start, block_end) of each cycle
  std::size_t block_end = 58;
  double level = 1.0;
  double noise_sigma = 0.05;
  std::vector<std::size_t> spike_cycles{2, 5, 8};
  double spike_height = 1.2;
  std::size_t spike_offset = 70;
  std::size_t spike_width = 3;
};

Series gen_block_signal(Rng& rng, const BlockSignalParams& params = {});

// q repetitions of `profile` plus i.i.d. N(0, noise_sigma^2) noise.
Series gen_periodic_signal(Rng& rng, std::span<const double> profile, std::size_t q, double noise_sigma);

// One sine period over p samples, scaled to Euclidean norm `norm`.
std::vector<double> smooth_profile(std::size_t p, double norm);

// Hourly load of a cooler that runs in bursts of active days separated by
// idle days. An active day follows the daily profile scaled by that burst's
// level; idle days are off. Two kinds of labelled anomalies are injected on
// active days:
//   surge: extra load during the morning hours (a regular but unusual shape
//          that a second profile can absorb);
//   shape: a short spike-and-dip inside the night baseline that no daily
//          profile represents.
// Measurement noise is uniform on [-noise_halfwidth, noise_halfwidth].
struct CoolerParams {
  std::size_t days = 182;
  double baseline = 0.25;      // night level relative to the daytime plateau
  double plateau = 1.0;
  std::size_t ramp_up_hour = 7;     // half-level hour before the plateau starts at 8
  std::size_t ramp_down_hour = 19;  // half-level hour; baseline again from 20
  double noise_halfwidth = 0.03;
  std::size_t min_active_run = 6;
  std::size_t max_active_run = 20;
  std::size_t min_idle_run = 3;
  std::size_t max_idle_run = 12;
  double level_lo = 0.7;
  double level_hi = 1.3;
  double day_jitter = 0.05;
  std::size_t surge_days = 1;
  double surge_gain = 1.5;
  std::size_t surge_start_hour = 8;
  std::size_t surge_hours = 4;
  std::size_t shape_anomaly_days = 1;
  double shape_amplitude = 0.2;
  std::size_t shape_hour = 2;
};

inline constexpr std::size_t kHoursPerDay = 24;

struct CoolerAnalog {
  Series series;
  std::vector<double> activity;                // per-day level, 0 when idle
  std::vector<std::size_t> surge_days;         // ascending
  std::vector<std::size_t> shape_anomaly_days;  // ascending
};

std::vector<double> cooler_daily_profile(const CoolerParams& params = {});
CoolerAnalog gen_cooler_analog(Rng& rng, const CoolerParams& params = {});

}  // namespace cyclesvd
