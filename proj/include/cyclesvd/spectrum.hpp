#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cyclesvd/frame.hpp"
#include "cyclesvd/rng.hpp"
#include "cyclesvd/series.hpp"

namespace cyclesvd {

// sigma2 <= kSvrSentinelRatio * sigma1 reports SVR as +infinity.
inline constexpr double kSvrSentinelRatio = 1e-12;
inline constexpr double kSvrSentinel = std::numeric_limits<double>::infinity();

// sigma1 / sigma2 from a sorted spectrum, or the sentinel.
double svr_from_spectrum(std::span<const double> sigmas);
// Singular value ratio of a frame from a fresh SVD.
double svr(const CycleFrame& frame);

struct Peak {
  std::size_t period = 0;
  double svr = 0.0;
  double prominence = 0.0;  // height above the higher of its two bases
  double null_band = 0.0;   // threshold the prominence had to exceed
  // Smallest detected peak whose period divides this one and whose
  // repetition the leading profile here confirms.
  std::optional<std::size_t> harmonic_of;
  // Larger peak at a multiple of this period whose leading profile does
  // not repeat at this period: this peak is a divisor artifact.
  std::optional<std::size_t> subharmonic_of;
  double repetition = 0.0;  // repetition score that decided harmonic_of/subharmonic_of
};

struct PeriodScan {
  std::vector<std::size_t> candidates;
  std::vector<double> sigma1;
  std::vector<double> sigma2;
  std::vector<double> svr;
  std::vector<double> null_band;  // per candidate
  std::vector<Peak> peaks;
  std::optional<std::size_t> fundamental;
  bool mean_removed = true;
  double series_mean = 0.0;
  std::size_t null_trials = 0;
  double null_quantile = 0.0;
  std::uint64_t seed = kDefaultSeed;
};

struct ScanOptions {
  std::size_t null_trials = 50;
  double null_quantile = 0.99;
  // Repetition score at or above which a multiple is a harmonic.
  double harmonic_repetition = 0.5;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;  // 0 = hardware concurrency
};

// Scans every integer period in [p_min, p_max]. Requires
// 2 <= p_min < p_max <= floor(n / 2).
PeriodScan scan_periods(const Series& s, std::size_t p_min, std::size_t p_max, bool remove_mean = true,
                        const ScanOptions& options = {});

// Topographic prominence of values[i] (strict local maximum assumed).
double topographic_prominence(std::span<const double> values, std::size_t i);

// Fraction of the energy of `profile` (truncated to whole segments) explained
// by repeating its mean length-`period` segment; 1 for an exactly
// period-repeating profile, 0 when segments cancel.
double repetition_score(std::span<const double> profile, std::size_t period);

// sqrt(sigma1_zero_mean^2 + alpha^2 p q): approximate upper bound on sigma1
// after adding alpha to every entry of a zero-mean p x q matrix.
double mean_shift_bound(double sigma1_zero_mean, double alpha, std::size_t p, std::size_t q);

struct SpectrumPrediction {
  double sigma1 = 0.0;  // sqrt(a^2 q + eps^2 p)
  double tail = 0.0;    // sqrt(q) eps, for i >= 2
};

// Predicted spectrum of A = a 1_q^T + eps N (p x q, N i.i.d. unit variance).
SpectrumPrediction expected_spectrum(double signal_norm, double noise_sigma, std::size_t p, std::size_t q);

// Linear-interpolated sample quantile (type 7). `values` need not be sorted.
double quantile(std::vector<double> values, double q);

}  // namespace cyclesvd
