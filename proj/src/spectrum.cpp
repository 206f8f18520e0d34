#include "cyclesvd/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "cyclesvd/error.hpp"
#include "cyclesvd/svd.hpp"
#include "parallel.hpp"

namespace cyclesvd {

double svr_from_spectrum(std::span<const double> sigmas) {
  if (sigmas.size() < 2) return kSvrSentinel;
  if (sigmas[1] <= kSvrSentinelRatio * sigmas[0]) return kSvrSentinel;
  return sigmas[0] / sigmas[1];
}

double svr(const CycleFrame& frame) { return svr_from_spectrum(singular_values(frame.matrix)); }

double quantile(std::vector<double> values, double q) {
  if (values.empty()) throw InvalidArgument("quantile of an empty sample");
  if (!(q >= 0.0 && q <= 1.0)) throw InvalidArgument("quantile level must lie in [0, 1]");
  std::sort(values.begin(), values.end());
  const double h = static_cast<double>(values.size() - 1) * q;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const double frac = h - static_cast<double>(lo);
  if (frac == 0.0 || lo + 1 >= values.size()) return values[lo];
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

double topographic_prominence(std::span<const double> values, std::size_t i) {
  const double h = values[i];
  double left_min = h;
  for (std::size_t j = i; j > 0;) {
    --j;
    if (values[j] > h) break;
    left_min = std::min(left_min, values[j]);
  }
  double right_min = h;
  for (std::size_t j = i + 1; j < values.size(); ++j) {
    if (values[j] > h) break;
    right_min = std::min(right_min, values[j]);
  }
  const double base = std::max(left_min, right_min);
  if (std::isinf(h) && !std::isinf(base)) return kSvrSentinel;
  return h - base;
}

double repetition_score(std::span<const double> profile, std::size_t period) {
  if (period == 0) return 0.0;
  const std::size_t segments = profile.size() / period;
  if (segments == 0) return 0.0;
  std::vector<double> mean(period, 0.0);
  double total = 0.0;
  for (std::size_t s = 0; s < segments; ++s) {
    for (std::size_t i = 0; i < period; ++i) {
      const double x = profile[s * period + i];
      mean[i] += x;
      total += x * x;
    }
  }
  if (total <= 0.0) return 0.0;
  double mean_energy = 0.0;
  for (double& m : mean) {
    m /= static_cast<double>(segments);
    mean_energy += m * m;
  }
  return static_cast<double>(segments) * mean_energy / total;
}

double mean_shift_bound(double sigma1_zero_mean, double alpha, std::size_t p, std::size_t q) {
  if (!std::isfinite(sigma1_zero_mean) || !std::isfinite(alpha) || p == 0 || q == 0) {
    throw InvalidArgument("mean_shift_bound: inputs must be finite with p, q >= 1");
  }
  return std::sqrt(sigma1_zero_mean * sigma1_zero_mean +
                   alpha * alpha * static_cast<double>(p) * static_cast<double>(q));
}

SpectrumPrediction expected_spectrum(double signal_norm, double noise_sigma, std::size_t p, std::size_t q) {
  if (!(signal_norm >= 0.0) || !(noise_sigma >= 0.0) || !std::isfinite(signal_norm) ||
      !std::isfinite(noise_sigma)) {
    throw InvalidArgument("expected_spectrum: signal norm and noise sigma must be finite and >= 0");
  }
  const double pd = static_cast<double>(p);
  const double qd = static_cast<double>(q);
  return {std::sqrt(signal_norm * signal_norm * qd + noise_sigma * noise_sigma * pd),
          std::sqrt(qd) * noise_sigma};
}

namespace {

bool is_multiple(std::size_t small, std::size_t big) {
  const auto m = static_cast<std::size_t>(std::llround(static_cast<double>(big) / static_cast<double>(small)));
  if (m < 2) return false;
  const auto target = static_cast<long long>(m * small);
  return std::llabs(static_cast<long long>(big) - target) <= 1;
}

void annotate_harmonics(const Series& s, bool remove_mean, double threshold, std::vector<Peak>& peaks) {
  std::map<std::size_t, std::vector<double>> profiles;
  auto leading_profile = [&](std::size_t period) -> const std::vector<double>& {
    auto it = profiles.find(period);
    if (it == profiles.end()) {
      const SvdResult f = svd(reshape(s, period, remove_mean).matrix);
      it = profiles.emplace(period, f.u.column(0)).first;
    }
    return it->second;
  };

  for (std::size_t a = 0; a < peaks.size(); ++a) {
    for (std::size_t b = a + 1; b < peaks.size(); ++b) {
      if (!is_multiple(peaks[a].period, peaks[b].period)) continue;
      const double score = repetition_score(leading_profile(peaks[b].period), peaks[a].period);
      if (score < threshold) {
        peaks[a].subharmonic_of = peaks[b].period;
        peaks[a].repetition = score;
        break;
      }
    }
  }
  for (std::size_t b = 0; b < peaks.size(); ++b) {
    for (std::size_t a = 0; a < b; ++a) {
      if (peaks[a].subharmonic_of || !is_multiple(peaks[a].period, peaks[b].period)) continue;
      const double score = repetition_score(leading_profile(peaks[b].period), peaks[a].period);
      if (score >= threshold) {
        peaks[b].harmonic_of = peaks[a].period;
        peaks[b].repetition = score;
        break;
      }
    }
  }
}

}  // namespace

PeriodScan scan_periods(const Series& s, std::size_t p_min, std::size_t p_max, bool remove_mean,
                        const ScanOptions& options) {
  const std::size_t n = s.size();
  if (p_min < 2 || p_min >= p_max || p_max > max_period(n)) {
    std::ostringstream msg;
    msg << "scan range must satisfy 2 <= pmin < pmax <= " << max_period(n) << ", got [" << p_min << ", "
        << p_max << "]";
    throw InvalidArgument(msg.str());
  }
  if (options.null_trials == 0) throw InvalidArgument("scan needs at least one null trial");
  if (!(options.null_quantile > 0.0 && options.null_quantile < 1.0)) {
    throw InvalidArgument("null quantile must lie in (0, 1)");
  }

  PeriodScan scan;
  scan.mean_removed = remove_mean;
  scan.null_trials = options.null_trials;
  scan.null_quantile = options.null_quantile;
  scan.seed = options.seed;
  {
    long double sum = 0.0L;
    for (double x : s.values()) sum += x;
    scan.series_mean = static_cast<double>(sum / static_cast<long double>(n));
  }

  std::vector<std::vector<double>> surrogates(options.null_trials);
  for (std::size_t t = 0; t < options.null_trials; ++t) {
    surrogates[t].assign(s.values().begin(), s.values().end());
    Rng rng(derive_seed(options.seed, t));
    rng.shuffle(std::span<double>(surrogates[t]));
  }

  const std::size_t count = p_max - p_min + 1;
  scan.candidates.resize(count);
  scan.sigma1.resize(count);
  scan.sigma2.resize(count);
  scan.svr.resize(count);
  scan.null_band.resize(count);
  detail::parallel_for(count, options.threads, [&](std::size_t i) {
    const std::size_t p = p_min + i;
    try {
      const auto sig = singular_values(reshape(s.values(), p, remove_mean).matrix);
      std::vector<double> null(options.null_trials);
      for (std::size_t t = 0; t < options.null_trials; ++t) {
        null[t] = svr_from_spectrum(singular_values(reshape(surrogates[t], p, true).matrix));
      }
      scan.candidates[i] = p;
      scan.sigma1[i] = sig[0];
      scan.sigma2[i] = sig[1];
      scan.svr[i] = svr_from_spectrum(sig);
      scan.null_band[i] = quantile(std::move(null), options.null_quantile);
    } catch (const ConvergenceError& e) {
      throw ConvergenceError("period " + std::to_string(p) + ": " + e.what(), e.iterations());
    }
  });

  for (std::size_t i = 1; i + 1 < count; ++i) {
    const double v = scan.svr[i];
    if (!(v > scan.svr[i - 1] && v > scan.svr[i + 1])) continue;
    const double prominence = topographic_prominence(scan.svr, i);
    if (!(prominence > scan.null_band[i])) continue;
    Peak peak;
    peak.period = scan.candidates[i];
    peak.svr = v;
    peak.prominence = prominence;
    peak.null_band = scan.null_band[i];
    scan.peaks.push_back(peak);
  }
  annotate_harmonics(s, remove_mean, options.harmonic_repetition, scan.peaks);
  for (const Peak& p : scan.peaks) {
    if (!p.harmonic_of && !p.subharmonic_of) {
      scan.fundamental = p.period;
      break;
    }
  }
  return scan;
}

}  // namespace cyclesvd
