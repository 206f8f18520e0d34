#include "cyclesvd/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cyclesvd/error.hpp"

namespace cyclesvd {

std::string to_string(Distribution d) {
  return d == Distribution::kStandardNormal ? "standard_normal" : "shifted_exponential";
}

Distribution parse_distribution(const std::string& text) {
  if (text == "standard_normal") return Distribution::kStandardNormal;
  if (text == "shifted_exponential") return Distribution::kShiftedExponential;
  throw InvalidArgument("unknown distribution '" + text + "'");
}

Matrix gen_random_matrix(Rng& rng, std::size_t p, std::size_t q, Distribution distribution) {
  std::vector<double> data(p * q);
  for (double& x : data) {
    x = distribution == Distribution::kStandardNormal ? rng.normal() : rng.exponential() - 1.0;
  }
  return Matrix(p, q, std::move(data));
}

Series gen_block_signal(Rng& rng, const BlockSignalParams& params) {
  const std::size_t cycles = params.period == 0 ? 0 : params.n / params.period;
  if (params.period < 2 || cycles < 1) throw InvalidArgument("block signal needs period >= 2 and n >= period");
  if (params.block_start >= params.block_end || params.block_end > params.period) {
    throw InvalidArgument("block must satisfy block_start < block_end <= period");
  }
  if (params.spike_offset + params.spike_width > params.period) {
    throw InvalidArgument("spike does not fit inside one cycle");
  }
  for (std::size_t c : params.spike_cycles) {
    if (c >= cycles) {
      std::ostringstream msg;
      msg << "spike cycle " << c << " outside [0, " << cycles << ")";
      throw InvalidArgument(msg.str());
    }
  }
  std::vector<double> x(params.n);
  for (std::size_t t = 0; t < params.n; ++t) {
    const std::size_t phase = t % params.period;
    const bool high = phase >= params.block_start && phase < params.block_end;
    x[t] = (high ? params.level : 0.0) + params.noise_sigma * rng.normal();
  }
  for (std::size_t c : params.spike_cycles) {
    for (std::size_t w = 0; w < params.spike_width; ++w) x[c * params.period + params.spike_offset + w] += params.spike_height;
  }
  return Series(std::move(x), "block");
}

Series gen_periodic_signal(Rng& rng, std::span<const double> profile, std::size_t q, double noise_sigma) {
  if (profile.empty() || q == 0) throw InvalidArgument("periodic signal needs a profile and q >= 1");
  if (!(noise_sigma >= 0.0)) throw InvalidArgument("noise sigma must be >= 0");
  std::vector<double> x;
  x.reserve(profile.size() * q);
  for (std::size_t j = 0; j < q; ++j)
    for (double a : profile) x.push_back(a + noise_sigma * rng.normal());
  return Series(std::move(x), "periodic");
}

std::vector<double> smooth_profile(std::size_t p, double norm) {
  std::vector<double> a(p);
  double ss = 0.0;
  for (std::size_t i = 0; i < p; ++i) {
    a[i] = std::sin(2.0 * std::numbers::pi * (static_cast<double>(i) + 0.5) / static_cast<double>(p));
    ss += a[i] * a[i];
  }
  const double f = ss > 0.0 ? norm / std::sqrt(ss) : 0.0;
  for (double& v : a) v *= f;
  return a;
}

std::vector<double> cooler_daily_profile(const CoolerParams& params) {
  std::vector<double> s(kHoursPerDay, params.baseline);
  for (std::size_t h = params.ramp_up_hour + 1; h < params.ramp_down_hour; ++h) s[h] = params.plateau;
  const double half = 0.5 * (params.baseline + params.plateau);
  s[params.ramp_up_hour] = half;
  s[params.ramp_down_hour] = half;
  return s;
}

CoolerAnalog gen_cooler_analog(Rng& rng, const CoolerParams& params) {
  if (params.days < 7) throw InvalidArgument("cooler analog needs at least 7 days");
  if (params.surge_start_hour + params.surge_hours > kHoursPerDay || params.shape_hour + 2 > kHoursPerDay ||
      params.ramp_up_hour + 1 >= params.ramp_down_hour || params.ramp_down_hour >= kHoursPerDay) {
    throw InvalidArgument("cooler profile hours out of range");
  }
  if (params.min_active_run == 0 || params.min_idle_run == 0 || params.min_active_run > params.max_active_run ||
      params.min_idle_run > params.max_idle_run) {
    throw InvalidArgument("cooler burst run lengths invalid");
  }

  std::vector<double> activity(params.days, 0.0);
  bool active = rng.uniform() < 0.5;
  for (std::size_t d = 0; d < params.days;) {
    const std::size_t lo = active ? params.min_active_run : params.min_idle_run;
    const std::size_t hi = active ? params.max_active_run : params.max_idle_run;
    const std::size_t len = lo + rng.index(hi - lo + 1);
    const double level = rng.uniform(params.level_lo, params.level_hi);
    for (std::size_t i = d; i < std::min(params.days, d + len); ++i) {
      activity[i] = active ? level * rng.uniform(1.0 - params.day_jitter, 1.0 + params.day_jitter) : 0.0;
    }
    d += len;
    active = !active;
  }

  std::vector<std::size_t> active_days;
  for (std::size_t d = 0; d < params.days; ++d)
    if (activity[d] > 0.0) active_days.push_back(d);
  const std::size_t anomalies = params.surge_days + params.shape_anomaly_days;
  if (anomalies > active_days.size()) throw InvalidArgument("more anomalies than active days");
  // Partial Fisher-Yates: the first `anomalies` entries become a uniform sample.
  for (std::size_t i = 0; i < anomalies; ++i) {
    std::swap(active_days[i], active_days[i + rng.index(active_days.size() - i)]);
  }
  std::vector<std::size_t> surge(active_days.begin(), active_days.begin() + static_cast<std::ptrdiff_t>(params.surge_days));
  std::vector<std::size_t> shape(active_days.begin() + static_cast<std::ptrdiff_t>(params.surge_days),
                                 active_days.begin() + static_cast<std::ptrdiff_t>(anomalies));
  std::sort(surge.begin(), surge.end());
  std::sort(shape.begin(), shape.end());

  const std::vector<double> profile = cooler_daily_profile(params);
  std::vector<double> x(params.days * kHoursPerDay);
  for (std::size_t d = 0; d < params.days; ++d)
    for (std::size_t h = 0; h < kHoursPerDay; ++h) x[d * kHoursPerDay + h] = activity[d] * profile[h];
  for (std::size_t d : surge) {
    for (std::size_t h = params.surge_start_hour; h < params.surge_start_hour + params.surge_hours; ++h) {
      x[d * kHoursPerDay + h] += params.surge_gain * activity[d];
    }
  }
  for (std::size_t d : shape) {
    x[d * kHoursPerDay + params.shape_hour] += params.shape_amplitude;
    x[d * kHoursPerDay + params.shape_hour + 1] -= params.shape_amplitude;
  }
  for (double& v : x) v += rng.uniform(-params.noise_halfwidth, params.noise_halfwidth);

  return CoolerAnalog{Series(std::move(x), "cooler"), std::move(activity), std::move(surge), std::move(shape)};
}

}  // namespace cyclesvd
