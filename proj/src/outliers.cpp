#include "cyclesvd/outliers.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "cyclesvd/error.hpp"

namespace cyclesvd {

namespace {

double median(std::vector<double> v) {
  const std::size_t n = v.size();
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(n / 2);
  std::nth_element(v.begin(), mid, v.end());
  const double upper = *mid;
  if (n % 2 == 1) return upper;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

double rms(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return std::sqrt(sum / static_cast<double>(v.size()));
}

// Residuals below this multiple of the frame's RMS are rounding noise.
constexpr double kNumericalZero = 1e-10;

}  // namespace

std::string to_string(EventClass c) {
  switch (c) {
    case EventClass::kProfileCaptured: return "PROFILE_CAPTURED";
    case EventClass::kResidualOutlier: return "RESIDUAL_OUTLIER";
    case EventClass::kBoth: return "BOTH";
  }
  return "RESIDUAL_OUTLIER";
}

RobustScale robust_scale(std::span<const double> values, double zero_floor) {
  RobustScale out;
  if (values.empty()) return out;
  std::vector<double> v(values.begin(), values.end());
  out.center = median(v);
  for (double& x : v) x = std::fabs(x - out.center);
  const double mad = kMadToSigma * median(std::move(v));
  if (mad > zero_floor) {
    out.scale = mad;
    out.method = RobustScale::Method::kMad;
    return out;
  }
  double mean = 0.0;
  for (double x : values) mean += x;
  mean /= static_cast<double>(values.size());
  double ss = 0.0;
  for (double x : values) ss += (x - mean) * (x - mean);
  const double sd = values.size() > 1 ? std::sqrt(ss / static_cast<double>(values.size() - 1)) : 0.0;
  if (sd > zero_floor) {
    out.scale = sd;
    out.method = RobustScale::Method::kStdDev;
  }
  return out;
}

OutlierReport detect(const CycleFrame& frame, const RankKApprox& approx, double z_threshold,
                     double s_threshold) {
  if (!(z_threshold > 0.0) || !(s_threshold > 0.0)) throw InvalidArgument("thresholds must be positive");
  if (approx.residual_frame.rows() != frame.period || approx.residual_frame.cols() != frame.cycles) {
    throw InvalidArgument("detect: approximation does not match the frame");
  }
  OutlierReport report;
  report.z_threshold = z_threshold;
  report.s_threshold = s_threshold;
  report.period = frame.period;

  const std::vector<double> residuals = flatten_raw(approx.residual_frame);
  const double floor = kNumericalZero * rms(frame.matrix.data());
  report.residual_scale = robust_scale(residuals, floor);
  if (report.residual_scale.method == RobustScale::Method::kDegenerate) return report;

  const std::vector<double> observed = flatten_raw(frame.matrix);
  for (std::size_t t = 0; t < residuals.size(); ++t) {
    const double z = (residuals[t] - report.residual_scale.center) / report.residual_scale.scale;
    if (std::fabs(z) >= z_threshold) {
      report.point_flags.push_back({t, observed[t] + frame.mean_removed, residuals[t], z});
    }
  }

  // V columns have unit norm; the floor only has to catch exact degeneracy.
  for (std::size_t c = 1; c < approx.k; ++c) {
    const std::vector<double> vcol = approx.v_coeffs.column(c);
    const RobustScale rs = robust_scale(vcol, kNumericalZero / std::sqrt(static_cast<double>(vcol.size())));
    if (rs.method == RobustScale::Method::kDegenerate) continue;
    for (std::size_t j = 0; j < vcol.size(); ++j) {
      const double saliency = std::fabs(vcol[j] - rs.center) / rs.scale;
      if (saliency >= s_threshold) report.cycle_flags.push_back({j, c + 1, vcol[j], saliency});
    }
  }
  std::sort(report.cycle_flags.begin(), report.cycle_flags.end(), [](const CycleFlag& a, const CycleFlag& b) {
    return a.cycle != b.cycle ? a.cycle < b.cycle : a.component < b.component;
  });

  std::map<std::size_t, OutlierEvent> by_cycle;
  for (std::size_t i = 0; i < report.point_flags.size(); ++i) {
    const std::size_t cycle = report.point_flags[i].index / frame.period;
    auto& ev = by_cycle[cycle];
    ev.cycle = cycle;
    ev.points.push_back(i);
  }
  for (std::size_t i = 0; i < report.cycle_flags.size(); ++i) {
    auto& ev = by_cycle[report.cycle_flags[i].cycle];
    ev.cycle = report.cycle_flags[i].cycle;
    ev.flags.push_back(i);
  }
  for (auto& [cycle, ev] : by_cycle) {
    if (!ev.points.empty() && !ev.flags.empty()) {
      ev.kind = EventClass::kBoth;
    } else if (!ev.flags.empty()) {
      ev.kind = EventClass::kProfileCaptured;
    } else {
      ev.kind = EventClass::kResidualOutlier;
    }
    report.events.push_back(std::move(ev));
  }
  return report;
}

std::vector<CycleExplanation> explain(const OutlierReport& report, const RankKApprox& approx) {
  std::vector<CycleExplanation> out;
  if (report.events.empty()) return out;
  const Matrix& res = approx.residual_frame;
  std::vector<double> energies(res.cols(), 0.0);
  for (std::size_t i = 0; i < res.rows(); ++i)
    for (std::size_t j = 0; j < res.cols(); ++j) energies[j] += res(i, j) * res(i, j);
  const double median_energy = median(energies);

  for (const OutlierEvent& ev : report.events) {
    CycleExplanation ex;
    ex.cycle = ev.cycle;
    ex.kind = ev.kind;
    for (std::size_t c = 0; c < approx.k; ++c) {
      ex.contributions.push_back(approx.sigmas[c] * approx.v_coeffs(ev.cycle, c));
    }
    ex.residual_energy = ev.cycle < energies.size() ? energies[ev.cycle] : 0.0;
    ex.median_residual_energy = median_energy;
    double best = -1.0;
    for (std::size_t f : ev.flags) {
      if (report.cycle_flags[f].saliency > best) {
        best = report.cycle_flags[f].saliency;
        ex.dominant_component = report.cycle_flags[f].component;
      }
    }
    for (std::size_t p : ev.points) ex.max_abs_z = std::max(ex.max_abs_z, std::fabs(report.point_flags[p].zscore));
    out.push_back(std::move(ex));
  }
  return out;
}

std::string explain_text(const OutlierReport& report, const RankKApprox& approx) {
  std::ostringstream os;
  os.precision(4);
  for (const CycleExplanation& ex : explain(report, approx)) {
    os << "cycle " << ex.cycle << ": " << to_string(ex.kind);
    if (ex.dominant_component > 0) {
      os << "; absorbed by component " << ex.dominant_component;
    }
    if (ex.max_abs_z > 0.0) os << "; max |z| " << ex.max_abs_z;
    os << "; contributions";
    for (std::size_t c = 0; c < ex.contributions.size(); ++c) {
      os << (c == 0 ? " " : ", ") << "c" << c + 1 << "=" << ex.contributions[c];
    }
    os << "; residual energy " << ex.residual_energy << " (median " << ex.median_residual_energy << ")\n";
  }
  return os.str();
}

}  // namespace cyclesvd
