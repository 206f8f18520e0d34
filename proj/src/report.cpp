#include "cyclesvd/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace cyclesvd {

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

nlohmann::json json_number(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

namespace {

nlohmann::json numbers(const std::vector<double>& v) {
  nlohmann::json a = nlohmann::json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

nlohmann::json scale_json(const RobustScale& s) {
  const char* method = s.method == RobustScale::Method::kMad       ? "mad"
                       : s.method == RobustScale::Method::kStdDev ? "stddev"
                                                                  : "degenerate";
  return {{"center", json_number(s.center)}, {"scale", json_number(s.scale)}, {"method", method}};
}

// Columns of `m` as CSV with a leading 0-based index column.
std::string columns_csv(const Matrix& m, const std::string& index_name, const std::string& prefix) {
  std::ostringstream out;
  out << index_name;
  for (std::size_t j = 0; j < m.cols(); ++j) out << ',' << prefix << j + 1;
  out << '\n';
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out << i;
    for (std::size_t j = 0; j < m.cols(); ++j) out << ',' << format_double(m(i, j));
    out << '\n';
  }
  return out.str();
}

}  // namespace

std::string series_csv(const Series& s) {
  std::ostringstream out;
  const bool timed = s.timestamps().has_value();
  out << (timed ? "value,time\n" : "value\n");
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << format_double(s.values()[i]);
    if (timed) out << ',' << format_double((*s.timestamps())[i]);
    out << '\n';
  }
  return out.str();
}

nlohmann::json scan_json(const PeriodScan& scan) {
  nlohmann::json peaks = nlohmann::json::array();
  for (const Peak& p : scan.peaks) {
    nlohmann::json j = {{"period", p.period}, {"svr", json_number(p.svr)}, {"prominence", json_number(p.prominence)},
                        {"null_band", json_number(p.null_band)}, {"repetition", json_number(p.repetition)},
                        {"harmonic_of", nullptr}, {"subharmonic_of", nullptr}};
    if (p.harmonic_of) j["harmonic_of"] = *p.harmonic_of;
    if (p.subharmonic_of) j["subharmonic_of"] = *p.subharmonic_of;
    peaks.push_back(std::move(j));
  }
  nlohmann::json j = {{"p_min", scan.candidates.empty() ? 0 : scan.candidates.front()},
                      {"p_max", scan.candidates.empty() ? 0 : scan.candidates.back()},
                      {"peaks", std::move(peaks)},
                      {"fundamental", nullptr},
                      {"mean_removed", scan.mean_removed},
                      {"series_mean", json_number(scan.series_mean)},
                      {"null_trials", scan.null_trials},
                      {"null_quantile", json_number(scan.null_quantile)},
                      {"seed", scan.seed}};
  if (scan.fundamental) j["fundamental"] = *scan.fundamental;
  return j;
}

std::string scan_csv(const PeriodScan& scan) {
  std::ostringstream out;
  out << "period,sigma1,sigma2,svr,null_band,peak\n";
  for (std::size_t i = 0; i < scan.candidates.size(); ++i) {
    const std::size_t p = scan.candidates[i];
    const bool peak = std::any_of(scan.peaks.begin(), scan.peaks.end(), [p](const Peak& k) { return k.period == p; });
    out << p << ',' << format_double(scan.sigma1[i]) << ',' << format_double(scan.sigma2[i]) << ','
        << format_double(scan.svr[i]) << ',' << format_double(scan.null_band[i]) << ',' << (peak ? 1 : 0) << '\n';
  }
  return out.str();
}

nlohmann::json decomposition_json(const CycleFrame& frame, const RankKApprox& approx) {
  return {{"name", frame.name},
          {"period", frame.period},
          {"cycles", frame.cycles},
          {"dropped_tail", frame.dropped_tail},
          {"mean_removed", json_number(frame.mean_removed)},
          {"rank", approx.k},
          {"sigmas", numbers(approx.sigmas)},
          {"spectrum", numbers(approx.spectrum)},
          {"frobenius_residual", json_number(approx.frob_residual)},
          {"spectral_residual", json_number(approx.spectral_residual)},
          {"tail_energy", json_number(approx.tail_energy())}};
}

std::string sigma_csv(const RankKApprox& approx) {
  double total = 0.0;
  for (double s : approx.spectrum) total += s * s;
  std::ostringstream out;
  out << "index,sigma,energy_fraction,cumulative_energy,retained\n";
  double cum = 0.0;
  for (std::size_t i = 0; i < approx.spectrum.size(); ++i) {
    const double e = approx.spectrum[i] * approx.spectrum[i];
    cum += e;
    out << i + 1 << ',' << format_double(approx.spectrum[i]) << ',' << format_double(total > 0 ? e / total : 0.0)
        << ',' << format_double(total > 0 ? cum / total : 0.0) << ',' << (i < approx.k ? 1 : 0) << '\n';
  }
  return out.str();
}

std::string u_profiles_csv(const RankKApprox& approx) { return columns_csv(approx.u_profiles, "phase", "u"); }
std::string v_coeffs_csv(const RankKApprox& approx) { return columns_csv(approx.v_coeffs, "cycle", "v"); }

std::string reconstruction_csv(const CycleFrame& frame, const RankKApprox& approx) {
  const Series fitted = approximation_series(frame, approx);
  const Series resid = residual_series(frame, approx);
  std::ostringstream out;
  out << "index,cycle,phase,value,approximation,residual\n";
  for (std::size_t t = 0; t < fitted.size(); ++t) {
    out << t << ',' << t / frame.period << ',' << t % frame.period << ','
        << format_double(fitted.values()[t] + resid.values()[t]) << ',' << format_double(fitted.values()[t]) << ','
        << format_double(resid.values()[t]) << '\n';
  }
  return out.str();
}

nlohmann::json outliers_json(const OutlierReport& report, const RankKApprox& approx) {
  nlohmann::json events = nlohmann::json::array();
  for (const CycleExplanation& e : explain(report, approx)) {
    events.push_back({{"cycle", e.cycle},
                      {"class", to_string(e.kind)},
                      {"contributions", numbers(e.contributions)},
                      {"residual_energy", json_number(e.residual_energy)},
                      {"median_residual_energy", json_number(e.median_residual_energy)},
                      {"dominant_component", e.dominant_component},
                      {"max_abs_z", json_number(e.max_abs_z)}});
  }
  return {{"period", report.period},
          {"rank", approx.k},
          {"z_threshold", json_number(report.z_threshold)},
          {"saliency_threshold", json_number(report.s_threshold)},
          {"residual_scale", scale_json(report.residual_scale)},
          {"point_flags", report.point_flags.size()},
          {"cycle_flags", report.cycle_flags.size()},
          {"events", std::move(events)}};
}

std::string events_csv(const OutlierReport& report) {
  std::ostringstream out;
  out << "cycle,class,points,flags\n";
  for (const OutlierEvent& e : report.events) {
    out << e.cycle << ',' << to_string(e.kind) << ',' << e.points.size() << ',' << e.flags.size() << '\n';
  }
  return out.str();
}

std::string point_flags_csv(const OutlierReport& report) {
  std::ostringstream out;
  out << "index,cycle,phase,value,residual,zscore\n";
  for (const PointFlag& f : report.point_flags) {
    out << f.index << ',' << f.index / report.period << ',' << f.index % report.period << ','
        << format_double(f.value) << ',' << format_double(f.residual) << ',' << format_double(f.zscore) << '\n';
  }
  return out.str();
}

std::string cycle_flags_csv(const OutlierReport& report) {
  std::ostringstream out;
  out << "cycle,component,v_coefficient,saliency\n";
  for (const CycleFlag& f : report.cycle_flags) {
    out << f.cycle << ',' << f.component << ',' << format_double(f.v_coefficient) << ','
        << format_double(f.saliency) << '\n';
  }
  return out.str();
}

nlohmann::json experiment_json(const ExperimentResult& result) {
  nlohmann::json conditions = nlohmann::json::array();
  for (const Condition& c : result.conditions) {
    conditions.push_back({{"label", c.label}, {"trials", c.spectra.size()}, {"mean", numbers(c.mean)},
                          {"p05", numbers(c.p05)}, {"p95", numbers(c.p95)}});
  }
  nlohmann::json verdicts = nlohmann::json::array();
  for (const Verdict& v : result.verdicts) {
    verdicts.push_back({{"name", v.name}, {"measured", json_number(v.measured)}, {"relation", v.relation},
                        {"expected", json_number(v.expected)}, {"expected_low", nullptr}, {"passed", v.passed},
                        {"withheld", v.withheld}, {"note", v.note}});
    if (v.expected_low) verdicts.back()["expected_low"] = json_number(*v.expected_low);
  }
  return {{"experiment", result.name}, {"parameters", result.parameters}, {"conditions", std::move(conditions)},
          {"verdicts", std::move(verdicts)}, {"passed", result.passed()}};
}

std::string experiment_csv(const ExperimentResult& result) {
  std::ostringstream out;
  out << "index";
  std::size_t rows = 0;
  for (const Condition& c : result.conditions) {
    out << ',' << c.label << "_mean," << c.label << "_p05," << c.label << "_p95";
    rows = std::max(rows, c.mean.size());
  }
  out << '\n';
  for (std::size_t i = 0; i < rows; ++i) {
    out << i + 1;
    for (const Condition& c : result.conditions) {
      if (i < c.mean.size()) {
        out << ',' << format_double(c.mean[i]) << ',' << format_double(c.p05[i]) << ',' << format_double(c.p95[i]);
      } else {
        out << ",,,";
      }
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace cyclesvd
