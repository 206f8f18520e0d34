#pragma once

#include <string>

#include <json.hpp>

#include "cyclesvd/experiments.hpp"
#include "cyclesvd/frame.hpp"
#include "cyclesvd/lowrank.hpp"
#include "cyclesvd/outliers.hpp"
#include "cyclesvd/series.hpp"
#include "cyclesvd/spectrum.hpp"

namespace cyclesvd {

// "%.17g", with "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double x);
// JSON number, or the format_double string for non-finite values.
nlohmann::json json_number(double x);

// CSV text always ends with a newline; JSON text is indented by two.
// Value in the first column so the default column selector reads it back.
std::string series_csv(const Series& s);

nlohmann::json scan_json(const PeriodScan& scan);
std::string scan_csv(const PeriodScan& scan);  // one row per candidate period

nlohmann::json decomposition_json(const CycleFrame& frame, const RankKApprox& approx);
std::string sigma_csv(const RankKApprox& approx);     // full spectrum with energy fractions
std::string u_profiles_csv(const RankKApprox& approx);  // period rows
std::string v_coeffs_csv(const RankKApprox& approx);    // one row per cycle
std::string reconstruction_csv(const CycleFrame& frame, const RankKApprox& approx);

nlohmann::json outliers_json(const OutlierReport& report, const RankKApprox& approx);
std::string events_csv(const OutlierReport& report);
std::string point_flags_csv(const OutlierReport& report);
std::string cycle_flags_csv(const OutlierReport& report);

nlohmann::json experiment_json(const ExperimentResult& result);
// index, then <label>_mean, <label>_p05, <label>_p95 per condition; shorter
// conditions leave their cells empty.
std::string experiment_csv(const ExperimentResult& result);

std::string dump_json(const nlohmann::json& j);

}  // namespace cyclesvd
