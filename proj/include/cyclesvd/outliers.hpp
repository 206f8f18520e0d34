#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "cyclesvd/frame.hpp"
#include "cyclesvd/lowrank.hpp"

namespace cyclesvd {

inline constexpr double kDefaultZThreshold = 3.5;
inline constexpr double kDefaultSaliencyThreshold = 3.5;
inline constexpr double kMadToSigma = 1.4826;

// Center and spread used for robust z-scores.
struct RobustScale {
  enum class Method { kMad, kStdDev, kDegenerate };
  double center = 0.0;  // median
  double scale = 0.0;   // MAD * 1.4826, or the standard deviation as fallback
  Method method = Method::kDegenerate;
};

// Median / scaled MAD; falls back to the standard deviation when the MAD is
// zero. A scale at or below `zero_floor` counts as zero.
RobustScale robust_scale(std::span<const double> values, double zero_floor = 0.0);

enum class EventClass {
  kProfileCaptured,  // unusual but modelled by a secondary profile (V saliency only)
  kResidualOutlier,  // not captured by the retained profiles (residual only)
  kBoth,
};
std::string to_string(EventClass c);

struct PointFlag {
  std::size_t index = 0;  // position on the time axis of the frame
  double value = 0.0;     // original observation
  double residual = 0.0;
  double zscore = 0.0;
};

struct CycleFlag {
  std::size_t cycle = 0;
  std::size_t component = 0;  // 1-based; always >= 2
  double v_coefficient = 0.0;
  double saliency = 0.0;      // |robust z| down the V column
};

struct OutlierEvent {
  std::size_t cycle = 0;
  EventClass kind = EventClass::kResidualOutlier;
  std::vector<std::size_t> points;  // indices into OutlierReport::point_flags
  std::vector<std::size_t> flags;   // indices into OutlierReport::cycle_flags
};

struct OutlierReport {
  std::vector<PointFlag> point_flags;
  std::vector<CycleFlag> cycle_flags;
  std::vector<OutlierEvent> events;  // one per affected cycle, ascending
  double z_threshold = kDefaultZThreshold;
  double s_threshold = kDefaultSaliencyThreshold;
  std::size_t period = 0;
  RobustScale residual_scale;

  bool empty() const noexcept { return point_flags.empty() && cycle_flags.empty(); }
};

// Flags residual points with |z| >= z_threshold and, for components 2..k,
// cycles whose V coefficient has robust |z| >= s_threshold; merges both by
// cycle. Component 1 mirrors the overall activity level and is not scanned.
// Residuals that are numerically zero yield an empty report.
OutlierReport detect(const CycleFrame& frame, const RankKApprox& approx,
                     double z_threshold = kDefaultZThreshold, double s_threshold = kDefaultSaliencyThreshold);

// Per flagged cycle: sigma_j * v_{cycle,j} for every retained component and
// the residual energy of that cycle.
struct CycleExplanation {
  std::size_t cycle = 0;
  EventClass kind = EventClass::kResidualOutlier;
  std::vector<double> contributions;  // index j-1 for component j
  double residual_energy = 0.0;
  double median_residual_energy = 0.0;  // over all cycles, for context
  std::size_t dominant_component = 0;   // flagged component with the largest saliency, 0 if none
  double max_abs_z = 0.0;
};

std::vector<CycleExplanation> explain(const OutlierReport& report, const RankKApprox& approx);
std::string explain_text(const OutlierReport& report, const RankKApprox& approx);

}  // namespace cyclesvd
