#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace cyclesvd {

// A 1-D time series on a uniform sample index. Timestamps, when present, are
// carried along (seconds, or the raw numeric value of the time column) but
// never used for reshaping.
class Series {
 public:
  // Requires at least 2 finite values; timestamps, if given, must match in
  // length and be strictly increasing.
  explicit Series(std::vector<double> values, std::string name = "series",
                  std::optional<std::vector<double>> timestamps = std::nullopt);

  std::span<const double> values() const noexcept { return values_; }
  const std::optional<std::vector<double>>& timestamps() const noexcept { return timestamps_; }
  const std::string& name() const noexcept { return name_; }
  std::size_t size() const noexcept { return values_.size(); }
  double operator[](std::size_t i) const noexcept { return values_[i]; }

 private:
  std::vector<double> values_;
  std::optional<std::vector<double>> timestamps_;
  std::string name_;
};

Series scale(const Series& s, double alpha);

enum class MissingPolicy { kError, kInterpolate, kDropEdges };

// Maximum share of interior gaps that kInterpolate may fill.
inline constexpr double kMaxInterpolatedFraction = 0.05;

// 0-based column index or header name.
using ColumnSelector = std::variant<std::size_t, std::string>;

struct CsvOptions {
  ColumnSelector value_column = std::size_t{0};
  std::optional<ColumnSelector> time_column;
  MissingPolicy missing = MissingPolicy::kError;
};

struct CsvLoadResult {
  Series series;
  bool had_header = false;
  std::size_t interpolated = 0;    // interior gaps filled
  std::size_t dropped_leading = 0;
  std::size_t dropped_trailing = 0;
};

// Comma-separated input. A header is detected when the first row's value
// field is neither numeric nor a missing marker (empty, NaN, NA).
CsvLoadResult read_csv(std::istream& in, const CsvOptions& options, const std::string& name = "series");
CsvLoadResult load_csv(const std::filesystem::path& path, const CsvOptions& options);

MissingPolicy parse_missing_policy(const std::string& text);
std::string to_string(MissingPolicy policy);
ColumnSelector parse_column_selector(const std::string& text);

// Parses a plain number or an ISO-8601 "YYYY-MM-DD[ T]HH:MM[:SS][Z]" instant
// (returned as seconds since 1970-01-01 UTC).
std::optional<double> parse_instant(const std::string& text);

}  // namespace cyclesvd
