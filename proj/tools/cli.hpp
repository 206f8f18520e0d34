#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace cyclesvd::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNumerical = 3 };

// Everything that determines a run's artifacts. The output directory is not
// part of it, so a manifest can be replayed into another directory.
struct RunConfig {
  std::string command;  // scan | decompose | detect | simulate
  std::string input;
  std::string column = "0";
  std::optional<std::string> time_column;
  std::string missing = "error";
  std::size_t pmin = 0;
  std::size_t pmax = 0;
  std::size_t period = 0;
  std::size_t rank = 0;  // 0 = automatic from `energy`
  double energy = 0.99;
  double z_threshold = 3.5;
  double s_threshold = 3.5;
  bool remove_mean = true;
  std::uint64_t seed = 42;
  std::size_t null_trials = 50;
  std::string experiment;
  std::size_t trials = 0;  // 0 = experiment default
  int max_sweeps = 60;     // Jacobi sweep cap for decompose/detect

  nlohmann::json to_json() const;
  static RunConfig from_json(const nlohmann::json& j);
};

// 64-bit FNV-1a of a file's bytes, as 16 lowercase hex digits.
std::string fnv1a_file(const std::string& path);

// Writes the artifacts of `config` plus manifest.json into `out_dir`.
void execute(const RunConfig& config, const std::string& out_dir, std::ostream& out);

// Parses argv-style arguments (without the program name) and runs them.
// Diagnostics go to `err` as a single line.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cyclesvd::cli
