#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cyclesvd/error.hpp"
#include "cyclesvd/experiments.hpp"
#include "cyclesvd/frame.hpp"
#include "cyclesvd/lowrank.hpp"
#include "cyclesvd/outliers.hpp"
#include "cyclesvd/report.hpp"
#include "cyclesvd/series.hpp"
#include "cyclesvd/spectrum.hpp"
#include "cyclesvd/svd.hpp"
#include "cyclesvd/synth.hpp"

namespace fs = std::filesystem;

namespace cyclesvd::cli {

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j = {{"command", command},
                      {"input", input},
                      {"column", column},
                      {"time_column", nullptr},
                      {"missing", missing},
                      {"pmin", pmin},
                      {"pmax", pmax},
                      {"period", period},
                      {"rank", rank},
                      {"energy", energy},
                      {"z_threshold", z_threshold},
                      {"s_threshold", s_threshold},
                      {"remove_mean", remove_mean},
                      {"seed", seed},
                      {"null_trials", null_trials},
                      {"experiment", experiment},
                      {"trials", trials},
                      {"max_sweeps", max_sweeps}};
  if (time_column) j["time_column"] = *time_column;
  return j;
}

RunConfig RunConfig::from_json(const nlohmann::json& j) {
  try {
    RunConfig c;
    c.command = j.at("command").get<std::string>();
    c.input = j.value("input", c.input);
    c.column = j.value("column", c.column);
    if (j.contains("time_column") && !j["time_column"].is_null()) c.time_column = j["time_column"].get<std::string>();
    c.missing = j.value("missing", c.missing);
    c.pmin = j.value("pmin", c.pmin);
    c.pmax = j.value("pmax", c.pmax);
    c.period = j.value("period", c.period);
    c.rank = j.value("rank", c.rank);
    c.energy = j.value("energy", c.energy);
    c.z_threshold = j.value("z_threshold", c.z_threshold);
    c.s_threshold = j.value("s_threshold", c.s_threshold);
    c.remove_mean = j.value("remove_mean", c.remove_mean);
    c.seed = j.value("seed", c.seed);
    c.null_trials = j.value("null_trials", c.null_trials);
    c.experiment = j.value("experiment", c.experiment);
    c.trials = j.value("trials", c.trials);
    c.max_sweeps = j.value("max_sweeps", c.max_sweeps);
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
}

std::string fnv1a_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open '" + path + "'");
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[1 << 14];
  while (in.read(buf, sizeof buf) || in.gcount() > 0) {
    for (std::streamsize i = 0; i < in.gcount(); ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
  }
  char hex[17];
  std::snprintf(hex, sizeof hex, "%016llx", static_cast<unsigned long long>(h));
  return hex;
}

namespace {

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw DataError("cannot write '" + path.string() + "'");
}

Series load_input(const RunConfig& c) {
  if (c.input.empty()) throw InvalidArgument(c.command + " requires --input");
  CsvOptions options;
  options.value_column = parse_column_selector(c.column);
  if (c.time_column) options.time_column = parse_column_selector(*c.time_column);
  options.missing = parse_missing_policy(c.missing);
  return load_csv(c.input, options).series;
}

void print_mean(const CycleFrame& frame, bool removed, std::ostream& out) {
  if (removed) out << "removed mean: " << format_double(frame.mean_removed) << '\n';
  else out << "mean not removed\n";
}

RankKApprox fit(const CycleFrame& frame, const RunConfig& c) {
  SvdOptions options;
  options.max_sweeps = c.max_sweeps;
  const SvdResult f = svd(frame.matrix, options);
  std::size_t k = c.rank;
  if (k == 0) {
    if (!(c.energy > 0.0 && c.energy <= 1.0)) throw InvalidArgument("--energy must be in (0, 1]");
    k = std::max<std::size_t>(1, significant_rank(f.s, c.energy));
  }
  return approximate(frame, f, k);
}

void cmd_scan(const RunConfig& c, const fs::path& dir, std::ostream& out) {
  const Series s = load_input(c);
  if (c.pmin == 0 || c.pmax == 0) throw InvalidArgument("scan requires --pmin and --pmax");
  ScanOptions options;
  options.null_trials = c.null_trials;
  options.seed = c.seed;
  const PeriodScan scan = scan_periods(s, c.pmin, c.pmax, c.remove_mean, options);
  write_file(dir / "scan.csv", scan_csv(scan));
  write_file(dir / "scan.json", dump_json(scan_json(scan)));
  if (c.remove_mean) out << "removed mean: " << format_double(scan.series_mean) << '\n';
  else out << "mean not removed\n";
  for (const Peak& p : scan.peaks) {
    out << "peak p=" << p.period << " svr=" << format_double(p.svr);
    if (p.harmonic_of) out << " harmonic of " << *p.harmonic_of;
    if (p.subharmonic_of) out << " divisor of " << *p.subharmonic_of;
    out << '\n';
  }
  if (scan.fundamental) out << "fundamental period: " << *scan.fundamental << '\n';
  else out << "no significant period\n";
}

CycleFrame frame_for(const RunConfig& c) {
  const Series s = load_input(c);
  if (c.period == 0) throw InvalidArgument(c.command + " requires --period");
  return reshape(s, c.period, c.remove_mean);
}

void write_decomposition(const CycleFrame& frame, const RankKApprox& a, const fs::path& dir) {
  write_file(dir / "sigma.csv", sigma_csv(a));
  write_file(dir / "u_profiles.csv", u_profiles_csv(a));
  write_file(dir / "v_coeffs.csv", v_coeffs_csv(a));
  write_file(dir / "reconstruction.csv", reconstruction_csv(frame, a));
  write_file(dir / "decomposition.json", dump_json(decomposition_json(frame, a)));
}

void cmd_decompose(const RunConfig& c, const fs::path& dir, std::ostream& out) {
  const CycleFrame frame = frame_for(c);
  const RankKApprox a = fit(frame, c);
  write_decomposition(frame, a, dir);
  print_mean(frame, c.remove_mean, out);
  out << "period " << frame.period << ", " << frame.cycles << " cycles, rank " << a.k
      << ", frobenius residual " << format_double(a.frob_residual) << '\n';
}

void cmd_detect(const RunConfig& c, const fs::path& dir, std::ostream& out) {
  const CycleFrame frame = frame_for(c);
  const RankKApprox a = fit(frame, c);
  const OutlierReport r = detect(frame, a, c.z_threshold, c.s_threshold);
  write_decomposition(frame, a, dir);
  write_file(dir / "outliers.json", dump_json(outliers_json(r, a)));
  write_file(dir / "events.csv", events_csv(r));
  write_file(dir / "point_flags.csv", point_flags_csv(r));
  write_file(dir / "cycle_flags.csv", cycle_flags_csv(r));
  print_mean(frame, c.remove_mean, out);
  out << "rank " << a.k << ", " << r.events.size() << " events\n" << explain_text(r, a);
}

void cmd_simulate(const RunConfig& c, const fs::path& dir, std::ostream& out) {
  const std::string& e = c.experiment;
  if (e == "block-signal" || e == "cooler-analog") {
    Rng rng(c.seed);
    nlohmann::json labels;
    Series s = Series({0.0, 0.0});
    if (e == "block-signal") {
      BlockSignalParams p;
      s = gen_block_signal(rng, p);
      labels = {{"period", p.period}, {"spike_cycles", p.spike_cycles}, {"noise_sigma", p.noise_sigma},
                {"spike_height", p.spike_height}, {"seed", c.seed}};
    } else {
      CoolerParams p;
      const CoolerAnalog g = gen_cooler_analog(rng, p);
      s = g.series;
      labels = {{"period", kHoursPerDay}, {"days", p.days}, {"surge_days", g.surge_days},
                {"shape_anomaly_days", g.shape_anomaly_days}, {"seed", c.seed}};
    }
    write_file(dir / "series.csv", series_csv(s));
    write_file(dir / "labels.json", dump_json(labels));
    out << "wrote " << s.size() << " samples\n";
    return;
  }
  ExperimentResult r;
  if (e == "universality") {
    UniversalityOptions o;
    o.seed = c.seed;
    if (c.trials) o.trials = c.trials;
    r = experiment_universality(o);
  } else if (e == "mean-shift") {
    MeanShiftOptions o;
    o.seed = c.seed;
    if (c.trials) o.trials = c.trials;
    r = experiment_mean_shift(o);
  } else if (e == "signal-strength") {
    SignalStrengthOptions o;
    o.seed = c.seed;
    if (c.trials) o.trials = c.trials;
    r = experiment_signal_strength(o);
  } else {
    throw InvalidArgument("unknown experiment '" + e +
                          "' (universality, mean-shift, signal-strength, block-signal, cooler-analog)");
  }
  write_file(dir / "experiment.json", dump_json(experiment_json(r)));
  write_file(dir / "spectra.csv", experiment_csv(r));
  for (const Verdict& v : r.verdicts) {
    out << (v.withheld ? "WITHHELD " : v.passed ? "PASS " : "FAIL ") << v.name << ": " << format_double(v.measured)
        << ' ' << v.relation << ' ';
    if (v.expected_low) out << '[' << format_double(*v.expected_low) << ", " << format_double(v.expected) << "]\n";
    else out << format_double(v.expected) << '\n';
  }
}

std::uint64_t default_seed() {
  const char* env = std::getenv("CYCLESVD_SEED");
  if (env == nullptr || *env == '\0') return kDefaultSeed;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (errno != 0 || *end != '\0' || *env == '-') {
    throw InvalidArgument(std::string("CYCLESVD_SEED is not an unsigned integer: '") + env + "'");
  }
  return v;
}

}  // namespace

void execute(const RunConfig& c, const std::string& out_dir, std::ostream& out) {
  // Validate before touching the output directory.
  if (c.command != "scan" && c.command != "decompose" && c.command != "detect" && c.command != "simulate") {
    throw InvalidArgument("unknown command '" + c.command + "'");
  }
  if (c.command == "simulate" && c.experiment.empty()) throw InvalidArgument("simulate requires --experiment");
  const fs::path dir(out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw DataError("cannot create output directory '" + out_dir + "'");

  nlohmann::json manifest = {{"tool", "cyclesvd"}, {"version", CYCLESVD_VERSION}, {"config", c.to_json()},
                             {"input_fnv1a64", nullptr}};
  if (!c.input.empty() && c.command != "simulate") manifest["input_fnv1a64"] = fnv1a_file(c.input);

  if (c.command == "scan") cmd_scan(c, dir, out);
  else if (c.command == "decompose") cmd_decompose(c, dir, out);
  else if (c.command == "detect") cmd_detect(c, dir, out);
  else cmd_simulate(c, dir, out);

  write_file(dir / "manifest.json", dump_json(manifest));
}

namespace {

void rerun(const std::string& manifest_path, std::string out_dir, std::ostream& out) {
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw DataError("cannot open manifest '" + manifest_path + "'");
  nlohmann::json m;
  try {
    in >> m;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("malformed manifest: ") + e.what());
  }
  if (!m.is_object() || m.value("tool", "") != "cyclesvd" || !m.contains("config")) {
    throw DataError("'" + manifest_path + "' is not a cyclesvd manifest");
  }
  const RunConfig c = RunConfig::from_json(m["config"]);
  if (m.contains("input_fnv1a64") && m["input_fnv1a64"].is_string()) {
    if (fnv1a_file(c.input) != m["input_fnv1a64"].get<std::string>()) {
      throw DataError("input '" + c.input + "' changed since the manifest was written");
    }
  }
  if (out_dir.empty()) out_dir = fs::path(manifest_path).parent_path().string();
  if (out_dir.empty()) out_dir = ".";
  execute(c, out_dir, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cycle-frame SVD analysis of periodic time series", "cyclesvd"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CYCLESVD_VERSION);

  RunConfig c;
  std::string out_dir = "cyclesvd-out";
  std::optional<std::uint64_t> seed;
  std::string manifest;

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("--input", c.input, "CSV file")->required();
    sub->add_option("--column", c.column, "value column: 0-based index or header name")->capture_default_str();
    sub->add_option("--time-column", c.time_column, "timestamp column: index or header name");
    sub->add_option("--missing", c.missing, "error | interpolate | drop-edges")->capture_default_str();
    sub->add_option("--remove-mean", c.remove_mean, "subtract the series mean before framing")
        ->capture_default_str();
  };
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
    sub->add_option("--seed", seed, "RNG seed (default 42, or $CYCLESVD_SEED)");
  };
  auto add_rank = [&](CLI::App* sub) {
    sub->add_option("--period", c.period, "cycle length in samples")->required();
    sub->add_option("--rank", c.rank, "retained components; 0 = smallest rank reaching --energy")
        ->capture_default_str();
    sub->add_option("--energy", c.energy, "energy fraction for automatic rank")->capture_default_str();
    sub->add_option("--max-sweeps", c.max_sweeps, "Jacobi sweep cap")->capture_default_str();
  };

  CLI::App* scan = app.add_subcommand("scan", "singular value ratio over a range of periods");
  add_input(scan);
  add_common(scan);
  scan->add_option("--pmin", c.pmin, "smallest candidate period")->required();
  scan->add_option("--pmax", c.pmax, "largest candidate period")->required();
  scan->add_option("--null-trials", c.null_trials, "shuffles for the null band")->capture_default_str();

  CLI::App* decompose = app.add_subcommand("decompose", "rank-k decomposition at one period");
  add_input(decompose);
  add_common(decompose);
  add_rank(decompose);

  CLI::App* det = app.add_subcommand("detect", "outlier cycles and points at one period");
  add_input(det);
  add_common(det);
  add_rank(det);
  det->add_option("--z-threshold", c.z_threshold, "robust |z| for residual points")->capture_default_str();
  det->add_option("--s-threshold", c.s_threshold, "robust |z| for V coefficients")->capture_default_str();

  CLI::App* sim = app.add_subcommand("simulate", "Monte-Carlo experiments and synthetic series");
  add_common(sim);
  sim->add_option("--experiment", c.experiment,
                  "universality | mean-shift | signal-strength | block-signal | cooler-analog")
      ->required();
  sim->add_option("--trials", c.trials, "trials (0 = experiment default)")->capture_default_str();

  CLI::App* re = app.add_subcommand("rerun", "repeat the run recorded in a manifest");
  re->add_option("--manifest", manifest, "manifest.json of an earlier run")->required();
  std::string rerun_out;
  re->add_option("--out", rerun_out, "output directory (default: the manifest's directory)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << CYCLESVD_VERSION << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "cyclesvd: usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (re->parsed()) {
      rerun(manifest, rerun_out, out);
      return kOk;
    }
    c.command = app.get_subcommands().front()->get_name();
    c.seed = seed ? *seed : default_seed();
    execute(c, out_dir, out);
    return kOk;
  } catch (const InvalidArgument& e) {
    err << "cyclesvd: usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DataError& e) {
    err << "cyclesvd: data error: " << e.what() << '\n';
    return kData;
  } catch (const ConvergenceError& e) {
    err << "cyclesvd: numerical failure: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    err << "cyclesvd: data error: " << e.what() << '\n';
    return kData;
  }
}

}  // namespace cyclesvd::cli
