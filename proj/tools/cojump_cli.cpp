// cojump: spot volatility, jump detection and co-jump tests on tick data.
//
//   cojump estimate ticks.csv --out dir
//   cojump test ticks.csv --variant chi2 --out dir
//   cojump simulate --scenario II --seed 7 --out dir
//   cojump mc --scenario II --runs 2000 --threads 4 --out dir
//
// Exit codes: 0 success, 1 usage or configuration error, 2 data error.

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cojump/io.hpp"
#include "cojump/montecarlo.hpp"
#include "cojump/pipeline.hpp"
#include "cojump/simulator.hpp"

namespace fs = std::filesystem;
using namespace cojump;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

struct Options {
  std::size_t h_inv = 39;
  std::size_t j_max = 30;
  std::size_t j_pilot = 15;
  std::size_t r_inv = 6;
  std::size_t r_pilot = 6;
  std::string threshold = "adaptive";
  std::optional<double> trunc_const;
  double min_jump = 0.0;
  double level = 0.05;
  std::string variant = "chi2";
  std::string normalization = "fisher";
  bool exclude_edges = false;
  std::optional<std::size_t> group_gap;
  std::vector<double> time_range;
  std::string scenario = "II";
  std::size_t runs = 100;
  std::uint64_t seed = 1;
  std::size_t threads = 1;
  std::string filter = "realized_detected_one";
  std::optional<std::size_t> n_override;
  bool runtime = false;
  std::string input;
  std::string out = ".";
};

struct Given {
  CLI::Option* h_inv;
  CLI::Option* j_max;
  CLI::Option* j_pilot;
  CLI::Option* r_inv;
  CLI::Option* r_pilot;
  CLI::Option* exclude_edges;
};

// Tuning flags override the base configuration only when they were given.
AnalysisConfig resolve(const Options& o, const Given& g, AnalysisConfig cfg, bool use_all) {
  auto take = [use_all](CLI::Option* opt) { return use_all || opt->count() > 0; };
  if (take(g.h_inv)) cfg.h_inv = o.h_inv;
  if (take(g.j_max)) cfg.spectral.j_max = o.j_max;
  if (take(g.j_pilot)) cfg.spectral.j_max_pilot = o.j_pilot;
  if (take(g.r_inv)) cfg.spot.r_inv = o.r_inv;
  if (take(g.r_pilot)) cfg.spot.r_inv_pilot = o.r_pilot;
  cfg.spot.threshold = o.threshold == "global" ? ThresholdMode::global : ThresholdMode::adaptive;
  cfg.spot.trunc_const = o.trunc_const;
  cfg.spot.a_min_jump = o.min_jump;
  // Edges are excluded for market data unless asked otherwise, kept for simulations.
  cfg.jumps.exclude_edges = g.exclude_edges->count() > 0 ? o.exclude_edges : use_all;
  cfg.jumps.group_gap = o.group_gap;
  cfg.test.level = o.level;
  cfg.test.variant = parse_variant(o.variant);
  cfg.test.normalization = parse_normalization(o.normalization);
  if (o.time_range.size() == 2) cfg.time_range = std::make_pair(o.time_range[0], o.time_range[1]);
  return cfg;
}

void check_bin_size(const AnalysisConfig& cfg, std::size_t n) {
  if (cfg.h_inv == 0 || cfg.h_inv > n) throw std::invalid_argument("--bins must lie in [1, n]");
  const BinGrid grid(n, cfg.h_inv);
  if (grid.min_size() < 2 * cfg.spectral.j_max) {
    throw std::invalid_argument("too few observations per bin: " +
                                std::to_string(grid.min_size()) + " < 2 * J = " +
                                std::to_string(2 * cfg.spectral.j_max) +
                                "; use fewer bins or frequencies");
  }
}

NoisyPath load(const std::string& input) { return from_ticks(read_ticks_csv(fs::path(input))); }

void ensure_dir(const fs::path& dir) {
  if (!dir.empty()) fs::create_directories(dir);
}

void write_csv(const fs::path& path, const std::function<void(std::ostream&)>& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  body(out);
}

int cmd_estimate(const Options& o, const Given& g) {
  const NoisyPath path = load(o.input);
  const AnalysisConfig cfg = resolve(o, g, AnalysisConfig{}, true);
  check_bin_size(cfg, path.n());
  const Analysis a = analyze(path, cfg);
  const fs::path dir(o.out);
  ensure_dir(dir);
  write_csv(dir / "spot.csv", [&](std::ostream& out) { write_spot_csv(out, a.spot); });
  write_text(dir / "estimate.json", estimate_json(a, cfg));
  std::cout << "n = " << path.n() << ", eta_hat = " << a.spot.eta_hat
            << ", integrated variance = " << a.integrated_variance << ", jumps = "
            << a.events.size() << "\n";
  return 0;
}

int cmd_test(const Options& o, const Given& g) {
  const NoisyPath path = load(o.input);
  const AnalysisConfig cfg = resolve(o, g, AnalysisConfig{}, true);
  check_bin_size(cfg, path.n());
  const Analysis a = analyze(path, cfg);
  const fs::path dir(o.out);
  ensure_dir(dir);
  write_text(dir / "report.json", report_json(a.report, cfg));
  const std::string summary = report_summary(a.report);
  write_text(dir / "summary.txt", summary);
  std::cout << summary;
  return 0;
}

ScenarioConfig scenario_from(const Options& o, Scenario& s) {
  s = table1_scenario(o.scenario);
  ScenarioConfig sim = s.sim;
  sim.seed = o.seed;
  if (o.n_override) sim.n = *o.n_override;
  return sim;
}

int cmd_simulate(const Options& o) {
  Scenario s;
  const ScenarioConfig sim = scenario_from(o, s);
  const SimulatedPath path = simulate(sim);
  const fs::path dir(o.out);
  ensure_dir(dir);
  write_ticks_csv(dir / "ticks.csv", path.y);
  write_text(dir / "truth.json", ground_truth_json(path, sim));
  std::cout << "scenario " << s.id << ": n = " << sim.n << ", price jumps = "
            << path.price_jumps.size() << ", volatility jumps = " << path.vol_jumps.size()
            << "\n";
  return 0;
}

int cmd_mc(const Options& o, const Given& g) {
  Scenario s;
  const ScenarioConfig sim = scenario_from(o, s);
  const AnalysisConfig cfg = resolve(o, g, analysis_config(s.est), false);
  MCOptions mc;
  mc.runs = o.runs;
  mc.base_seed = o.seed;
  mc.threads = o.threads;
  mc.filter = parse_run_filter(o.filter);
  const MCReport report = run_scenario(s.id, sim, cfg, mc);

  const fs::path dir(o.out);
  ensure_dir(dir);
  write_text(dir / "mc_report.json", mc_report_json(report, o.runtime));
  write_csv(dir / "records.csv", [&](std::ostream& out) { write_mc_records_csv(out, report); });
  const std::vector<MCReport> one{report};
  const auto table = size_power_table(one, mc.levels);
  write_csv(dir / "size_power.csv", [&](std::ostream& out) { write_size_power_csv(out, table); });

  const std::vector<double> stats = included_statistics(report);
  if (!stats.empty()) {
    double hi = 0.0;
    for (double v : stats) hi = std::max(hi, v);
    const double lo = cfg.test.variant == TestVariant::naive ? -hi : 0.0;
    if (hi > lo) {
      write_csv(dir / "histogram.csv", [&](std::ostream& out) {
        write_pairs_csv(out, "bin_center", "count", histogram(stats, 40, lo, hi));
      });
    }
    if (stats.size() >= 2) {
      const double bw = silverman_bandwidth(stats);
      if (bw > 0.0) {
        std::vector<double> grid(201);
        for (std::size_t i = 0; i < grid.size(); ++i) {
          grid[i] = lo + (hi - lo) * static_cast<double>(i) / 200.0;
        }
        write_csv(dir / "density.csv", [&](std::ostream& out) {
          write_pairs_csv(out, "x", "density", gaussian_kde(stats, grid, bw));
        });
      }
    }
  }

  const MCAggregate& a = report.aggregate;
  std::cout << "scenario " << s.id << ": runs = " << mc.runs << ", included = " << a.included
            << "\n  rejection 5% = " << a.rejection_05 << ", 10% = " << a.rejection_10
            << "\n  KS distance = " << a.ks_distance << "\n  detection rate = "
            << a.detection_rate << ", false detections per path = " << a.mean_false_detections
            << "\n";
  for (const auto& [p, q] : a.quantiles) std::cout << "  q" << p << " = " << q << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spot volatility, jump detection and price-volatility co-jump tests"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "Flat key = value file; command-line flags take precedence");

  Options o;
  Given g{};
  g.h_inv = app.add_option("-b,--bins", o.h_inv, "Number of bins h^-1")->capture_default_str();
  g.j_max = app.add_option("-J,--freqs", o.j_max, "Spectral cut-off J")->capture_default_str();
  g.j_pilot = app.add_option("--pilot-freqs", o.j_pilot, "Pilot cut-off")->capture_default_str();
  g.r_inv = app.add_option("-r,--window", o.r_inv, "Window length in bins")->capture_default_str();
  g.r_pilot = app.add_option("--pilot-window", o.r_pilot, "Pilot window length in bins")
                  ->capture_default_str();
  app.add_option("--threshold", o.threshold, "Truncation mode")
      ->check(CLI::IsMember({"global", "adaptive"}))
      ->capture_default_str();
  app.add_option("--trunc-const", o.trunc_const, "Use u = const * h^tau instead of 2h log(1/h)");
  app.add_option("--min-jump", o.min_jump, "Minimum jump size a")->capture_default_str();
  app.add_option("--level", o.level, "Test level")->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  app.add_option("--variant", o.variant, "Test variant")
      ->check(CLI::IsMember({"chi2", "naive", "multiple"}))
      ->capture_default_str();
  app.add_option("--normalization", o.normalization, "Scaling of the chi-square statistic")
      ->check(CLI::IsMember({"fisher", "log_window"}))
      ->capture_default_str();
  g.exclude_edges =
      app.add_flag("--exclude-edges,!--no-exclude-edges", o.exclude_edges,
                   "Ignore jumps in the first and last window of the day (default: on for "
                   "estimate/test, off for mc)");
  app.add_option("--group-gap", o.group_gap, "Group detections closer than this many bins");
  app.add_option("--time-range", o.time_range, "Test only jumps in [FROM, TO] (tick time)")
      ->expected(2);
  app.add_option("--scenario", o.scenario, "Scenario I..IX")->capture_default_str();
  app.add_option("--runs", o.runs, "Monte Carlo runs")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", o.seed, "Seed")->capture_default_str();
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--filter", o.filter, "Runs entering Monte Carlo aggregates")
      ->check(CLI::IsMember({"all", "realized_one", "realized_detected_one"}))
      ->capture_default_str();
  app.add_option("--n", o.n_override, "Override the scenario grid size");
  app.add_flag("--runtime", o.runtime, "Record the runtime in the Monte Carlo report");
  app.add_option("-o,--out", o.out, "Output directory")->capture_default_str();

  auto* estimate = app.add_subcommand("estimate", "Spot volatility path and IV estimate");
  estimate->add_option("input", o.input, "Tick CSV (timestamp,price)")->required();
  auto* test = app.add_subcommand("test", "Detect jumps and test for co-jumps");
  test->add_option("input", o.input, "Tick CSV (timestamp,price)")->required();
  auto* sim = app.add_subcommand("simulate", "Simulate a scenario path to CSV");
  auto* mc = app.add_subcommand("mc", "Monte Carlo size/power study");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*estimate) return cmd_estimate(o, g);
    if (*test) return cmd_test(o, g);
    if (*sim) return cmd_simulate(o);
    if (*mc) return cmd_mc(o, g);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}
