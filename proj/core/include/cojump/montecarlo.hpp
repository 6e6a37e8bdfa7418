#pragma once

// Monte Carlo harness: simulate, estimate, detect and test in independent
// runs, then aggregate size/power and distributional summaries.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cojump/pipeline.hpp"
#include "cojump/simulator.hpp"

namespace cojump {

/// Which runs enter the aggregate statistics.
enum class RunFilter {
  all,                  ///< every run with a decided test
  realized_one,         ///< exactly one realized price jump
  realized_detected_one ///< exactly one realized and one detected jump
};

std::string_view to_string(RunFilter f);
RunFilter parse_run_filter(std::string_view s);

struct MCOptions {
  std::size_t runs = 100;
  std::uint64_t base_seed = 1;
  std::size_t threads = 1;
  RunFilter filter = RunFilter::realized_detected_one;
  /// Nominal levels of the size/power curve.
  std::vector<double> levels{0.01, 0.025, 0.05, 0.1, 0.15, 0.2};
};

struct MCRecord {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  std::size_t realized = 0;         ///< price jumps in the path
  std::size_t detected = 0;         ///< grouped detection events
  std::size_t matched = 0;          ///< realized jumps inside a detected event
  std::size_t false_detections = 0; ///< events without a realized jump
  bool included = false;            ///< passes the filter and the test was decided
  bool decided = false;
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  /// Reference CDF at the statistic (chi-square(dof) or standard normal);
  /// uniform under the null when the asymptotic law holds.
  double pit = 0.0;
  bool reject_05 = false;
  bool reject_10 = false;
};

struct MCAggregate {
  std::size_t included = 0;
  double rejection_05 = 0.0;
  double rejection_10 = 0.0;
  /// Kolmogorov-Smirnov distance of the statistic to its reference law.
  double ks_distance = 0.0;
  std::vector<std::pair<double, double>> quantiles;      ///< (probability, empirical)
  std::vector<std::pair<double, double>> rejection_curve; ///< (level, rate)
  double detection_rate = 0.0;  ///< matched / realized over all runs
  double mean_false_detections = 0.0;
  std::size_t total_realized = 0;
};

struct MCReport {
  std::string scenario;
  ScenarioConfig sim;
  AnalysisConfig analysis;
  MCOptions options;
  std::vector<MCRecord> records;
  MCAggregate aggregate;
  double runtime_seconds = 0.0;
};

/// One run: the path is simulated with seed derive_seed(base_seed, run).
MCRecord run_once(const ScenarioConfig& sim, const AnalysisConfig& analysis,
                  const MCOptions& opts, std::size_t run);

/// Runs are distributed over opts.threads workers; the report does not depend
/// on the thread count.
MCReport run_scenario(const std::string& id, const ScenarioConfig& sim,
                      const AnalysisConfig& analysis, const MCOptions& opts);
MCReport run_scenario(const Scenario& scenario, const TestConfig& test, const MCOptions& opts);

MCAggregate aggregate(std::span<const MCRecord> records, TestVariant variant,
                      std::span<const double> levels);

/// sup |F_n(u) - u| for values in [0,1].
double ks_uniform(std::vector<double> u);

/// Empirical quantile by linear interpolation (type 7).
double empirical_quantile(std::vector<double> values, double p);

struct SizePowerRow {
  std::string scenario;
  double level = 0.0;
  double rate = 0.0;
  std::size_t included = 0;
};

/// Nominal level vs empirical rejection frequency, per report.
std::vector<SizePowerRow> size_power_table(std::span<const MCReport> reports,
                                           std::span<const double> levels);

/// Equal-width histogram on [lo, hi] as (bin centre, count).
std::vector<std::pair<double, double>> histogram(std::span<const double> values,
                                                 std::size_t bins, double lo, double hi);

/// Silverman's rule 0.9 min(sd, IQR/1.34) n^{-1/5}.
double silverman_bandwidth(std::span<const double> values);

/// Gaussian kernel density at each evaluation point.
std::vector<std::pair<double, double>> gaussian_kde(std::span<const double> values,
                                                    std::span<const double> points,
                                                    double bandwidth);

/// Statistics of the included records.
std::vector<double> included_statistics(const MCReport& report);

}  // namespace cojump
