#pragma once

// File formats: tick CSV in and out, spot-path CSV, JSON reports and
// ground-truth sidecars. Errors carry the offending line number.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cojump/montecarlo.hpp"
#include "cojump/obs_model.hpp"
#include "cojump/pipeline.hpp"
#include "cojump/simulator.hpp"

namespace cojump {

/// Malformed or unusable input data.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;

/// Seconds since midnight from "34200.5", "09:30:00.5",
/// "2024-01-02T09:30:00.5Z" or "2024-01-02 09:30:00+01:00" (offset ignored).
double parse_timestamp(std::string_view text);

/// CSV with header `timestamp,price`. Throws DataError with the line number.
TickSeries read_ticks_csv(std::istream& in, const std::string& source = "<stream>");
TickSeries read_ticks_csv(const std::filesystem::path& path);

/// Writes exp(Y_i) at timestamps 34200 + 23400 i/n (a 09:30-16:00 session).
void write_ticks_csv(std::ostream& out, const NoisyPath& path);
void write_ticks_csv(const std::filesystem::path& path, const NoisyPath& path_data);

/// Columns bin,time,c_right,c_left,combined,ci_low,ci_high,truncated.
void write_spot_csv(std::ostream& out, const SpotVolPath& spot, double level = 0.95);

/// Two-column CSV for plot data.
void write_pairs_csv(std::ostream& out, std::string_view x_name, std::string_view y_name,
                     const std::vector<std::pair<double, double>>& rows);

/// Per-run records of a Monte Carlo report.
void write_mc_records_csv(std::ostream& out, const MCReport& report);

void write_size_power_csv(std::ostream& out, const std::vector<SizePowerRow>& rows);

std::string config_json(const AnalysisConfig& cfg);
std::string scenario_json(const ScenarioConfig& cfg);

/// Estimation summary: n, eta_hat, integrated variance and the configuration.
std::string estimate_json(const Analysis& analysis, const AnalysisConfig& cfg);

std::string report_json(const CoJumpReport& report, const AnalysisConfig& cfg);

/// The runtime is only written when asked for, so that reports are
/// byte-identical across reruns.
std::string mc_report_json(const MCReport& report, bool include_runtime = false);

/// Price and volatility jump inventories plus the noise variance.
std::string ground_truth_json(const SimulatedPath& path, const ScenarioConfig& cfg);

/// Human-readable test summary.
std::string report_summary(const CoJumpReport& report);

void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace cojump
