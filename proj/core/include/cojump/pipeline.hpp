#pragma once

// One day end to end: spot path, detection, grouping and the co-jump test.

#include <optional>
#include <utility>
#include <vector>

#include "cojump/cojump_test.hpp"
#include "cojump/jumps.hpp"
#include "cojump/obs_model.hpp"
#include "cojump/simulator.hpp"
#include "cojump/spotvol.hpp"

namespace cojump {

struct AnalysisConfig {
  std::size_t h_inv = 39;
  SpectralConfig spectral;
  SpotConfig spot;
  JumpConfig jumps;
  TestConfig test;
  /// Restricts the test to jumps inside [from, to] (tick time).
  std::optional<std::pair<double, double>> time_range;

  void validate(std::size_t n) const;
};

/// Estimator settings of a scenario, other options left at their defaults.
AnalysisConfig analysis_config(const EstimatorSettings& est);

struct Analysis {
  SpotVolPath spot;
  std::vector<JumpEvent> detections;  ///< ungrouped, one per bin
  std::vector<JumpEvent> events;      ///< grouped and range-restricted
  CoJumpReport report;
  /// sum_k h zeta_k over non-truncated bins.
  double integrated_variance = 0.0;
};

Analysis analyze(const NoisyPath& path, const AnalysisConfig& cfg);

}  // namespace cojump
