#include "cojump/pipeline.hpp"

#include <stdexcept>

namespace cojump {

void AnalysisConfig::validate(std::size_t n) const {
  if (h_inv < 1 || h_inv > n) throw std::invalid_argument("h_inv must lie in [1, n]");
  const BinGrid grid(n, h_inv);
  spectral.validate(grid);
  spot.validate(grid);
  test.validate();
  if (time_range && time_range->first > time_range->second) {
    throw std::invalid_argument("time range: from must not exceed to");
  }
}

AnalysisConfig analysis_config(const EstimatorSettings& est) {
  AnalysisConfig cfg;
  cfg.h_inv = est.h_inv;
  cfg.spectral.j_max = est.j_max;
  cfg.spectral.j_max_pilot = est.j_max_pilot;
  cfg.spot.r_inv = est.r_inv;
  cfg.spot.r_inv_pilot = est.r_inv_pilot;
  return cfg;
}

Analysis analyze(const NoisyPath& path, const AnalysisConfig& cfg) {
  cfg.validate(path.n());
  const BinGrid grid(path.n(), cfg.h_inv);
  Analysis out{spot_path(path, grid, cfg.spot, cfg.spectral), {}, {}, {}, 0.0};
  out.detections = detect(out.spot.bins, grid, cfg.spot, cfg.jumps);
  out.events = group(out.detections, cfg.spot, cfg.jumps);
  if (cfg.time_range) {
    out.events = restrict_to_interval(out.events, cfg.time_range->first, cfg.time_range->second);
  }
  out.report = run_test(out.spot, out.events, cfg.test);
  for (std::size_t k = 0; k < grid.bins(); ++k) {
    const BinStage& b = out.spot.bins[k];
    if (!b.truncated) out.integrated_variance += grid.width(k) * b.zeta;
  }
  return out;
}

}  // namespace cojump
