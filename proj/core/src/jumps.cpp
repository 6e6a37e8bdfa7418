#include "cojump/jumps.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cojump {

std::vector<JumpEvent> detect(std::span<const BinStage> bins, const BinGrid& grid,
                              const SpotConfig& cfg, const JumpConfig& jcfg) {
  if (bins.size() != grid.bins()) {
    throw std::invalid_argument("jump detection: bin statistics do not match the grid");
  }
  const double a2 = cfg.a_min_jump * cfg.a_min_jump;
  std::size_t lo = 0;
  std::size_t hi = bins.size();
  if (jcfg.exclude_edges) {
    lo = std::min(cfg.r_inv, bins.size());
    hi = bins.size() > cfg.r_inv ? bins.size() - cfg.r_inv : 0;
  }
  std::vector<JumpEvent> out;
  for (std::size_t k = lo; k < hi; ++k) {
    const double value = grid.width(k) * bins[k].zeta;
    const double threshold = std::max(bins[k].threshold, a2);
    if (std::abs(value) > threshold) {
      out.push_back({k, k,
                     static_cast<double>(grid.edge(k)) / static_cast<double>(grid.n()),
                     value, threshold, false});
    }
  }
  return out;
}

std::vector<JumpEvent> group(std::span<const JumpEvent> events, const SpotConfig& cfg,
                             const JumpConfig& jcfg) {
  const std::size_t gap = jcfg.gap(cfg);
  std::vector<JumpEvent> out;
  for (const JumpEvent& e : events) {
    if (!out.empty() && e.first_bin <= out.back().last_bin) {
      throw std::invalid_argument("jump grouping: events must be sorted and disjoint");
    }
    if (!out.empty() && e.first_bin - out.back().last_bin < gap) {
      JumpEvent& g = out.back();
      g.last_bin = e.last_bin;
      g.grouped = true;
      if (std::abs(e.zeta_value) > std::abs(g.zeta_value)) {
        g.zeta_value = e.zeta_value;
        g.threshold_used = e.threshold_used;
      }
      continue;
    }
    out.push_back(e);
  }
  return out;
}

std::vector<JumpEvent> restrict_to_interval(std::span<const JumpEvent> events, double from,
                                            double to) {
  std::vector<JumpEvent> out;
  std::copy_if(events.begin(), events.end(), std::back_inserter(out),
               [&](const JumpEvent& e) { return e.time >= from && e.time <= to; });
  return out;
}

}  // namespace cojump
