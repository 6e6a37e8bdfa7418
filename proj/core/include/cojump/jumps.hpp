#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cojump/spotvol.hpp"

namespace cojump {

struct JumpConfig {
  /// Ignore bins whose windows would leave the day (the first and last r_inv).
  bool exclude_edges = false;
  /// Detections closer than this many bins are grouped; defaults to 2 r_inv.
  std::optional<std::size_t> group_gap;

  std::size_t gap(const SpotConfig& spot) const {
    return group_gap.value_or(2 * spot.r_inv);
  }
};

/// A detected price jump, resolved to a bin or to a run of grouped bins.
struct JumpEvent {
  std::size_t first_bin = 0;
  std::size_t last_bin = 0;
  double time = 0.0;            ///< tick time of the left edge of first_bin
  double zeta_value = 0.0;      ///< h * zeta of the strongest member bin
  double threshold_used = 0.0;  ///< max(u_k, a^2) for that bin
  bool grouped = false;
};

/// Bins with h |zeta_k| > max(u_k, a^2), in bin order, one event per bin.
std::vector<JumpEvent> detect(std::span<const BinStage> bins, const BinGrid& grid,
                              const SpotConfig& cfg, const JumpConfig& jcfg = {});

/// Merges consecutive events whose bin distance is below the grouping gap.
/// Input must be sorted by bin; the result is sorted and disjoint.
std::vector<JumpEvent> group(std::span<const JumpEvent> events, const SpotConfig& cfg,
                             const JumpConfig& jcfg = {});

/// Keeps events whose time lies in [from, to] (tick time).
std::vector<JumpEvent> restrict_to_interval(std::span<const JumpEvent> events, double from,
                                            double to);

}  // namespace cojump
