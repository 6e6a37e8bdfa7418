#pragma once

// Two-stage spot squared-volatility estimation on windows of bins to the right
// and to the left of a bin boundary.
//
// An anchor k denotes the time s = edge(k)/n. The right window holds bins
// k+1..k+r, the left window bins k-r..k-1; bin k itself is in neither. Near
// the ends of the day the windows shrink to the bins that exist.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cojump/spectral.hpp"

namespace cojump {

enum class ThresholdMode { global, adaptive };
enum class Side { left, right };

struct SpotConfig {
  std::size_t r_inv = 6;        ///< window length (bins) of the adaptive stage
  std::size_t r_inv_pilot = 6;  ///< window length (bins) of the pilot stage
  ThresholdMode threshold = ThresholdMode::adaptive;
  /// When set, the global threshold is trunc_const * h^tau instead of
  /// 2 h log(1/h).
  std::optional<double> trunc_const;
  double tau = 0.5;
  double a_min_jump = 0.0;  ///< jumps with |dX| <= a are ignored by detection
  /// Pilots are floored at this fraction of the median pilot bin value.
  double pilot_floor_fraction = 0.1;

  void validate(const BinGrid& grid) const;

  /// n^beta with r_n = n^{-beta} log n, i.e. log(n) * r_inv.
  double rate_normalization(std::size_t n) const;
  /// beta implied by rate_normalization.
  double beta_rate(std::size_t n) const;
};

/// Global truncation level u for a bin of width h.
double global_threshold(double h, const SpotConfig& cfg);

/// Fisher information sum_j 1/2 (c + ||Phi_j||^{-2} eta/n)^{-2}.
double fisher_at_bin(double pilot_c, double eta_hat, std::size_t n,
                     std::span<const double> inv_norm_sq);
double fisher_at_bin(double pilot_c, double eta_hat, std::size_t n, double h,
                     std::size_t j_max);

struct PilotEstimate {
  bool available = false;
  double value = 0.0;
  std::size_t window_bins = 0;
  std::size_t n_truncated = 0;
};

struct SideEstimate {
  bool available = false;
  double c = 0.0;          ///< spot squared volatility
  double fisher = 0.0;     ///< Fisher information at the bin adjacent to s
  double pilot = 0.0;      ///< pilot value behind the weights (after flooring)
  std::size_t window_bins = 0;
  std::size_t n_truncated = 0;
  bool degenerate = false;  ///< pilot was floored or every bin truncated
};

struct SpotEstimate {
  SideEstimate right;
  SideEstimate left;

  /// (c_right + c_left)/2 where both exist, else the available side.
  std::optional<double> combined() const;
  /// Standard error of combined().
  std::optional<double> combined_se() const;
};

struct BinStage {
  double pilot_zeta = 0.0;   ///< equal-weight bin value over J_pi frequencies
  double pilot_level = 0.0;  ///< local pilot behind this bin's weights (floored)
  double zeta = 0.0;         ///< adaptive bin estimate
  double threshold = 0.0;    ///< u_k
  bool truncated = false;    ///< h |zeta| > u_k
};

/// Holds the spectral statistics of one day and evaluates both stages.
class SpotEstimator {
 public:
  SpotEstimator(SpectralMatrix stats, double eta_hat, BinGrid grid,
                SpectralConfig spectral, SpotConfig cfg);

  const SpectralMatrix& stats() const noexcept { return stats_; }
  const BinGrid& grid() const noexcept { return grid_; }
  const SpotConfig& config() const noexcept { return cfg_; }
  const SpectralConfig& spectral_config() const noexcept { return spectral_; }
  double eta_hat() const noexcept { return eta_hat_; }

  /// Equal-weight bin value sum_{j<=J_pi} (S_jk^2 - ||Phi_jk||^{-2} eta/n) / J_pi.
  double pilot_bin_value(std::size_t k) const;
  /// Pilot truncation: h |pilot value| > global threshold.
  bool pilot_truncated(std::size_t k) const;

  /// Window average of truncated pilot bin values; the divisor is the window
  /// length, truncated bins contribute zero.
  PilotEstimate pilot_spot(std::size_t anchor, Side side) const;

  /// Adaptive window estimate with weights evaluated at the window's pilot.
  SideEstimate adaptive_spot(std::size_t anchor, Side side) const;

  SpotEstimate spot(std::size_t anchor) const {
    return {adaptive_spot(anchor, Side::right), adaptive_spot(anchor, Side::left)};
  }

  /// Per-bin adaptive statistics used for truncation and jump detection.
  const std::vector<BinStage>& bin_stage() const noexcept { return bins_; }

  /// Median of the pilot bin values over the day; the reference for flooring.
  double pilot_reference() const noexcept { return pilot_reference_; }
  double floor_pilot(double value, bool* floored = nullptr) const;

 private:
  std::pair<std::size_t, std::size_t> window(std::size_t anchor, Side side,
                                             std::size_t r) const;

  SpectralMatrix stats_;
  double eta_hat_;
  BinGrid grid_;
  SpectralConfig spectral_;
  SpotConfig cfg_;
  std::vector<double> pilot_values_;
  double pilot_reference_ = 0.0;
  std::vector<BinStage> bins_;
};

/// c_hat -/+ z_{(1+level)/2} sqrt(r_n / I_hat) with r_n = 1 / window_bins.
std::pair<double, double> confidence_interval(const SideEstimate& est, double level);

struct SpotVolPath {
  BinGrid grid;
  SpectralConfig spectral;
  SpotConfig config;
  double eta_hat = 0.0;
  std::vector<BinStage> bins;
  std::vector<SpotEstimate> anchors;  ///< one per bin boundary k = 0..h_inv-1

  double time(std::size_t anchor) const {
    return static_cast<double>(grid.edge(anchor)) / static_cast<double>(grid.n());
  }
};

/// Noise estimation, spectral statistics and both stages at every anchor.
SpotVolPath spot_path(const NoisyPath& path, const BinGrid& grid, const SpotConfig& cfg,
                      const SpectralConfig& spectral);
SpotVolPath spot_path(const SpotEstimator& estimator);

}  // namespace cojump
