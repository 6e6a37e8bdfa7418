#include "cojump/spotvol.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "cojump/distributions.hpp"
#include "cojump/noise.hpp"

namespace cojump {

namespace {
constexpr double kAbsolutePilotFloor = 1e-12;
}

void SpotConfig::validate(const BinGrid& grid) const {
  const std::size_t half = grid.bins() / 2;
  if (r_inv == 0 || r_inv > half || r_inv_pilot == 0 || r_inv_pilot > half) {
    throw std::invalid_argument("spot config: window lengths must lie in 1..h_inv/2 = " +
                                std::to_string(half));
  }
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::invalid_argument("spot config: tau must lie in (0,1)");
  }
  if (trunc_const && !(*trunc_const > 0.0)) {
    throw std::invalid_argument("spot config: truncation constant must be positive");
  }
  if (a_min_jump < 0.0) throw std::invalid_argument("spot config: a must be >= 0");
  if (!(pilot_floor_fraction > 0.0)) {
    throw std::invalid_argument("spot config: pilot floor fraction must be positive");
  }
}

double SpotConfig::rate_normalization(std::size_t n) const {
  return std::log(static_cast<double>(n)) * static_cast<double>(r_inv);
}

double SpotConfig::beta_rate(std::size_t n) const {
  return std::log(rate_normalization(n)) / std::log(static_cast<double>(n));
}

double global_threshold(double h, const SpotConfig& cfg) {
  if (cfg.trunc_const) return *cfg.trunc_const * std::pow(h, cfg.tau);
  return 2.0 * h * std::log(1.0 / h);
}

double fisher_at_bin(double pilot_c, double eta_hat, std::size_t n,
                     std::span<const double> inv_norm_sq) {
  return oracle_weights(pilot_c, eta_hat, n, inv_norm_sq).fisher;
}

double fisher_at_bin(double pilot_c, double eta_hat, std::size_t n, double h,
                     std::size_t j_max) {
  return oracle_weights(pilot_c, eta_hat, n, h, j_max).fisher;
}

std::optional<double> SpotEstimate::combined() const {
  if (right.available && left.available) return 0.5 * (right.c + left.c);
  if (right.available) return right.c;
  if (left.available) return left.c;
  return std::nullopt;
}

std::optional<double> SpotEstimate::combined_se() const {
  auto var = [](const SideEstimate& s) {
    return 1.0 / (static_cast<double>(s.window_bins) * s.fisher);
  };
  if (right.available && left.available) return 0.5 * std::sqrt(var(right) + var(left));
  if (right.available) return std::sqrt(var(right));
  if (left.available) return std::sqrt(var(left));
  return std::nullopt;
}

SpotEstimator::SpotEstimator(SpectralMatrix stats, double eta_hat, BinGrid grid,
                             SpectralConfig spectral, SpotConfig cfg)
    : stats_(std::move(stats)), eta_hat_(eta_hat), grid_(grid), spectral_(spectral),
      cfg_(cfg) {
  if (stats_.bins() != grid_.bins() || stats_.n() != grid_.n()) {
    throw std::invalid_argument("spot estimator: statistics do not match the grid");
  }
  if (eta_hat_ < 0.0) throw std::invalid_argument("spot estimator: eta_hat < 0");
  spectral_.validate(grid_);
  if (stats_.j_max() < spectral_.j_max) {
    throw std::invalid_argument("spot estimator: statistics computed for fewer frequencies");
  }
  cfg_.validate(grid_);

  const std::size_t bins = grid_.bins();
  const WeightVector pilot_w = equal_weights(spectral_.j_max_pilot);
  pilot_values_.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    pilot_values_[k] =
        bin_estimate(stats_.column(k), pilot_w, stats_.inv_norm_sq(k), eta_hat_, grid_.n());
  }
  std::vector<double> sorted = pilot_values_;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t mid = bins / 2;
  pilot_reference_ = bins % 2 == 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);

  WeightVector final_w;
  bins_.resize(bins);
  for (std::size_t k = 0; k < bins; ++k) {
    BinStage& b = bins_[k];
    b.pilot_zeta = pilot_values_[k];
    const PilotEstimate r = pilot_spot(k, Side::right);
    const PilotEstimate l = pilot_spot(k, Side::left);
    double level = 0.0;
    if (r.available && l.available) {
      level = 0.5 * (r.value + l.value);
    } else {
      level = r.available ? r.value : l.value;
    }
    b.pilot_level = floor_pilot(level);
    const auto inv = stats_.inv_norm_sq(k).first(spectral_.j_max);
    final_w = oracle_weights(b.pilot_level, eta_hat_, grid_.n(), inv);
    b.zeta = bin_estimate(stats_.column(k), final_w, inv, eta_hat_, grid_.n());
    const double h = grid_.width(k);
    b.threshold = global_threshold(h, cfg_);
    if (cfg_.threshold == ThresholdMode::adaptive) b.threshold *= b.pilot_level;
    b.truncated = h * std::abs(b.zeta) > b.threshold;
  }
}

double SpotEstimator::pilot_bin_value(std::size_t k) const { return pilot_values_.at(k); }

bool SpotEstimator::pilot_truncated(std::size_t k) const {
  const double h = grid_.width(k);
  return h * std::abs(pilot_values_.at(k)) > global_threshold(h, cfg_);
}

double SpotEstimator::floor_pilot(double value, bool* floored) const {
  double floor = cfg_.pilot_floor_fraction * pilot_reference_;
  if (!(floor > kAbsolutePilotFloor)) floor = kAbsolutePilotFloor;
  const bool low = !(value >= floor);
  if (floored) *floored = low;
  return low ? floor : value;
}

std::pair<std::size_t, std::size_t> SpotEstimator::window(std::size_t anchor, Side side,
                                                          std::size_t r) const {
  const std::size_t bins = grid_.bins();
  if (anchor >= bins) throw std::out_of_range("spot: anchor outside 0..h_inv-1");
  if (side == Side::right) {
    const std::size_t first = anchor + 1;
    const std::size_t last = std::min(anchor + r, bins - 1);
    return {first, first <= last ? last + 1 : first};
  }
  const std::size_t first = anchor >= r ? anchor - r : 0;
  return {first, anchor};
}

PilotEstimate SpotEstimator::pilot_spot(std::size_t anchor, Side side) const {
  const auto [first, last] = window(anchor, side, cfg_.r_inv_pilot);
  PilotEstimate out;
  if (first >= last) return out;
  out.available = true;
  out.window_bins = last - first;
  double sum = 0.0;
  for (std::size_t k = first; k < last; ++k) {
    if (pilot_truncated(k)) {
      ++out.n_truncated;
    } else {
      sum += pilot_values_[k];
    }
  }
  out.value = sum / static_cast<double>(out.window_bins);
  return out;
}

SideEstimate SpotEstimator::adaptive_spot(std::size_t anchor, Side side) const {
  SideEstimate out;
  const PilotEstimate pilot = pilot_spot(anchor, side);
  const auto [first, last] = window(anchor, side, cfg_.r_inv);
  if (!pilot.available || first >= last) return out;
  bool floored = false;
  out.available = true;
  out.pilot = floor_pilot(pilot.value, &floored);
  out.window_bins = last - first;

  double sum = 0.0;
  for (std::size_t k = first; k < last; ++k) {
    if (bins_[k].truncated) {
      ++out.n_truncated;
      continue;
    }
    const auto inv = stats_.inv_norm_sq(k).first(spectral_.j_max);
    const WeightVector w = oracle_weights(out.pilot, eta_hat_, grid_.n(), inv);
    sum += bin_estimate(stats_.column(k), w, inv, eta_hat_, grid_.n());
  }
  out.c = sum / static_cast<double>(out.window_bins);
  const std::size_t adjacent = side == Side::right ? first : last - 1;
  out.fisher = fisher_at_bin(out.pilot, eta_hat_, grid_.n(),
                             stats_.inv_norm_sq(adjacent).first(spectral_.j_max));
  out.degenerate = floored || out.n_truncated == out.window_bins;
  return out;
}

std::pair<double, double> confidence_interval(const SideEstimate& est, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw std::invalid_argument("confidence interval: level must lie in (0,1)");
  }
  if (!est.available) throw std::invalid_argument("confidence interval: no estimate");
  const double z = normal_quantile(0.5 * (1.0 + level));
  const double half = z * std::sqrt(1.0 / (static_cast<double>(est.window_bins) * est.fisher));
  return {est.c - half, est.c + half};
}

SpotVolPath spot_path(const SpotEstimator& estimator) {
  SpotVolPath out{estimator.grid(), estimator.spectral_config(), estimator.config(),
                  estimator.eta_hat(), estimator.bin_stage(), {}};
  out.anchors.reserve(estimator.grid().bins());
  for (std::size_t k = 0; k < estimator.grid().bins(); ++k) {
    out.anchors.push_back(estimator.spot(k));
  }
  return out;
}

SpotVolPath spot_path(const NoisyPath& path, const BinGrid& grid, const SpotConfig& cfg,
                      const SpectralConfig& spectral) {
  if (path.n() != grid.n()) throw std::invalid_argument("spot path: grid size mismatch");
  spectral.validate(grid);
  cfg.validate(grid);
  const ReturnSeries ret = returns(path);
  const double eta_hat = estimate_eta_iid(ret).eta_hat;
  SpotEstimator est(spectral_statistics(ret, grid, spectral.j_max), eta_hat, grid,
                    spectral, cfg);
  return spot_path(est);
}

}  // namespace cojump
