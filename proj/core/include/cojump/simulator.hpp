#pragma once

// Synthetic noisy observation paths with known ground truth.
//
// const_vol:  X = B + compound Poisson price jumps, noise N(0, eta^2).
// stoch_vol:  dX = phi_t sqrt(c_t) dB + price jumps,
//             dc = kappa (1 - c) dt + sqrt(c) dB~ + dJ,
//             phi_t = 1 - 0.6 sqrt(t) + 0.1 t^2,  d[B, B~] = rho dt,
//             J = gamma * (co-located y draws) + independent z jumps at rate 1,
//             noise variance eta^2 (int_0^1 phi^4 c^2 dt)^{1/4}.
// Jump sizes x, y, z ~ N(H, H/100) (second argument a variance). Everything
// is simulated on the observation grid i/n with full-truncation Euler steps.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "cojump/obs_model.hpp"

namespace cojump {

enum class VolModel { const_vol, stoch_vol };

std::string_view to_string(VolModel m);

struct ScenarioConfig {
  std::size_t n = 30000;
  double lambda = 2.0;  ///< price-jump intensity on [0,1]
  double H = 0.25;      ///< mean jump size
  double eta = 0.005;   ///< noise scale (standard deviation parameter)
  double gamma = 0.0;   ///< co-jump loading of the volatility
  VolModel model = VolModel::stoch_vol;
  double rho = 0.2;
  /// Co-located volatility jumps are switched off with probability 1/2.
  bool half_jump_thinning = false;
  std::uint64_t seed = 1;

  double mean_reversion = 6.0;
  double vol_of_vol = 1.0;
  /// Intensity of the volatility jumps that are independent of price jumps.
  double vol_jump_rate = 1.0;
  double c0 = 1.0;
  double x0 = 4.605170185988091;  ///< log(100)
  /// Replaces the model's noise variance when set.
  std::optional<double> noise_variance_override;

  void validate() const;
};

/// Tuning used with a scenario: bins, cut-offs and window lengths.
struct EstimatorSettings {
  std::size_t h_inv = 60;
  std::size_t j_max = 40;
  std::size_t j_max_pilot = 25;
  std::size_t r_inv = 3;
  std::size_t r_inv_pilot = 5;
};

struct Scenario {
  std::string id;
  ScenarioConfig sim;
  EstimatorSettings est;
};

/// Rows I..IX of the Monte Carlo design ("I", "II", ... or "1".."9").
Scenario table1_scenario(std::string_view id);

/// Seasonality factor phi_t.
double seasonality(double t) noexcept;

struct JumpRecord {
  double time = 0.0;       ///< arrival time in (0,1)
  std::size_t index = 0;   ///< return index i: the jump falls into ((i-1)/n, i/n]
  double size = 0.0;
};

struct SimulatedPath {
  NoisyPath y;
  std::vector<double> x;             ///< efficient log-price X_{i/n}
  std::vector<double> x_continuous;  ///< X without price jumps
  std::vector<double> c_path;        ///< phi_t^2 c_t at the grid points
  std::vector<JumpRecord> price_jumps;
  std::vector<JumpRecord> vol_jumps;
  std::vector<double> epsilon;
  double noise_variance = 0.0;
};

/// Throws std::invalid_argument for an invalid configuration.
SimulatedPath simulate(const ScenarioConfig& cfg);

/// Stream ids of the stochastic drivers.
enum class Driver : std::uint32_t {
  brownian = 0,
  vol_brownian_orthogonal = 1,
  price_jump_arrivals = 2,
  price_jump_sizes = 3,
  vol_jump_arrivals = 4,
  vol_jump_sizes = 5,
  noise = 6,
  cojump_sizes = 7,
  thinning = 8,
};

}  // namespace cojump
