#include "cojump/simulator.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "cojump/random.hpp"

namespace cojump {

namespace {

RandomStream stream(std::uint64_t seed, Driver d) {
  return RandomStream(seed, static_cast<std::uint32_t>(d));
}

std::size_t step_of(double t, std::size_t n) {
  const auto i = static_cast<std::size_t>(std::ceil(t * static_cast<double>(n)));
  return std::clamp<std::size_t>(i, 1, n);
}

// Arrival times of a Poisson process with the given rate on (0,1).
std::vector<double> arrivals(RandomStream& rng, double rate) {
  std::vector<double> out;
  if (!(rate > 0.0)) return out;
  double t = rng.exponential(rate);
  while (t < 1.0) {
    out.push_back(t);
    t += rng.exponential(rate);
  }
  return out;
}

double jump_size(RandomStream& rng, double H) {
  return H + std::sqrt(H / 100.0) * rng.normal();
}

}  // namespace

std::string_view to_string(VolModel m) {
  return m == VolModel::const_vol ? "const_vol" : "stoch_vol";
}

void ScenarioConfig::validate() const {
  if (n < 2) throw std::invalid_argument("scenario: n must be >= 2");
  if (lambda < 0.0) throw std::invalid_argument("scenario: lambda must be >= 0");
  if (eta < 0.0) throw std::invalid_argument("scenario: eta must be >= 0");
  if (H < 0.0) throw std::invalid_argument("scenario: H must be >= 0");
  if (vol_jump_rate < 0.0) throw std::invalid_argument("scenario: vol_jump_rate must be >= 0");
  if (vol_of_vol < 0.0) throw std::invalid_argument("scenario: vol_of_vol must be >= 0");
  if (std::abs(rho) > 1.0) throw std::invalid_argument("scenario: |rho| must be <= 1");
  if (noise_variance_override && *noise_variance_override < 0.0) {
    throw std::invalid_argument("scenario: noise variance must be >= 0");
  }
}

double seasonality(double t) noexcept { return 1.0 - 0.6 * std::sqrt(t) + 0.1 * t * t; }

Scenario table1_scenario(std::string_view id) {
  static constexpr std::string_view roman[] = {"I",  "II",  "III",  "IV", "V",
                                               "VI", "VII", "VIII", "IX"};
  std::string up(id);
  std::transform(up.begin(), up.end(), up.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::toupper(ch)); });
  int row = -1;
  for (int i = 0; i < 9; ++i) {
    if (up == roman[i] || up == std::to_string(i + 1)) row = i;
  }
  if (row < 0) throw std::invalid_argument("unknown scenario id '" + std::string(id) + "'");

  Scenario s;
  s.id = std::string(roman[row]);
  ScenarioConfig& c = s.sim;
  EstimatorSettings& e = s.est;
  if (row == 0) {
    c.model = VolModel::const_vol;
    c.n = 300000;
    c.lambda = 1.0;
    c.H = 0.25;
    c.eta = 0.001;
    e = {300, 50, 25, 100, 10};
    return s;
  }
  c.model = VolModel::stoch_vol;
  c.lambda = 2.0;
  c.gamma = (row >= 7) ? 1.0 : 0.0;
  c.half_jump_thinning = row == 8;
  // n, H, eta per row; rows II..IV and VIII at n = 30000, the rest at 5000.
  struct Row {
    std::size_t n;
    double H, eta;
  };
  static constexpr Row rows[] = {{300000, 0.25, 0.001}, {30000, 0.25, 0.005},
                                 {30000, 0.25, 0.05},   {30000, 0.05, 0.005},
                                 {5000, 0.25, 0.005},   {5000, 0.25, 0.05},
                                 {5000, 0.05, 0.005},   {30000, 0.25, 0.005},
                                 {5000, 0.25, 0.005}};
  c.n = rows[row].n;
  c.H = rows[row].H;
  c.eta = rows[row].eta;
  if (c.n == 30000) {
    e = {60, 40, 25, 3, 5};
  } else {
    e = {10, 30, 20, 3, 3};
  }
  return s;
}

SimulatedPath simulate(const ScenarioConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n;
  const double dt = 1.0 / static_cast<double>(n);
  const double sqdt = std::sqrt(dt);
  const bool stoch = cfg.model == VolModel::stoch_vol;

  RandomStream rng_price_arrivals = stream(cfg.seed, Driver::price_jump_arrivals);
  RandomStream rng_price_sizes = stream(cfg.seed, Driver::price_jump_sizes);
  RandomStream rng_cojump = stream(cfg.seed, Driver::cojump_sizes);
  RandomStream rng_thin = stream(cfg.seed, Driver::thinning);

  std::vector<JumpRecord> price_jumps;
  std::vector<JumpRecord> vol_jumps;
  for (double t : arrivals(rng_price_arrivals, cfg.lambda)) {
    price_jumps.push_back({t, step_of(t, n), jump_size(rng_price_sizes, cfg.H)});
    if (!stoch) continue;
    double y = jump_size(rng_cojump, cfg.H);
    if (cfg.half_jump_thinning && rng_thin.uniform() < 0.5) y = 0.0;
    if (cfg.gamma != 0.0 && y != 0.0) vol_jumps.push_back({t, step_of(t, n), cfg.gamma * y});
  }
  if (stoch) {
    RandomStream rng_vol_arrivals = stream(cfg.seed, Driver::vol_jump_arrivals);
    RandomStream rng_vol_sizes = stream(cfg.seed, Driver::vol_jump_sizes);
    for (double t : arrivals(rng_vol_arrivals, cfg.vol_jump_rate)) {
      vol_jumps.push_back({t, step_of(t, n), jump_size(rng_vol_sizes, cfg.H)});
    }
    std::stable_sort(vol_jumps.begin(), vol_jumps.end(),
                     [](const JumpRecord& a, const JumpRecord& b) { return a.time < b.time; });
  }

  std::vector<double> price_jump_at(n + 1, 0.0);
  for (const JumpRecord& j : price_jumps) price_jump_at[j.index] += j.size;
  std::vector<double> vol_jump_at(n + 1, 0.0);
  for (const JumpRecord& j : vol_jumps) vol_jump_at[j.index] += j.size;

  RandomStream rng_b = stream(cfg.seed, Driver::brownian);
  RandomStream rng_bperp = stream(cfg.seed, Driver::vol_brownian_orthogonal);
  const double rho_perp = std::sqrt(1.0 - cfg.rho * cfg.rho);

  std::vector<double> x_cont(n + 1);
  std::vector<double> x(n + 1);
  std::vector<double> c_path(n + 1);
  x_cont[0] = cfg.x0;
  x[0] = cfg.x0;
  double c = cfg.c0;
  double jumps_so_far = 0.0;
  c_path[0] = stoch ? seasonality(0.0) * seasonality(0.0) * c : 1.0;
  for (std::size_t i = 1; i <= n; ++i) {
    const double db = sqdt * rng_b.normal();
    if (stoch) {
      const double t_prev = static_cast<double>(i - 1) * dt;
      const double root_c = std::sqrt(std::max(c, 0.0));
      x_cont[i] = x_cont[i - 1] + seasonality(t_prev) * root_c * db;
      const double db_vol = cfg.rho * db + rho_perp * sqdt * rng_bperp.normal();
      c += cfg.mean_reversion * (1.0 - c) * dt + cfg.vol_of_vol * root_c * db_vol + vol_jump_at[i];
      const double phi = seasonality(static_cast<double>(i) * dt);
      c_path[i] = phi * phi * c;
    } else {
      x_cont[i] = x_cont[i - 1] + db;
      c_path[i] = 1.0;
    }
    jumps_so_far += price_jump_at[i];
    x[i] = x_cont[i] + jumps_so_far;
  }

  double noise_var = cfg.eta * cfg.eta;
  if (stoch) {
    // Trapezoid rule for int_0^1 (phi^2 c)^2 dt on the realized path.
    double integral = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      integral += 0.5 * (c_path[i - 1] * c_path[i - 1] + c_path[i] * c_path[i]) * dt;
    }
    noise_var *= std::pow(std::max(integral, 0.0), 0.25);
  }
  if (cfg.noise_variance_override) noise_var = *cfg.noise_variance_override;

  RandomStream rng_noise = stream(cfg.seed, Driver::noise);
  const double noise_sd = std::sqrt(noise_var);
  std::vector<double> eps(n + 1);
  std::vector<double> y(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    eps[i] = noise_sd > 0.0 ? noise_sd * rng_noise.normal() : 0.0;
    y[i] = x[i] + eps[i];
  }

  return SimulatedPath{NoisyPath(std::move(y)), std::move(x),         std::move(x_cont),
                       std::move(c_path),       std::move(price_jumps), std::move(vol_jumps),
                       std::move(eps),          noise_var};
}

}  // namespace cojump
