#include "cojump/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cojump {

namespace {

constexpr double kPi = std::numbers::pi;
// Slack for closed-interval support tests at floating grid points i/n.
constexpr double kSupportSlack = 1e-12;

void check_frequency(std::size_t j, std::size_t n, double h) {
  if (j == 0 || static_cast<double>(j) > static_cast<double>(n) * h + 1e-9) {
    throw std::invalid_argument("spectral: frequency " + std::to_string(j) +
                                " outside 1..n*h");
  }
}

bool in_bin(std::size_t k, double h, double t) {
  const double lo = static_cast<double>(k) * h;
  return t >= lo - kSupportSlack && t <= lo + h + kSupportSlack;
}

// sqrt(2n/m) sin(j pi l / m) for l = 0..m, i.e. Phi_jk / ||Phi_jk||_n on a bin
// holding m returns. The argument is reduced modulo 2m in integers.
std::vector<double> normalized_sine_table(std::size_t m, std::size_t j_max,
                                          std::size_t n) {
  std::vector<double> table(j_max * (m + 1));
  const double scale = std::sqrt(2.0 * static_cast<double>(n) / static_cast<double>(m));
  const std::size_t period = 2 * m;
  for (std::size_t j = 1; j <= j_max; ++j) {
    double* row = table.data() + (j - 1) * (m + 1);
    for (std::size_t l = 0; l <= m; ++l) {
      const std::size_t r = (j * l) % period;
      row[l] = scale * std::sin(kPi * static_cast<double>(r) / static_cast<double>(m));
    }
  }
  return table;
}

}  // namespace

BinGrid::BinGrid(std::size_t n, std::size_t h_inv) : n_(n), h_inv_(h_inv) {
  if (n == 0) throw std::invalid_argument("bin grid: n must be positive");
  if (h_inv == 0 || h_inv > n) {
    throw std::invalid_argument("bin grid: need 1 <= h_inv <= n");
  }
}

std::size_t BinGrid::min_size() const noexcept { return n_ / h_inv_; }

std::size_t BinGrid::bin_of_return(std::size_t i) const {
  if (i == 0 || i > n_) throw std::out_of_range("bin grid: return index out of range");
  // Largest k with edge(k) < i.
  std::size_t k = ((i - 1) * h_inv_) / n_;
  while (k + 1 < h_inv_ && edge(k + 1) < i) ++k;
  while (k > 0 && edge(k) >= i) --k;
  return k;
}

void SpectralConfig::validate(const BinGrid& grid) const {
  if (j_max_pilot == 0 || j_max == 0) {
    throw std::invalid_argument("spectral config: cut-offs must be positive");
  }
  if (j_max_pilot > j_max) {
    throw std::invalid_argument("spectral config: pilot cut-off exceeds J");
  }
  if (j_max >= grid.min_size()) {
    throw std::invalid_argument("spectral config: J = " + std::to_string(j_max) +
                                " must be below the smallest bin size " +
                                std::to_string(grid.min_size()));
  }
}

double phi(std::size_t j, std::size_t k, double h, std::size_t n, double t) {
  check_frequency(j, n, h);
  if (h <= 0.0 || static_cast<double>(k) * h >= 1.0 - kSupportSlack) {
    throw std::invalid_argument("phi: bin index outside 0..1/h-1");
  }
  if (!in_bin(k, h, t)) return 0.0;
  const double jd = static_cast<double>(j);
  const double nd = static_cast<double>(n);
  const double norm = std::sqrt(2.0 * h) * nd * std::sin(jd * kPi / (2.0 * nd * h));
  return std::sin(jd * kPi / h * (t - static_cast<double>(k) * h)) / norm;
}

double phi_cos(std::size_t j, std::size_t k, double h, double t) {
  if (j == 0) throw std::invalid_argument("phi_cos: frequency must be positive");
  if (h <= 0.0 || static_cast<double>(k) * h >= 1.0 - kSupportSlack) {
    throw std::invalid_argument("phi_cos: bin index outside 0..1/h-1");
  }
  if (!in_bin(k, h, t)) return 0.0;
  return std::sqrt(2.0 / h) *
         std::cos(static_cast<double>(j) * kPi / h * (t - static_cast<double>(k) * h));
}

double empirical_norm_sq(std::size_t j, std::size_t n, double h) {
  check_frequency(j, n, h);
  const double nd = static_cast<double>(n);
  const double s = std::sin(static_cast<double>(j) * kPi / (2.0 * nd * h));
  return 1.0 / (4.0 * nd * nd * s * s);
}

SpectralMatrix::SpectralMatrix(std::size_t j_max, std::size_t bins, std::size_t n)
    : j_max_(j_max), bins_(bins), n_(n), s_(j_max * bins, 0.0),
      inv_norm_sq_(j_max * bins, 0.0) {}

SpectralMatrix spectral_statistics(const ReturnSeries& ret, const BinGrid& grid,
                                   std::size_t j_max) {
  if (ret.n() != grid.n()) {
    throw std::invalid_argument("spectral statistics: grid does not match returns");
  }
  if (j_max == 0 || j_max >= grid.min_size()) {
    throw std::invalid_argument("spectral statistics: J = " + std::to_string(j_max) +
                                " outside 1..(smallest bin size - 1)");
  }
  SpectralMatrix out(j_max, grid.bins(), grid.n());
  std::map<std::size_t, std::vector<double>> tables;
  const double nd = static_cast<double>(grid.n());
  for (std::size_t k = 0; k < grid.bins(); ++k) {
    const std::size_t m = grid.size(k);
    auto it = tables.find(m);
    if (it == tables.end()) {
      it = tables.emplace(m, normalized_sine_table(m, j_max, grid.n())).first;
    }
    const std::vector<double>& table = it->second;
    // Returns i = edge+1..edge+m sit at offsets l = 1..m inside the bin.
    const double* dy = ret.dy.data() + grid.edge(k);
    const double h_k = grid.width(k);
    auto inv = out.mutable_inv_norm_sq(k);
    for (std::size_t j = 1; j <= j_max; ++j) {
      const double* row = table.data() + (j - 1) * (m + 1);
      double acc = 0.0;
      for (std::size_t l = 1; l <= m; ++l) acc += dy[l - 1] * row[l];
      out(j, k) = acc;
      const double s = std::sin(static_cast<double>(j) * kPi / (2.0 * nd * h_k));
      inv[j - 1] = 4.0 * nd * nd * s * s;
    }
  }
  return out;
}

WeightVector oracle_weights(double c, double eta, std::size_t n,
                            std::span<const double> inv_norm_sq) {
  if (!(c > 0.0)) throw std::invalid_argument("oracle weights: c must be positive");
  if (eta < 0.0) throw std::invalid_argument("oracle weights: eta must be non-negative");
  if (inv_norm_sq.empty()) throw std::invalid_argument("oracle weights: empty cut-off");
  WeightVector out;
  out.w.resize(inv_norm_sq.size());
  const double noise = eta / static_cast<double>(n);
  double total = 0.0;
  for (std::size_t j = 0; j < inv_norm_sq.size(); ++j) {
    const double v = c + inv_norm_sq[j] * noise;
    out.w[j] = 0.5 / (v * v);
    total += out.w[j];
  }
  for (double& w : out.w) w /= total;
  out.fisher = total;
  return out;
}

WeightVector oracle_weights(double c, double eta, std::size_t n, double h,
                            std::size_t j_max) {
  std::vector<double> inv(j_max);
  for (std::size_t j = 1; j <= j_max; ++j) inv[j - 1] = 1.0 / empirical_norm_sq(j, n, h);
  return oracle_weights(c, eta, n, inv);
}

WeightVector equal_weights(std::size_t j_max) {
  if (j_max == 0) throw std::invalid_argument("equal weights: empty cut-off");
  WeightVector out;
  out.w.assign(j_max, 1.0 / static_cast<double>(j_max));
  out.fisher = 0.0;
  return out;
}

double bin_estimate(std::span<const double> s_col, const WeightVector& w,
                    std::span<const double> inv_norm_sq, double eta, std::size_t n) {
  const std::size_t j_max = w.w.size();
  if (s_col.size() < j_max || inv_norm_sq.size() < j_max) {
    throw std::invalid_argument("bin estimate: weight vector longer than column");
  }
  const double noise = eta / static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t j = 0; j < j_max; ++j) {
    acc += w.w[j] * (s_col[j] * s_col[j] - inv_norm_sq[j] * noise);
  }
  return acc;
}

double bin_estimate(std::span<const double> s_col, const WeightVector& w, double eta,
                    std::size_t n, double h) {
  std::vector<double> inv(w.w.size());
  for (std::size_t j = 1; j <= inv.size(); ++j) inv[j - 1] = 1.0 / empirical_norm_sq(j, n, h);
  return bin_estimate(s_col, w, inv, eta, n);
}

}  // namespace cojump
