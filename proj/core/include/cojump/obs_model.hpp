#pragma once

// Tick data and the tick-time observation grid. The i-th trade of a sample of
// n+1 trades is placed at grid time i/n, irrespective of wall-clock spacing.

#include <cstddef>
#include <span>
#include <vector>

namespace cojump {

/// Trades with wall-clock timestamps (seconds) and positive price levels.
class TickSeries {
 public:
  /// Ties and sub-nanosecond collisions are broken by input order: each
  /// timestamp is lifted to at least its predecessor plus `kTieJitter`.
  /// Throws std::invalid_argument on a decreasing timestamp, a non-positive or
  /// non-finite price, mismatched lengths, or fewer than two ticks.
  TickSeries(std::vector<double> timestamps, std::vector<double> prices);

  static constexpr double kTieJitter = 1e-9;

  std::size_t size() const noexcept { return prices_.size(); }
  std::span<const double> timestamps() const noexcept { return timestamps_; }
  std::span<const double> prices() const noexcept { return prices_; }

 private:
  std::vector<double> timestamps_;
  std::vector<double> prices_;
};

/// Log-price observations Y_0..Y_n on the grid i/n.
class NoisyPath {
 public:
  explicit NoisyPath(std::vector<double> log_prices);

  /// Number of returns.
  std::size_t n() const noexcept { return y_.size() - 1; }
  std::span<const double> y() const noexcept { return y_; }
  double operator[](std::size_t i) const noexcept { return y_[i]; }

 private:
  std::vector<double> y_;
};

/// Observed returns dY_i = Y_i - Y_{i-1}, i = 1..n, stored zero-based.
struct ReturnSeries {
  std::vector<double> dy;

  std::size_t n() const noexcept { return dy.size(); }
  /// Return with one-based index i in 1..n.
  double at(std::size_t i) const noexcept { return dy[i - 1]; }
};

NoisyPath from_ticks(const TickSeries& ticks);

ReturnSeries returns(const NoisyPath& path);

/// Time-reversed path Y'_i = Y_{n-i}.
NoisyPath reversed(const NoisyPath& path);

}  // namespace cojump
