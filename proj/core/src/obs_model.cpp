#include "cojump/obs_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace cojump {

TickSeries::TickSeries(std::vector<double> timestamps, std::vector<double> prices)
    : timestamps_(std::move(timestamps)), prices_(std::move(prices)) {
  if (timestamps_.size() != prices_.size()) {
    throw std::invalid_argument("tick series: timestamp and price counts differ");
  }
  if (prices_.size() < 2) {
    throw std::invalid_argument("tick series: at least two ticks are required");
  }
  for (std::size_t i = 0; i < prices_.size(); ++i) {
    if (!(prices_[i] > 0.0) || !std::isfinite(prices_[i])) {
      throw std::invalid_argument("tick series: non-positive price at index " +
                                  std::to_string(i));
    }
    if (!std::isfinite(timestamps_[i])) {
      throw std::invalid_argument("tick series: non-finite timestamp at index " +
                                  std::to_string(i));
    }
  }
  double prev_raw = timestamps_[0];
  for (std::size_t i = 1; i < timestamps_.size(); ++i) {
    const double raw = timestamps_[i];
    if (raw < prev_raw) {
      throw std::invalid_argument("tick series: decreasing timestamp at index " +
                                  std::to_string(i));
    }
    timestamps_[i] = std::max(raw, timestamps_[i - 1] + kTieJitter);
    prev_raw = raw;
  }
}

NoisyPath::NoisyPath(std::vector<double> log_prices) : y_(std::move(log_prices)) {
  if (y_.size() < 2) {
    throw std::invalid_argument("noisy path: need at least two observations");
  }
  for (std::size_t i = 0; i < y_.size(); ++i) {
    if (!std::isfinite(y_[i])) {
      throw std::invalid_argument("noisy path: non-finite value at index " +
                                  std::to_string(i));
    }
  }
}

NoisyPath from_ticks(const TickSeries& ticks) {
  const auto prices = ticks.prices();
  std::vector<double> y(prices.size());
  std::transform(prices.begin(), prices.end(), y.begin(),
                 [](double p) { return std::log(p); });
  return NoisyPath(std::move(y));
}

ReturnSeries returns(const NoisyPath& path) {
  const auto y = path.y();
  ReturnSeries out;
  out.dy.resize(path.n());
  for (std::size_t i = 1; i < y.size(); ++i) out.dy[i - 1] = y[i] - y[i - 1];
  return out;
}

NoisyPath reversed(const NoisyPath& path) {
  const auto y = path.y();
  return NoisyPath(std::vector<double>(y.rbegin(), y.rend()));
}

}  // namespace cojump
