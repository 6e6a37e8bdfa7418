#pragma once

#include <string_view>

#include "cojump/obs_model.hpp"

namespace cojump {

enum class NoiseMethod { iid };

std::string_view to_string(NoiseMethod m);

/// Estimated noise level eta (the noise variance for i.i.d. noise).
struct NoiseEstimate {
  double eta_hat = 0.0;
  NoiseMethod method = NoiseMethod::iid;
};

/// eta_hat = (1/2n) sum_i dY_i^2. The estimate also picks up an O(1/n) share
/// of the quadratic variation of the efficient price; it is not removed.
/// Throws std::invalid_argument for n < 2.
NoiseEstimate estimate_eta_iid(const ReturnSeries& ret);

}  // namespace cojump
