#include "cojump/noise.hpp"

#include <stdexcept>

namespace cojump {

std::string_view to_string(NoiseMethod m) {
  switch (m) {
    case NoiseMethod::iid:
      return "iid";
  }
  return "unknown";
}

NoiseEstimate estimate_eta_iid(const ReturnSeries& ret) {
  if (ret.n() < 2) throw std::invalid_argument("noise estimate: need n >= 2 returns");
  double sum = 0.0;
  for (double d : ret.dy) sum += d * d;
  return {sum / (2.0 * static_cast<double>(ret.n())), NoiseMethod::iid};
}

}  // namespace cojump
