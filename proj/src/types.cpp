#include "cresm/types.hpp"

#include <stdexcept>

namespace cresm {

Eigen::ArrayXd CollisionScenario::interval_lengths() const {
  Eigen::ArrayXd deltas(n);
  double prev = 0.0;
  for (int s = 0; s < n - 1; ++s) {
    deltas[s] = offsets[s] - prev;
    prev = offsets[s];
  }
  deltas[n - 1] = 1.0 - prev;
  return deltas;
}

bool CollisionScenario::real_channels() const {
  for (Eigen::Index j = 0; j < channels.size(); ++j)
    if (channels[j].imag() != 0.0 || channels[j].real() <= 0.0) return false;
  return true;
}

void CollisionScenario::validate() const {
  if (n < 2 || n > 4)
    throw std::invalid_argument("scenario: n must be in [2, 4]");
  if (offsets.size() != n - 1)
    throw std::invalid_argument("scenario: expected n-1 offsets");
  if (channels.size() != n)
    throw std::invalid_argument("scenario: expected n channel coefficients");
  if (packet_len < 1)
    throw std::invalid_argument("scenario: packet_len must be >= 1");
  if (!(noise_density >= 0.0))
    throw std::invalid_argument("scenario: noise density must be >= 0");
  double prev = 0.0;
  for (int s = 0; s < n - 1; ++s) {
    if (!(offsets[s] - prev >= kOffsetMargin) ||
        !(offsets[s] <= 1.0 - kOffsetMargin))
      throw std::invalid_argument(
          "scenario: offsets must be strictly increasing with gaps >= 1e-3, "
          "inside (1e-3, 1 - 1e-3)");
    prev = offsets[s];
  }
  for (Eigen::Index j = 0; j < channels.size(); ++j)
    if (!(std::abs(channels[j]) > 0.0))
      throw std::invalid_argument("scenario: channel coefficient is zero");
}

}  // namespace cresm
