#include "cresm/baselines.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cresm {

TrialCount single_user_trial(double ebn0_db, Eigen::Index packet_len,
                             Seed seed) {
  if (packet_len < 1)
    throw std::invalid_argument("single_user_trial: packet_len must be >= 1");
  const double n0 = std::pow(10.0, -ebn0_db / 10.0);
  const double sigma = std::sqrt(n0 / 2.0);
  std::mt19937_64 engine(seed.value);
  std::normal_distribution<double> gauss(0.0, 1.0);
  TrialCount count{packet_len, 0};
  for (Eigen::Index k = 0; k < packet_len; ++k) {
    const double x = (engine() >> 63) ? -1.0 : 1.0;
    const double y = x + sigma * gauss(engine);
    const double xhat = y >= 0.0 ? 1.0 : -1.0;
    if (xhat != x) ++count.errors;
  }
  return count;
}

std::vector<SymbolStream> sic_decode(const SubSampleStream& y,
                                     const CollisionScenario& scenario,
                                     const SicConfig& config) {
  if (scenario.n != 2)
    throw std::invalid_argument("sic_decode: defined for n = 2 only");
  scenario.validate();
  if (config.first != 0 && config.first != 1)
    throw std::invalid_argument("sic_decode: decode order must name source 0 or 1");
  const Eigen::Index L = scenario.packet_len;
  if (y.size() != 2 * L + 1)
    throw std::invalid_argument("sic_decode: length mismatch");
  const double delta = scenario.offsets[0];
  const Complex ha = scenario.channels[0];
  const Complex hb = scenario.channels[1];

  auto decide = [](Complex v, Complex h) {
    return (v * std::conj(h)).real() >= 0.0 ? 1.0 : -1.0;
  };
  // Full-symbol matched filters; sub-samples are per-interval averages, so
  // recombining weights are the interval lengths.
  auto filter_a = [&](const ComplexArray& s, Eigen::Index k) {
    return delta * s[2 * k] + (1.0 - delta) * s[2 * k + 1];
  };
  auto filter_b = [&](const ComplexArray& s, Eigen::Index k) {
    return (1.0 - delta) * s[2 * k + 1] + delta * s[2 * k + 2];
  };

  SymbolStream xa(L), xb(L);
  ComplexArray residual = y.values;
  if (config.first == 0) {
    for (Eigen::Index k = 0; k < L; ++k) {
      xa[k] = decide(filter_a(y.values, k), ha);
      residual[2 * k] -= ha * xa[k];
      residual[2 * k + 1] -= ha * xa[k];
    }
    for (Eigen::Index k = 0; k < L; ++k)
      xb[k] = decide(filter_b(residual, k), hb);
  } else {
    for (Eigen::Index k = 0; k < L; ++k) {
      xb[k] = decide(filter_b(y.values, k), hb);
      residual[2 * k + 1] -= hb * xb[k];
      residual[2 * k + 2] -= hb * xb[k];
    }
    for (Eigen::Index k = 0; k < L; ++k)
      xa[k] = decide(filter_a(residual, k), ha);
  }
  return {xa, xb};
}

}  // namespace cresm
