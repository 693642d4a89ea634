#include "cresm/validation.hpp"

#include "cresm/channel.hpp"
#include "cresm/signal.hpp"
#include "cresm/trellis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace cresm {

CollisionScenario random_scenario(int n, Eigen::Index packet_len, Seed seed,
                                  int carrier_cycles, bool complex_channels) {
  std::mt19937_64 engine(seed.value);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  CollisionScenario scenario;
  scenario.n = n;
  scenario.packet_len = packet_len;

  // Offsets in [0.05, 0.95] with gaps >= 0.05; snapped to the half-cycle
  // grid when a carrier is given.
  Eigen::ArrayXd offsets(n - 1);
  const double lo = 0.05, hi = 0.95, gap = 0.05;
  while (true) {
    std::vector<double> draw(n - 1);
    for (double& d : draw) d = lo + (hi - lo) * unit(engine);
    if (carrier_cycles > 0) {
      const double step = 1.0 / (2.0 * carrier_cycles);
      for (double& d : draw) d = std::round(d / step) * step;
    }
    std::sort(draw.begin(), draw.end());
    bool ok = true;
    double prev = 0.0;
    for (double d : draw) {
      if (d - prev < gap || d > hi) ok = false;
      prev = d;
    }
    if (ok) {
      for (int i = 0; i < n - 1; ++i) offsets[i] = draw[i];
      break;
    }
  }
  scenario.offsets = offsets;

  scenario.channels = ComplexArray(n);
  for (int j = 0; j < n; ++j) {
    const double mag = 0.5 + unit(engine);
    scenario.channels[j] =
        complex_channels
            ? std::polar(mag, 2.0 * std::numbers::pi * unit(engine))
            : Complex(mag, 0.0);
  }
  return scenario;
}

namespace {

std::vector<SymbolStream> random_packets(const CollisionScenario& scenario,
                                         Seed seed) {
  std::vector<SymbolStream> tx(scenario.n);
  for (int j = 0; j < scenario.n; ++j)
    tx[j] = bpsk_modulate(random_bits(
        scenario.packet_len, derive_seed(seed, static_cast<std::uint64_t>(j))));
  return tx;
}

}  // namespace

ValidationReport run_passband_agreement(int scenarios, int carrier_cycles,
                                        int grid_points_per_symbol,
                                        double tolerance, Seed seed) {
  ValidationReport report;
  report.trials = scenarios;
  for (int i = 0; i < scenarios; ++i) {
    const Seed s = derive_seed(seed, static_cast<std::uint64_t>(i));
    const int n = 2 + i % 2;
    CollisionScenario scenario = random_scenario(n, 3, s, carrier_cycles);
    const auto tx = random_packets(scenario, derive_seed(s, 99));
    const SubSampleStream analytic = virtual_encode(scenario, tx);
    const SubSampleStream oracle = passband_oracle(
        scenario, tx, carrier_cycles, grid_points_per_symbol);
    const double dev = (oracle.values - analytic.values).abs().maxCoeff();
    report.worst = std::max(report.worst, dev);
    if (!(dev < tolerance)) ++report.failures;
  }
  report.passed = report.failures == 0;
  std::ostringstream msg;
  msg << "passband vs analytic: max deviation " << report.worst << " over "
      << scenarios << " scenarios (tolerance " << tolerance << ")";
  report.detail = msg.str();
  return report;
}

ValidationReport run_oracle_equivalence(int trials, Seed seed) {
  ValidationReport report;
  report.trials = trials;
  const double snrs[] = {0.0, 4.0, 8.0};
  for (int i = 0; i < trials; ++i) {
    const Seed s = derive_seed(seed, static_cast<std::uint64_t>(i));
    CollisionScenario scenario = random_scenario(2, 6, s);
    scenario.noise_density = std::pow(10.0, -snrs[i % 3] / 10.0);
    const auto tx = random_packets(scenario, derive_seed(s, 99));
    const SubSampleStream y =
        add_noise(virtual_encode(scenario, tx), scenario, derive_seed(s, 7));
    const VirtualTrellis trellis = build_trellis(scenario);
    const DecodeResult fast = viterbi_decode(y, trellis, Metric::kWhitened);
    const DecodeResult slow = exhaustive_ml_oracle(y, trellis);
    if ((fast.interleaved != slow.interleaved).any()) ++report.failures;
  }
  report.passed = report.failures == 0;
  report.worst = report.failures;
  std::ostringstream msg;
  msg << "viterbi vs exhaustive ML: " << (trials - report.failures) << "/"
      << trials << " identical paths";
  report.detail = msg.str();
  return report;
}

ValidationReport run_roundtrip_suite(int scenarios, Eigen::Index packet_len,
                                     Seed seed) {
  ValidationReport report;
  report.trials = scenarios;
  for (int i = 0; i < scenarios; ++i) {
    const Seed s = derive_seed(seed, static_cast<std::uint64_t>(i));
    CollisionScenario scenario =
        random_scenario(2 + i % 3, packet_len, s);
    const auto tx = random_packets(scenario, derive_seed(s, 99));
    const SubSampleStream z = virtual_encode(scenario, tx);
    const DecodeResult decoded =
        viterbi_decode(z, build_trellis(scenario), Metric::kWhitened);
    bool exact = true;
    for (int j = 0; j < scenario.n; ++j)
      if ((decoded.streams[j] != tx[j]).any()) exact = false;
    if (!exact) ++report.failures;
  }
  report.passed = report.failures == 0;
  report.worst = report.failures;
  std::ostringstream msg;
  msg << "zero-noise round-trip: " << (scenarios - report.failures) << "/"
      << scenarios << " exact decodes";
  report.detail = msg.str();
  return report;
}

}  // namespace cresm
