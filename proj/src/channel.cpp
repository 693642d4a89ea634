#include "cresm/channel.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace cresm {

InterleavedInput interleave(const std::vector<SymbolStream>& streams) {
  const int n = static_cast<int>(streams.size());
  if (n < 2) throw std::invalid_argument("interleave: need at least 2 streams");
  const Eigen::Index len = streams[0].size();
  for (const auto& s : streams)
    if (s.size() != len)
      throw std::invalid_argument("interleave: streams differ in length");
  InterleavedInput v(n * len);
  for (Eigen::Index k = 0; k < len; ++k)
    for (int j = 0; j < n; ++j) v[n * k + j] = streams[j][k];
  return v;
}

std::vector<SymbolStream> deinterleave(const InterleavedInput& v, int n) {
  if (n < 2) throw std::invalid_argument("deinterleave: n must be >= 2");
  if (v.size() % n != 0)
    throw std::invalid_argument("deinterleave: length not divisible by n");
  const Eigen::Index len = v.size() / n;
  std::vector<SymbolStream> streams(n, SymbolStream(len));
  for (Eigen::Index k = 0; k < len; ++k)
    for (int j = 0; j < n; ++j) streams[j][k] = v[n * k + j];
  return streams;
}

namespace {

SubSampleStream make_stream(const CollisionScenario& scenario) {
  SubSampleStream out;
  const Eigen::Index count =
      scenario.n * scenario.packet_len + scenario.n - 1;
  out.values = ComplexArray::Zero(count);
  out.interval_lengths = scenario.interval_lengths();
  out.noise_variances = Eigen::ArrayXd(count);
  for (Eigen::Index m = 0; m < count; ++m)
    out.noise_variances[m] =
        scenario.noise_density / (2.0 * out.interval_lengths[m % scenario.n]);
  return out;
}

}  // namespace

SubSampleStream virtual_encode(const CollisionScenario& scenario,
                               const std::vector<SymbolStream>& streams) {
  scenario.validate();
  if (static_cast<int>(streams.size()) != scenario.n)
    throw std::invalid_argument("virtual_encode: expected n streams");
  for (const auto& s : streams)
    if (s.size() != scenario.packet_len)
      throw std::invalid_argument("virtual_encode: stream length != L");

  const InterleavedInput v = interleave(streams);
  SubSampleStream out = make_stream(scenario);
  const int n = scenario.n;
  const Eigen::Index total = v.size();  // n*L
  for (Eigen::Index m = 0; m < out.values.size(); ++m) {
    Complex z = 0.0;
    for (int i = 0; i < n; ++i) {
      const Eigen::Index idx = m - i;
      if (idx >= 0 && idx < total) z += scenario.channels[idx % n] * v[idx];
    }
    out.values[m] = z;
  }
  return out;
}

SubSampleStream add_noise(const SubSampleStream& z,
                          const CollisionScenario& scenario, Seed seed) {
  SubSampleStream out = z;
  if (scenario.noise_density == 0.0) return out;
  std::mt19937_64 engine(seed.value);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const bool real_noise = scenario.real_channels();
  for (Eigen::Index m = 0; m < out.values.size(); ++m) {
    const double sigma2 = out.noise_variances[m];
    if (real_noise) {
      out.values[m] += std::sqrt(sigma2) * gauss(engine);
    } else {
      const double comp = std::sqrt(sigma2 / 2.0);
      out.values[m] += Complex(comp * gauss(engine), comp * gauss(engine));
    }
  }
  return out;
}

SubSampleStream passband_oracle(const CollisionScenario& scenario,
                                const std::vector<SymbolStream>& streams,
                                int carrier_cycles,
                                int grid_points_per_symbol) {
  scenario.validate();
  if (carrier_cycles < 50)
    throw std::invalid_argument("passband_oracle: need K >= 50");
  if (grid_points_per_symbol < 10'000)
    throw std::invalid_argument("passband_oracle: need G >= 10^4");
  if (static_cast<int>(streams.size()) != scenario.n)
    throw std::invalid_argument("passband_oracle: expected n streams");
  for (const auto& s : streams)
    if (s.size() != scenario.packet_len)
      throw std::invalid_argument("passband_oracle: stream length != L");

  const int n = scenario.n;
  const Eigen::Index L = scenario.packet_len;
  const double omega = 2.0 * std::numbers::pi * carrier_cycles;

  // Arrival time of packet j (packet 0 at t = 0).
  auto tau = [&](int j) { return j == 0 ? 0.0 : scenario.offsets[j - 1]; };
  // Boundary of sub-sample m: whole symbols elapsed plus the phase offset.
  auto boundary = [&](Eigen::Index m) {
    return static_cast<double>(m / n) + tau(static_cast<int>(m % n));
  };

  SubSampleStream out = make_stream(scenario);
  for (Eigen::Index m = 0; m < out.values.size(); ++m) {
    const double a = boundary(m);
    const double b = boundary(m + 1);
    const double mid = 0.5 * (a + b);

    // The superposed envelope is constant inside a sub-interval.
    Complex amp = 0.0;
    for (int j = 0; j < n; ++j) {
      const auto k = static_cast<Eigen::Index>(std::floor(mid - tau(j)));
      if (k >= 0 && k < L) amp += scenario.channels[j] * streams[j][k];
    }

    // Composite Simpson over the oscillating passband product.
    Eigen::Index steps = static_cast<Eigen::Index>(
        std::llround((b - a) * grid_points_per_symbol));
    if (steps < 2) steps = 2;
    if (steps % 2 != 0) ++steps;
    const double h = (b - a) / static_cast<double>(steps);
    auto f = [&](double t) -> Complex {
      const double s = (amp * std::polar(1.0, omega * t)).real();
      return s * std::polar(1.0, -omega * t);
    };
    Complex sum = f(a) + f(b);
    for (Eigen::Index i = 1; i < steps; ++i)
      sum += (i % 2 == 1 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
    out.values[m] = 2.0 * (h / 3.0) * sum / (b - a);
  }
  return out;
}

}  // namespace cresm
