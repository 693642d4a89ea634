#include "cresm/trellis.hpp"

#include "cresm/channel.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace cresm {

Complex VirtualTrellis::branch_output(Eigen::Index m, int state,
                                      int input_bit) const {
  Complex out = 0.0;
  if (m < input_len())
    out += (input_bit ? -1.0 : 1.0) * channels[m % n];
  for (int i = 1; i < n; ++i) {
    const Eigen::Index idx = m - i;  // index of v[m-i], held in state bit i-1
    if (idx < 0 || idx >= input_len()) continue;  // zero padding
    const double sym = (state >> (i - 1)) & 1 ? -1.0 : 1.0;
    out += sym * channels[idx % n];
  }
  return out;
}

VirtualTrellis build_trellis(const CollisionScenario& scenario) {
  scenario.validate();
  VirtualTrellis trellis;
  trellis.n = scenario.n;
  trellis.packet_len = scenario.packet_len;
  trellis.channels = scenario.channels;
  trellis.deltas = scenario.interval_lengths();
  trellis.noise_density = scenario.noise_density;
  return trellis;
}

namespace {

double stage_weight(const VirtualTrellis& trellis, Eigen::Index m,
                    Metric metric) {
  return metric == Metric::kWhitened ? trellis.deltas[m % trellis.n] : 1.0;
}

DecodeResult make_result(const InterleavedInput& v, int n, double metric) {
  DecodeResult result;
  result.interleaved = v;
  result.streams = deinterleave(v, n);
  result.path_metric = metric;
  return result;
}

}  // namespace

double path_metric(const ComplexArray& y, const ComplexArray& z,
                   const VirtualTrellis& trellis, Metric metric) {
  if (y.size() != z.size())
    throw std::invalid_argument("path_metric: length mismatch");
  double total = 0.0;
  for (Eigen::Index m = 0; m < y.size(); ++m)
    total += stage_weight(trellis, m, metric) * std::norm(y[m] - z[m]);
  return total;
}

DecodeResult viterbi_decode(const SubSampleStream& y,
                            const VirtualTrellis& trellis, Metric metric) {
  if (y.size() != trellis.stage_count())
    throw std::invalid_argument("viterbi_decode: observation length mismatch");
  const int n = trellis.n;
  const int states = trellis.num_states();
  const Eigen::Index stages = trellis.stage_count();
  constexpr double kInf = std::numeric_limits<double>::infinity();

  std::vector<double> cur(states, kInf), next(states);
  cur[0] = 0.0;  // known start: all padding (+1-encoded, masked anyway)
  std::vector<std::uint8_t> pred(
      static_cast<std::size_t>(stages) * states, 0);

  for (Eigen::Index m = 0; m < stages; ++m) {
    const double w = stage_weight(trellis, m, metric);
    std::fill(next.begin(), next.end(), kInf);
    const bool tail = trellis.tail_stage(m);
    for (int s = 0; s < states; ++s) {
      if (cur[s] == kInf) continue;
      const int max_u = tail ? 1 : 2;  // tail stages have the forced 0 input
      for (int u = 0; u < max_u; ++u) {
        const int ns = trellis.next_state(s, u);
        const double cand =
            cur[s] + w * std::norm(y.values[m] - trellis.branch_output(m, s, u));
        if (cand < next[ns]) {
          next[ns] = cand;
          pred[static_cast<std::size_t>(m) * states + ns] =
              static_cast<std::uint8_t>(s);
        }
      }
    }
    cur.swap(next);
  }

  // Tail padding funnels every survivor into state 0.
  if (cur[0] == kInf)
    throw std::logic_error("viterbi_decode: no path reached the final state");
  const double best = cur[0];

  std::vector<int> path(stages + 1);
  path[stages] = 0;
  for (Eigen::Index m = stages - 1; m >= 0; --m)
    path[m] = pred[static_cast<std::size_t>(m) * states + path[m + 1]];

  InterleavedInput v(trellis.input_len());
  for (Eigen::Index m = 0; m < trellis.input_len(); ++m)
    v[m] = (path[m + 1] & 1) ? -1.0 : 1.0;
  return make_result(v, n, best);
}

DecodeResult exhaustive_ml_oracle(const SubSampleStream& y,
                                  const VirtualTrellis& trellis) {
  const Eigen::Index bits = trellis.input_len();
  if (bits > 20)
    throw std::invalid_argument("exhaustive_ml_oracle: instance too large");
  if (y.size() != trellis.stage_count())
    throw std::invalid_argument("exhaustive_ml_oracle: length mismatch");
  const int n = trellis.n;

  double best = std::numeric_limits<double>::infinity();
  std::uint64_t best_code = 0;
  InterleavedInput v(bits);
  for (std::uint64_t code = 0; code < (1ULL << bits); ++code) {
    // Bit (bits-1-m) of the code is v[m]; ascending codes enumerate the
    // sequences in lexicographic order with +1 < -1.
    for (Eigen::Index m = 0; m < bits; ++m)
      v[m] = (code >> (bits - 1 - m)) & 1 ? -1.0 : 1.0;
    double metric = 0.0;
    for (Eigen::Index m = 0; m < y.size(); ++m) {
      Complex z = 0.0;
      for (int i = 0; i < n; ++i) {
        const Eigen::Index idx = m - i;
        if (idx >= 0 && idx < bits) z += trellis.channels[idx % n] * v[idx];
      }
      metric += trellis.deltas[m % n] * std::norm(y.values[m] - z);
    }
    if (metric < best) {
      best = metric;
      best_code = code;
    }
  }

  for (Eigen::Index m = 0; m < bits; ++m)
    v[m] = (best_code >> (bits - 1 - m)) & 1 ? -1.0 : 1.0;
  return make_result(v, n, best);
}

DecodeResult successive_decode(const SubSampleStream& y,
                               const CollisionScenario& scenario) {
  if (scenario.n != 2)
    throw std::invalid_argument("successive_decode: defined for n = 2 only");
  scenario.validate();
  const Eigen::Index L = scenario.packet_len;
  if (y.size() != 2 * L + 1)
    throw std::invalid_argument("successive_decode: length mismatch");
  const Complex ha = scenario.channels[0];
  const Complex hb = scenario.channels[1];

  // Nearest-point quantization of every sub-sample to its branch alphabet.
  auto nearest = [](Complex value, const std::vector<Complex>& points) {
    Complex best = points.front();
    double best_d = std::norm(value - best);
    for (const Complex& p : points) {
      const double d = std::norm(value - p);
      if (d < best_d) {
        best_d = d;
        best = p;
      }
    }
    return best;
  };
  const std::vector<Complex> head{ha, -ha};
  const std::vector<Complex> tail{hb, -hb};
  const std::vector<Complex> interior{ha + hb, ha - hb, -ha + hb, -ha - hb};
  ComplexArray zq(y.size());
  for (Eigen::Index m = 0; m < y.size(); ++m) {
    const auto& alphabet =
        m == 0 ? head : (m == y.size() - 1 ? tail : interior);
    zq[m] = nearest(y.values[m], alphabet);
  }

  auto clamp = [](Complex value) { return value.real() >= 0.0 ? 1.0 : -1.0; };
  SymbolStream xa(L), xb(L);
  xa[0] = clamp(zq[0] / ha);
  xb[0] = clamp((zq[1] - zq[0]) / hb);
  for (Eigen::Index k = 1; k < L; ++k) {
    xa[k] = clamp((zq[2 * k] - zq[2 * k - 1]) / ha + xa[k - 1]);
    xb[k] = clamp((zq[2 * k + 1] - zq[2 * k]) / hb + xb[k - 1]);
  }

  DecodeResult result;
  result.streams = {xa, xb};
  result.interleaved = interleave(result.streams);
  const SubSampleStream reenc = virtual_encode(scenario, result.streams);
  result.path_metric =
      path_metric(y.values, reenc.values, build_trellis(scenario),
                  Metric::kWhitened);
  return result;
}

}  // namespace cresm
