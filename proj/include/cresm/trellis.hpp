#pragma once

#include "cresm/types.hpp"

namespace cresm {

enum class Metric {
  kWhitened,  // sum_m delta_{m mod n} * |y[m] - z[m]|^2 (exact ML)
  kPlain,     // sum_m |y[m] - z[m]|^2
};

/// The virtual convolutional trellis of an n-packet collision.  States are
/// the 2^(n-1) sign vectors of the previous n-1 interleaved inputs; state
/// bit i set means v[m-1-i] = -1.  Inputs outside [0, nL) are forced to 0,
/// so the path starts and ends in the all-(+1) state and the boundary
/// stages have a reduced branch set.
struct VirtualTrellis {
  int n = 2;
  Eigen::Index packet_len = 1;
  ComplexArray channels;     // h_j, cycle of length n
  Eigen::ArrayXd deltas;     // sub-interval lengths, cycle of length n
  double noise_density = 0.0;

  int num_states() const { return 1 << (n - 1); }
  Eigen::Index input_len() const { return n * packet_len; }
  Eigen::Index stage_count() const { return n * packet_len + n - 1; }
  bool tail_stage(Eigen::Index m) const { return m >= input_len(); }

  /// Noise variance of the sub-sample consumed at stage m.
  double stage_variance(Eigen::Index m) const {
    return noise_density / (2.0 * deltas[m % n]);
  }

  int next_state(int state, int input_bit) const {
    return ((state << 1) | input_bit) & (num_states() - 1);
  }

  /// Branch output at stage m leaving `state` on input bit u (0 -> +1,
  /// 1 -> -1); at tail stages the input is the forced 0 pad and u is
  /// ignored.
  Complex branch_output(Eigen::Index m, int state, int input_bit) const;
};

struct DecodeResult {
  InterleavedInput interleaved;       // v-hat, length n*L
  std::vector<SymbolStream> streams;  // per-source estimates
  double path_metric = 0.0;
};

VirtualTrellis build_trellis(const CollisionScenario& scenario);

/// Distance between an observation and a noiseless sub-sample stream under
/// the given metric; the whitened form is the per-stage inverse-variance
/// weighting up to the constant N0/2, so it stays finite at N0 = 0.
double path_metric(const ComplexArray& y, const ComplexArray& z,
                   const VirtualTrellis& trellis, Metric metric);

/// Viterbi search over the virtual trellis; returns the global minimum of
/// the selected metric (exact ML under the Gaussian model when whitened).
/// Survivor ties keep the lexicographically smaller predecessor state.
DecodeResult viterbi_decode(const SubSampleStream& y,
                            const VirtualTrellis& trellis,
                            Metric metric = Metric::kWhitened);

/// Enumerates all 2^(nL) input sequences (nL <= 20) and returns the
/// whitened-metric argmin; ties resolve to the lexicographically smallest
/// sequence with +1 < -1.
DecodeResult exhaustive_ml_oracle(const SubSampleStream& y,
                                  const VirtualTrellis& trellis);

/// Two-packet successive decoder: quantize each sub-sample to the nearest
/// branch-alphabet point, then run the chained recursion
///   x_A[k] = (z[2k] - z[2k-1]) / h_A + x_A[k-1]
///   x_B[k] = (z[2k+1] - z[2k]) / h_B + x_B[k-1]
/// seeded from the head sample, clamping each estimate to +-1 by sign.
DecodeResult successive_decode(const SubSampleStream& y,
                               const CollisionScenario& scenario);

}  // namespace cresm
