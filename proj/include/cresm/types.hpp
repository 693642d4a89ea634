#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <vector>

namespace cresm {

using Complex = std::complex<double>;
using BitStream = Eigen::ArrayXi;     // entries in {0, 1}
using SymbolStream = Eigen::ArrayXd;  // BPSK symbols, entries in {+1, -1}
using ComplexArray = Eigen::ArrayXcd;

/// Interleaved encoder input: v[n*k + j] = x_j[k].
using InterleavedInput = SymbolStream;

struct Seed {
  std::uint64_t value = 0;
};

/// Derives an independent child seed from (parent, index) via splitmix64.
Seed derive_seed(Seed parent, std::uint64_t index);

/// An n-packet misaligned collision: arrival offsets of packets 1..n-1
/// relative to packet 0, complex channel coefficients, noise density N0
/// and the common packet length L (symbols per packet).
struct CollisionScenario {
  int n = 2;
  Eigen::ArrayXd offsets;   // n-1 strictly increasing values in (eps, 1-eps)
  ComplexArray channels;    // n coefficients h_j, |h_j| > 0
  double noise_density = 0.0;  // N0
  Eigen::Index packet_len = 1;

  // Offsets (and their pairwise gaps) must stay this far from {0, 1};
  // a vanishing sub-interval drives its noise variance to infinity.
  static constexpr double kOffsetMargin = 1e-3;

  /// Per-symbol sub-interval lengths (delta_1..delta_n), summing to 1.
  Eigen::ArrayXd interval_lengths() const;

  /// True when every channel coefficient is real and positive (CRESM);
  /// otherwise the receiver noise is circularly-symmetric complex (G-CRESM).
  bool real_channels() const;

  /// Throws std::invalid_argument when any invariant is violated.
  void validate() const;
};

/// The oversampled receiver output: one complex value per sub-interval,
/// n*L + (n-1) samples including the head/tail partials.  Sample m spans a
/// sub-interval of length interval_lengths[m mod n] and carries noise of
/// variance N0 / (2 * interval_lengths[m mod n]).
struct SubSampleStream {
  ComplexArray values;
  Eigen::ArrayXd interval_lengths;  // per-symbol cycle, size n
  Eigen::ArrayXd noise_variances;   // per sample

  int n() const { return static_cast<int>(interval_lengths.size()); }
  Eigen::Index size() const { return values.size(); }
};

}  // namespace cresm
