#pragma once

#include "cresm/types.hpp"

namespace cresm {

/// Multiplex n equal-length symbol streams: v[n*k + j] = streams[j][k].
InterleavedInput interleave(const std::vector<SymbolStream>& streams);

/// Inverse of interleave.
std::vector<SymbolStream> deinterleave(const InterleavedInput& v, int n);

/// Noiseless receiver output of the virtual encoder:
///   z[m] = sum_{i=0}^{n-1} h[(m-i) mod n] * v[m-i],  v padded with 0
/// outside [0, nL).  Output length is n*L + (n-1) (head and tail partial
/// sub-samples included).
SubSampleStream virtual_encode(const CollisionScenario& scenario,
                               const std::vector<SymbolStream>& streams);

/// Adds per-sample Gaussian noise of variance N0 / (2 * delta_{m mod n}).
/// Real noise when all channels are real and positive, circularly-symmetric
/// complex noise otherwise (per-component variance half the total).
SubSampleStream add_noise(const SubSampleStream& z,
                          const CollisionScenario& scenario, Seed seed);

/// Brute-force verification of the analytic discretization: synthesizes the
/// passband waveform with carrier omega_c = 2*pi*K, demodulates each
/// sub-interval by numerical integration against 2*exp(-j*omega_c*t) on a
/// grid of G points per symbol.  K >= 50 and G >= 10^4 required.
SubSampleStream passband_oracle(const CollisionScenario& scenario,
                                const std::vector<SymbolStream>& streams,
                                int carrier_cycles,
                                int grid_points_per_symbol);

}  // namespace cresm
