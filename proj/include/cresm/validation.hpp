#pragma once

#include "cresm/types.hpp"

#include <string>

namespace cresm {

struct ValidationReport {
  bool passed = false;
  int trials = 0;
  int failures = 0;
  double worst = 0.0;  // max deviation / mismatch count, suite-dependent
  std::string detail;
};

/// Random valid scenario for cross-checking suites.  Offsets are drawn on
/// the half-carrier-cycle grid 1/(2*carrier_cycles) so the passband
/// demodulator's double-frequency terms integrate out exactly; pass
/// carrier_cycles = 0 for unconstrained offsets.
CollisionScenario random_scenario(int n, Eigen::Index packet_len, Seed seed,
                                  int carrier_cycles = 0,
                                  bool complex_channels = true);

/// Max |passband_oracle - virtual_encode| over random scenarios
/// (n in {2,3}, random offsets and complex channels).
ValidationReport run_passband_agreement(int scenarios, int carrier_cycles,
                                        int grid_points_per_symbol,
                                        double tolerance, Seed seed);

/// viterbi_decode(whitened) against exhaustive_ml_oracle on random noisy
/// two-packet instances (L = 6, Eb/N0 cycling through {0, 4, 8} dB).
ValidationReport run_oracle_equivalence(int trials, Seed seed);

/// Noiseless decode(encode(x)) identity over random scenarios,
/// n in {2, 3, 4}, random offsets and complex channels.
ValidationReport run_roundtrip_suite(int scenarios, Eigen::Index packet_len,
                                     Seed seed);

}  // namespace cresm
