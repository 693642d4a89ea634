#pragma once

#include "cresm/types.hpp"

namespace cresm {

struct TrialCount {
  long long bits = 0;
  long long errors = 0;
};

/// One matched-filter BPSK packet over AWGN: y[k] = x[k] + w[k] with
/// Var(w) = N0/2, N0 = 10^(-ebn0_db/10); returns hard-decision error count.
TrialCount single_user_trial(double ebn0_db, Eigen::Index packet_len,
                             Seed seed);

struct SicConfig {
  int first = 0;  // source detected first (0 = earlier arrival)
};

/// Two-packet SIC that treats the interferer as noise: full-symbol matched
/// filter and hard decision for the first source, subtraction of its
/// reconstructed contribution, then matched filtering for the second.
std::vector<SymbolStream> sic_decode(const SubSampleStream& y,
                                     const CollisionScenario& scenario,
                                     const SicConfig& config = {});

}  // namespace cresm
