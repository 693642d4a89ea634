#pragma once

#include "cresm/types.hpp"

namespace cresm {

/// Uniform random bits, deterministic given the seed (mt19937_64 engine,
/// one bit per draw from the top bit of the engine output).
BitStream random_bits(Eigen::Index length, Seed seed);

/// BPSK map: bit 0 -> +1, bit 1 -> -1.
SymbolStream bpsk_modulate(const BitStream& bits);

/// Sign decision: value >= 0 -> bit 0, value < 0 -> bit 1.
BitStream bpsk_demodulate_hard(const Eigen::ArrayXd& estimates);

/// Coherent-BPSK bit error probability Q(sqrt(2 * 10^(ebn0_db/10))).
double analytic_bpsk_ber(double ebn0_db);

/// Gaussian tail probability Q(x).
double q_function(double x);

}  // namespace cresm
