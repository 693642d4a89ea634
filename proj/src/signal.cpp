#include "cresm/signal.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace cresm {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

Seed derive_seed(Seed parent, std::uint64_t index) {
  return Seed{splitmix64(parent.value ^ splitmix64(index))};
}

BitStream random_bits(Eigen::Index length, Seed seed) {
  if (length < 0) throw std::invalid_argument("random_bits: negative length");
  std::mt19937_64 engine(seed.value);
  BitStream bits(length);
  for (Eigen::Index i = 0; i < length; ++i)
    bits[i] = static_cast<int>(engine() >> 63);
  return bits;
}

SymbolStream bpsk_modulate(const BitStream& bits) {
  SymbolStream symbols(bits.size());
  for (Eigen::Index i = 0; i < bits.size(); ++i) {
    if (bits[i] != 0 && bits[i] != 1)
      throw std::invalid_argument("bpsk_modulate: bit outside {0,1}");
    symbols[i] = bits[i] == 0 ? 1.0 : -1.0;
  }
  return symbols;
}

BitStream bpsk_demodulate_hard(const Eigen::ArrayXd& estimates) {
  BitStream bits(estimates.size());
  for (Eigen::Index i = 0; i < estimates.size(); ++i)
    bits[i] = estimates[i] >= 0.0 ? 0 : 1;  // tie at 0 decides bit 0
  return bits;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double analytic_bpsk_ber(double ebn0_db) {
  const double gamma = std::pow(10.0, ebn0_db / 10.0);
  return 0.5 * std::erfc(std::sqrt(gamma));
}

}  // namespace cresm
