#include "cresm/baselines.hpp"

#include "cresm/channel.hpp"
#include "cresm/signal.hpp"

#include <doctest.h>

#include <cmath>

using namespace cresm;

namespace {

CollisionScenario two_packet(double delta, Eigen::Index len, double n0 = 0.0,
                             Complex hb = 1.0) {
  CollisionScenario s;
  s.n = 2;
  s.offsets = Eigen::ArrayXd::Constant(1, delta);
  s.channels = ComplexArray(2);
  s.channels << Complex(1.0, 0.0), hb;
  s.noise_density = n0;
  s.packet_len = len;
  return s;
}

struct Counts {
  long long bits = 0;
  long long errors = 0;
  double ber() const { return static_cast<double>(errors) / bits; }
};

// errors of the first-decoded source only
Counts sic_first_source(double delta, double n0, Complex hb, long trials,
                        Eigen::Index len, Seed seed) {
  Counts c;
  CollisionScenario s = two_packet(delta, len, n0, hb);
  for (long t = 0; t < trials; ++t) {
    const Seed ts = derive_seed(seed, static_cast<std::uint64_t>(t));
    std::vector<SymbolStream> tx{
        bpsk_modulate(random_bits(len, derive_seed(ts, 0))),
        bpsk_modulate(random_bits(len, derive_seed(ts, 1)))};
    const SubSampleStream y = add_noise(virtual_encode(s, tx), s,
                                        derive_seed(ts, 2));
    const auto rx = sic_decode(y, s);
    for (Eigen::Index k = 0; k < len; ++k)
      if (rx[0][k] != tx[0][k]) ++c.errors;
    c.bits += len;
  }
  return c;
}

// two-sample proportion z statistic
double proportion_z(Counts a, Counts b) {
  const double p =
      static_cast<double>(a.errors + b.errors) / (a.bits + b.bits);
  const double se =
      std::sqrt(p * (1.0 - p) * (1.0 / a.bits + 1.0 / b.bits));
  return (a.ber() - b.ber()) / se;
}

}  // namespace

TEST_CASE("single_user_trial: zero noise, zero errors") {
  const TrialCount c = single_user_trial(300.0, 10'000, Seed{3});
  CHECK(c.bits == 10'000);
  CHECK(c.errors == 0);
}

TEST_CASE("single_user_trial: 6 dB matches the analytic BER, 1e7 bits") {
  TrialCount total{0, 0};
  for (std::uint64_t i = 0; i < 100; ++i) {
    const TrialCount c = single_user_trial(6.0, 100'000, Seed{1000 + i});
    total.bits += c.bits;
    total.errors += c.errors;
  }
  const double expect = analytic_bpsk_ber(6.0);  // ~2.39e-3
  const double sigma = std::sqrt(expect * (1.0 - expect) / total.bits);
  const double measured = static_cast<double>(total.errors) / total.bits;
  CHECK(std::abs(measured - expect) < 4.0 * sigma);
}

TEST_CASE("single_user_trial: BER decreases across 0..8 dB") {
  double prev = 1.0;
  for (double db : {0.0, 2.0, 4.0, 6.0, 8.0}) {
    const TrialCount c = single_user_trial(db, 400'000, Seed{77});
    const double ber = static_cast<double>(c.errors) / c.bits;
    CHECK(ber < prev);
    prev = ber;
  }
}

TEST_CASE("sic: h_B = 0 behaves like single-user BPSK") {
  // |h| must stay positive; 1e-9 is interference 180 dB down
  const double ebn0 = 4.0;
  const double n0 = std::pow(10.0, -ebn0 / 10.0);
  const Counts sic = sic_first_source(0.5, n0, Complex(1e-9, 0.0), 3000, 64,
                                      Seed{909});
  TrialCount su{0, 0};
  for (std::uint64_t i = 0; i < 10; ++i) {
    const TrialCount c = single_user_trial(ebn0, 100'000, Seed{3000 + i});
    su.bits += c.bits;
    su.errors += c.errors;
  }
  const double z = proportion_z(sic, Counts{su.bits, su.errors});
  CHECK(std::abs(z) < 4.0);
}

TEST_CASE("sic: noiseless equal-power floor at delta=0.5 is 1/8") {
  const Counts c = sic_first_source(0.5, 0.0, 1.0, 4000, 256, Seed{11});
  REQUIRE(c.bits >= 1'000'000);
  const double sigma = std::sqrt(0.125 * 0.875 / c.bits);
  CHECK(std::abs(c.ber() - 0.125) < 4.0 * sigma);
}

TEST_CASE("sic: decode order B-first mirrors A-first") {
  CollisionScenario s = two_packet(0.3, 32, 0.1);
  std::vector<SymbolStream> tx{bpsk_modulate(random_bits(32, Seed{1})),
                               bpsk_modulate(random_bits(32, Seed{2}))};
  const SubSampleStream y = add_noise(virtual_encode(s, tx), s, Seed{3});
  CHECK_NOTHROW(sic_decode(y, s, SicConfig{1}));
  CHECK_THROWS_AS(sic_decode(y, s, SicConfig{2}), std::invalid_argument);
}
