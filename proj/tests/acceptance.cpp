// Acceptance suite: end-to-end checks of the simulator against its
// contractual numbers.  Prints one PASS/FAIL line per criterion and exits
// nonzero if any fail.

#include "cresm/baselines.hpp"
#include "cresm/channel.hpp"
#include "cresm/experiment.hpp"
#include "cresm/signal.hpp"
#include "cresm/trellis.hpp"
#include "cresm/validation.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>

using namespace cresm;

namespace {

int g_failures = 0;

void report(int id, bool passed, const std::string& text) {
  std::printf("%s criterion %d: %s\n", passed ? "PASS" : "FAIL", id,
              text.c_str());
  std::fflush(stdout);
  if (!passed) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

BerPoint measure(Scheme scheme, double delta, double phase_deg, double snr,
                 const MonteCarloConfig& mc, Eigen::Index packet_len = 256) {
  return run_ber_point(scheme,
                       make_two_packet_scenario(delta, packet_len, phase_deg),
                       snr, mc);
}

double proportion_z(const BerPoint& a, const BerPoint& b) {
  const double p = static_cast<double>(a.errors + b.errors) /
                   static_cast<double>(a.bits + b.bits);
  const double se = std::sqrt(p * (1.0 - p) *
                              (1.0 / a.bits + 1.0 / b.bits));
  return (a.ber - b.ber) / se;
}

// 1. Noiseless viterbi_decode(virtual_encode(x)) = x for 500 random
//    scenarios, n in {2,3,4}, L = 64, random offsets and complex channels.
void criterion_1() {
  const auto t0 = std::chrono::steady_clock::now();
  const ValidationReport r = run_roundtrip_suite(500, 64, Seed{101});
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "zero-noise round-trip exact in %d/%d scenarios (%.1fs)",
                r.trials - r.failures, r.trials, secs);
  report(1, r.passed && secs < 60.0, buf);
}

// 2. Viterbi(whitened) == exhaustive ML on 1000 noisy n=2, L=6 instances.
void criterion_2() {
  const auto t0 = std::chrono::steady_clock::now();
  const ValidationReport r = run_oracle_equivalence(1000, Seed{202});
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "ML-oracle equivalence in %d/%d noisy instances (%.1fs)",
                r.trials - r.failures, r.trials, secs);
  report(2, r.passed && secs < 60.0, buf);
}

// 3. Passband oracle vs analytic discretization, 100 random scenarios,
//    K = 100 carrier cycles, 1e4 grid points/symbol, deviation < 1e-3.
void criterion_3() {
  const ValidationReport r =
      run_passband_agreement(100, 100, 10'000, 1e-3, Seed{303});
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "passband-oracle agreement, max deviation %.3g (< 1e-3)",
                r.worst);
  report(3, r.passed, buf);
}

// 4. Measured single-user BPSK BER within 4 sigma of Q(sqrt(2 gamma)) at
//    {2,4,6} dB, 1e7 bits per point.
void criterion_4() {
  bool ok = true;
  std::string text = "single-user BPSK vs analytic:";
  for (double db : {2.0, 4.0, 6.0}) {
    long long bits = 0, errors = 0;
    for (std::uint64_t i = 0; i < 100; ++i) {
      const TrialCount c = single_user_trial(
          db, 100'000, derive_seed(Seed{404 + (std::uint64_t)db}, i));
      bits += c.bits;
      errors += c.errors;
    }
    const double expect = analytic_bpsk_ber(db);
    const double sigma = std::sqrt(expect * (1.0 - expect) / bits);
    const double measured = static_cast<double>(errors) / bits;
    const double dev = std::abs(measured - expect) / sigma;
    char buf[80];
    std::snprintf(buf, sizeof buf, " %gdB %.2f-sigma", db, dev);
    text += buf;
    ok = ok && dev < 4.0;
  }
  report(4, ok, text);
}

// 5. db_penalty(CRESM delta=0.5, BPSK, 1e-3) = 3.7 +- 0.7 dB, whitened
//    metric, 100-error stopping rule.
void criterion_5() {
  const auto t0 = std::chrono::steady_clock::now();
  MonteCarloConfig mc{100, 10'000'000, Seed{505}};
  BerCurve cresm, bpsk;
  for (double db = 4.0; db <= 11.0; db += 1.0) {
    mc.seed = derive_seed(Seed{505}, static_cast<std::uint64_t>(db));
    cresm.push_back(measure(Scheme::kCresmViterbi, 0.5, 0.0, db, mc));
  }
  for (double db = 3.0; db <= 10.0; db += 1.0) {
    mc.seed = derive_seed(Seed{606}, static_cast<std::uint64_t>(db));
    CollisionScenario single;
    single.packet_len = 256;
    bpsk.push_back(run_ber_point(Scheme::kBpsk, single, db, mc));
  }
  const double penalty = db_penalty(cresm, bpsk, 1e-3);
  const double secs = seconds_since(t0);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "CRESM(0.5) vs BPSK penalty at 1e-3: %.2f dB "
                "(required 3.7 +- 0.7, %.0fs)",
                penalty, secs);
  report(5, std::abs(penalty - 3.7) <= 0.7 && secs < 600.0, buf);
}

// 6. At 8 dB: BER(0.1) > BER(0.3) > BER(0.5) beyond 2 sigma, and BER(0.3)
//    vs BER(0.7) statistically tied.
void criterion_6() {
  const MonteCarloConfig mc{800, 10'000'000, Seed{707}};
  const BerPoint b01 = measure(Scheme::kCresmViterbi, 0.1, 0.0, 8.0, mc);
  const BerPoint b03 = measure(Scheme::kCresmViterbi, 0.3, 0.0, 8.0, mc);
  const BerPoint b05 = measure(Scheme::kCresmViterbi, 0.5, 0.0, 8.0, mc);
  const MonteCarloConfig mc_sym{4000, 10'000'000, Seed{708}};
  const BerPoint s03 = measure(Scheme::kCresmViterbi, 0.3, 0.0, 8.0, mc_sym);
  const BerPoint s07 = measure(Scheme::kCresmViterbi, 0.7, 0.0, 8.0, mc_sym);
  const double z13 = proportion_z(b01, b03);
  const double z35 = proportion_z(b03, b05);
  const double z37 = proportion_z(s03, s07);
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "delta ordering at 8 dB: BER %.2e > %.2e > %.2e "
                "(z=%.1f, %.1f); 0.3 vs 0.7 z=%.1f (tied)",
                b01.ber, b03.ber, b05.ber, z13, z35, z37);
  report(6, z13 > 2.0 && z35 > 2.0 && std::abs(z37) < 3.0, buf);
}

// 7. SIC error floor: BER(20 dB) >= 0.5 * BER(8 dB); noiseless first-user
//    floor at delta 0.5 equals 1/8 over >= 1e6 symbols.
void criterion_7() {
  const MonteCarloConfig mc{2000, 10'000'000, Seed{808}};
  const BerPoint at8 = measure(Scheme::kSic, 0.5, 0.0, 8.0, mc);
  const BerPoint at20 = measure(Scheme::kSic, 0.5, 0.0, 20.0, mc);

  CollisionScenario s = make_two_packet_scenario(0.5, 1000);
  long long bits = 0, errors = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const Seed ts = derive_seed(Seed{818}, t);
    std::vector<SymbolStream> tx{
        bpsk_modulate(random_bits(1000, derive_seed(ts, 0))),
        bpsk_modulate(random_bits(1000, derive_seed(ts, 1)))};
    const auto rx = sic_decode(virtual_encode(s, tx), s);
    for (Eigen::Index k = 0; k < 1000; ++k)
      if (rx[0][k] != tx[0][k]) ++errors;
    bits += 1000;
  }
  const double floor_ber = static_cast<double>(errors) / bits;
  const double sigma = std::sqrt(0.125 * 0.875 / bits);
  const bool floor_ok = std::abs(floor_ber - 0.125) < 4.0 * sigma;
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "SIC floor: BER %.3f @20dB vs %.3f @8dB; noiseless "
                "first-user BER %.4f (1/8 over %lld bits)",
                at20.ber, at8.ber, floor_ber, bits);
  report(7, at20.ber >= 0.5 * at8.ber && floor_ok, buf);
}

// 8. G-CRESM at theta=90, H=1 is at least as good as CRESM (theta=0) at
//    4 and 8 dB, delta 0.5.
void criterion_8() {
  bool ok = true;
  std::string text = "phase effect:";
  for (double db : {4.0, 8.0}) {
    const MonteCarloConfig mc{500, 10'000'000,
                              derive_seed(Seed{909}, (std::uint64_t)db)};
    const BerPoint cresm = measure(Scheme::kCresmViterbi, 0.5, 0.0, db, mc);
    const BerPoint gcresm = measure(Scheme::kGCresm, 0.5, 90.0, db, mc);
    const double z = proportion_z(cresm, gcresm);
    const bool better = z > 2.0 || (gcresm.ber <= cresm.ber);
    char buf[100];
    std::snprintf(buf, sizeof buf, " %gdB: %.2e vs %.2e (z=%.1f)", db,
                  gcresm.ber, cresm.ber, z);
    text += buf;
    ok = ok && better;
  }
  report(8, ok, text);
}

// 9. At 8 dB, delta 0.5: successive-decoder BER >= Viterbi BER at 4 sigma.
void criterion_9() {
  const MonteCarloConfig mc{1000, 10'000'000, Seed{1010}};
  const BerPoint viterbi = measure(Scheme::kCresmViterbi, 0.5, 0.0, 8.0, mc);
  const BerPoint successive =
      measure(Scheme::kCresmSuccessive, 0.5, 0.0, 8.0, mc);
  const double z = proportion_z(successive, viterbi);
  char buf[160];
  std::snprintf(buf, sizeof buf,
                "successive BER %.2e >= viterbi BER %.2e at 8 dB (z=%.1f)",
                successive.ber, viterbi.ber, z);
  report(9, z > 4.0, buf);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  if (g_failures > 0)
    std::printf("%d criterion(s) failed\n", g_failures);
  else
    std::printf("all criteria passed\n");
  return g_failures == 0 ? 0 : 1;
}
