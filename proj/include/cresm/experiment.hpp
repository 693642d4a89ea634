#pragma once

#include "cresm/types.hpp"

#include <iosfwd>
#include <string>

namespace cresm {

enum class Scheme {
  kCresmViterbi,
  kCresmSuccessive,
  kGCresm,
  kSic,
  kBpsk,
};

std::string to_string(Scheme scheme);
Scheme scheme_from_string(const std::string& name);

struct MonteCarloConfig {
  long long min_errors = 100;
  long long max_bits = 10'000'000;
  Seed seed{1};
};

struct BerPoint {
  Scheme scheme = Scheme::kBpsk;
  int n = 1;
  double delta = 0.0;
  double phase_deg = 0.0;
  double ebn0_db = 0.0;
  Eigen::Index packet_len = 0;
  long long bits = 0;
  long long errors = 0;
  double ber = 0.0;
  double ci95 = 0.0;
  std::uint64_t seed = 0;
};

/// BER points of one curve, at strictly increasing Eb/N0.
using BerCurve = std::vector<BerPoint>;

/// Two-packet scenario with h_A = 1 and h_B = H * exp(j*phase); the noise
/// density is filled in per point by run_ber_point.
CollisionScenario make_two_packet_scenario(double delta,
                                           Eigen::Index packet_len,
                                           double phase_deg = 0.0,
                                           double amplitude_ratio = 1.0);

/// Monte-Carlo BER of one scheme at one Eb/N0: repeats packet trials until
/// min_errors errors or max_bits bits, counting errors over all sources'
/// bits.  Deterministic given the seed (per-trial seeds derived from it).
BerPoint run_ber_point(Scheme scheme, const CollisionScenario& scenario,
                       double ebn0_db, const MonteCarloConfig& mc);

struct SweepConfig {
  std::vector<Scheme> schemes;
  std::vector<double> deltas{0.5};
  std::vector<double> phases{0.0};  // degrees; applies to g-cresm only
  std::vector<double> snrs;
  Eigen::Index packet_len = 256;
  long long min_errors = 100;
  long long max_bits = 10'000'000;
  std::uint64_t seed = 1;
  std::string output = "sweep.csv";
  int threads = 0;  // 0 = hardware concurrency
};

/// Parses the plain-text key-value config (`key = value`, '#' comments).
/// Throws std::runtime_error carrying the offending line number.
SweepConfig parse_sweep_config(std::istream& in);
SweepConfig load_sweep_config(const std::string& path);

/// Cartesian product of schemes x deltas x phases x SNR grid; the delta
/// axis is skipped for bpsk and the phase axis applies to g-cresm only.
/// Each point's seed derives from (config seed, point index), so parallel
/// and serial runs produce identical rows.
std::vector<BerPoint> run_sweep(const SweepConfig& config);

/// Columns: scheme,n,delta,phase_deg,ebn0_db,packet_len,bits,errors,ber,
/// ci95,seed.  Numbers are written round-trip exact.
void write_csv(std::ostream& out, const std::vector<BerPoint>& points);
std::vector<BerPoint> read_csv(std::istream& in);

/// SNR gap between two curves at a target BER, via log-linear interpolation
/// of log10(BER) against SNR; throws when either curve fails to bracket the
/// target, reporting its achievable BER range.
double db_penalty(const BerCurve& curve_a, const BerCurve& curve_b,
                  double target_ber);

}  // namespace cresm
