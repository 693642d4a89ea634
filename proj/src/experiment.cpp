#include "cresm/experiment.hpp"

#include "cresm/baselines.hpp"
#include "cresm/channel.hpp"
#include "cresm/signal.hpp"
#include "cresm/trellis.hpp"

#include <algorithm>
#include <cmath>
#include <charconv>
#include <fstream>
#include <future>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cresm {

std::string to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::kCresmViterbi: return "cresm-viterbi";
    case Scheme::kCresmSuccessive: return "cresm-successive";
    case Scheme::kGCresm: return "g-cresm";
    case Scheme::kSic: return "sic";
    case Scheme::kBpsk: return "bpsk";
  }
  throw std::logic_error("to_string: bad scheme");
}

Scheme scheme_from_string(const std::string& name) {
  if (name == "cresm-viterbi") return Scheme::kCresmViterbi;
  if (name == "cresm-successive") return Scheme::kCresmSuccessive;
  if (name == "g-cresm") return Scheme::kGCresm;
  if (name == "sic") return Scheme::kSic;
  if (name == "bpsk") return Scheme::kBpsk;
  throw std::runtime_error("unknown scheme '" + name + "'");
}

CollisionScenario make_two_packet_scenario(double delta,
                                           Eigen::Index packet_len,
                                           double phase_deg,
                                           double amplitude_ratio) {
  CollisionScenario scenario;
  scenario.n = 2;
  scenario.offsets = Eigen::ArrayXd::Constant(1, delta);
  scenario.channels = ComplexArray(2);
  scenario.channels[0] = 1.0;
  scenario.channels[1] =
      phase_deg == 0.0
          ? Complex(amplitude_ratio, 0.0)
          : std::polar(amplitude_ratio,
                       phase_deg * std::numbers::pi / 180.0);
  scenario.packet_len = packet_len;
  return scenario;
}

namespace {

double relative_phase_deg(const CollisionScenario& scenario) {
  if (scenario.n != 2) return 0.0;
  const double rad = std::arg(scenario.channels[1] / scenario.channels[0]);
  const double deg = rad * 180.0 / std::numbers::pi;
  return std::abs(deg) < 1e-12 ? 0.0 : deg;
}

void check_pairing(Scheme scheme, const CollisionScenario& scenario) {
  switch (scheme) {
    case Scheme::kSic:
    case Scheme::kCresmSuccessive:
    case Scheme::kGCresm:
      if (scenario.n != 2)
        throw std::invalid_argument(to_string(scheme) +
                                    " requires a two-packet scenario");
      break;
    case Scheme::kCresmViterbi:
      if (!scenario.real_channels())
        throw std::invalid_argument(
            "cresm-viterbi expects real positive channels; use g-cresm for "
            "complex coefficients");
      break;
    case Scheme::kBpsk:
      break;
  }
}

}  // namespace

BerPoint run_ber_point(Scheme scheme, const CollisionScenario& scenario,
                       double ebn0_db, const MonteCarloConfig& mc) {
  if (mc.min_errors < 1)
    throw std::invalid_argument("run_ber_point: min_errors must be >= 1");
  if (mc.max_bits < scenario.packet_len)
    throw std::invalid_argument("run_ber_point: max_bits < packet_len");
  check_pairing(scheme, scenario);

  BerPoint point;
  point.scheme = scheme;
  point.ebn0_db = ebn0_db;
  point.packet_len = scenario.packet_len;
  point.seed = mc.seed.value;

  long long bits = 0, errors = 0;
  if (scheme == Scheme::kBpsk) {
    point.n = 1;
    for (std::uint64_t trial = 0;
         errors < mc.min_errors && bits + scenario.packet_len <= mc.max_bits;
         ++trial) {
      const TrialCount count = single_user_trial(
          ebn0_db, scenario.packet_len, derive_seed(mc.seed, trial));
      bits += count.bits;
      errors += count.errors;
    }
  } else {
    CollisionScenario run = scenario;
    run.noise_density = std::pow(10.0, -ebn0_db / 10.0);
    run.validate();
    point.n = run.n;
    point.delta = run.offsets[0];
    point.phase_deg = relative_phase_deg(run);
    const VirtualTrellis trellis = build_trellis(run);
    const Eigen::Index bits_per_trial = run.n * run.packet_len;

    for (std::uint64_t trial = 0;
         errors < mc.min_errors && bits + bits_per_trial <= mc.max_bits;
         ++trial) {
      const Seed trial_seed = derive_seed(mc.seed, trial);
      std::vector<SymbolStream> tx(run.n);
      for (int j = 0; j < run.n; ++j)
        tx[j] = bpsk_modulate(random_bits(
            run.packet_len, derive_seed(trial_seed, static_cast<std::uint64_t>(j))));
      const SubSampleStream y = add_noise(virtual_encode(run, tx), run,
                                          derive_seed(trial_seed, 0xabcdefULL));

      std::vector<SymbolStream> rx;
      switch (scheme) {
        case Scheme::kCresmViterbi:
        case Scheme::kGCresm:
          rx = viterbi_decode(y, trellis, Metric::kWhitened).streams;
          break;
        case Scheme::kCresmSuccessive:
          rx = successive_decode(y, run).streams;
          break;
        case Scheme::kSic:
          rx = sic_decode(y, run);
          break;
        default:
          break;
      }
      for (int j = 0; j < run.n; ++j)
        for (Eigen::Index k = 0; k < run.packet_len; ++k)
          if (rx[j][k] != tx[j][k]) ++errors;
      bits += bits_per_trial;
    }
  }

  point.bits = bits;
  point.errors = errors;
  point.ber = bits > 0 ? static_cast<double>(errors) / bits : 0.0;
  point.ci95 =
      bits > 0 ? 1.96 * std::sqrt(point.ber * (1.0 - point.ber) / bits) : 0.0;
  return point;
}

namespace {

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> values;
  // start:step:stop range form
  if (std::count(text.begin(), text.end(), ':') == 2) {
    double start, step, stop;
    char c1, c2;
    std::istringstream in(text);
    if (in >> start >> c1 >> step >> c2 >> stop && c1 == ':' && c2 == ':' &&
        step > 0) {
      for (double v = start; v <= stop + 1e-9; v += step)
        values.push_back(v);
      return values;
    }
    throw std::runtime_error("bad range '" + text + "'");
  }
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    std::size_t pos = 0;
    const double v = std::stod(token, &pos);
    while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
    if (pos != token.size())
      throw std::runtime_error("bad number '" + token + "'");
    values.push_back(v);
  }
  if (values.empty()) throw std::runtime_error("empty list");
  return values;
}

}  // namespace

SweepConfig parse_sweep_config(std::istream& in) {
  SweepConfig config;
  config.snrs.clear();
  std::string line;
  int line_no = 0;
  bool have_schemes = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;  // blank
    std::string value;
    std::getline(ls, value);
    // tolerate 'key = value' as well as 'key value'
    const auto eq = value.find('=');
    if (eq != std::string::npos) value.erase(0, eq + 1);
    value.erase(0, value.find_first_not_of(" \t"));
    const auto end = value.find_last_not_of(" \t\r");
    value.erase(end == std::string::npos ? 0 : end + 1);
    if (value.empty())
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": missing value for '" + key + "'");
    try {
      if (key == "schemes") {
        std::istringstream ss(value);
        std::string name;
        config.schemes.clear();
        while (std::getline(ss, name, ',')) {
          name.erase(0, name.find_first_not_of(" \t"));
          name.erase(name.find_last_not_of(" \t") + 1);
          config.schemes.push_back(scheme_from_string(name));
        }
        have_schemes = true;
      } else if (key == "deltas") {
        config.deltas = parse_number_list(value);
      } else if (key == "phases") {
        config.phases = parse_number_list(value);
      } else if (key == "snr") {
        config.snrs = parse_number_list(value);
      } else if (key == "packet_len") {
        config.packet_len = std::stoll(value);
      } else if (key == "min_errors") {
        config.min_errors = std::stoll(value);
      } else if (key == "max_bits") {
        config.max_bits = std::stoll(value);
      } else if (key == "seed") {
        config.seed = std::stoull(value);
      } else if (key == "output") {
        config.output = value;
      } else if (key == "threads") {
        config.threads = std::stoi(value);
      } else {
        throw std::runtime_error("unknown key '" + key + "'");
      }
    } catch (const std::runtime_error& e) {
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": " + e.what());
    } catch (const std::exception& e) {
      throw std::runtime_error("config line " + std::to_string(line_no) +
                               ": bad value '" + value + "' for '" + key +
                               "'");
    }
  }
  if (!have_schemes || config.schemes.empty())
    throw std::runtime_error("config: scheme list is empty");
  if (config.snrs.empty())
    throw std::runtime_error("config: snr grid is empty");
  return config;
}

SweepConfig load_sweep_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config '" + path + "'");
  return parse_sweep_config(in);
}

std::vector<BerPoint> run_sweep(const SweepConfig& config) {
  struct Job {
    Scheme scheme;
    double delta;
    double phase;
    double snr;
  };
  std::vector<Job> jobs;
  for (const Scheme scheme : config.schemes) {
    const bool uses_delta = scheme != Scheme::kBpsk;
    const bool uses_phase = scheme == Scheme::kGCresm;
    const std::vector<double> deltas =
        uses_delta ? config.deltas : std::vector<double>{0.0};
    const std::vector<double> phases =
        uses_phase ? config.phases : std::vector<double>{0.0};
    for (const double delta : deltas)
      for (const double phase : phases)
        for (const double snr : config.snrs)
          jobs.push_back({scheme, delta, phase, snr});
  }

  std::vector<BerPoint> points(jobs.size());
  auto run_job = [&](std::size_t i) {
    const Job& job = jobs[i];
    MonteCarloConfig mc;
    mc.min_errors = config.min_errors;
    mc.max_bits = config.max_bits;
    mc.seed = derive_seed(Seed{config.seed}, i);  // per-point seed
    if (job.scheme == Scheme::kBpsk) {
      CollisionScenario scenario;
      scenario.packet_len = config.packet_len;
      points[i] = run_ber_point(job.scheme, scenario, job.snr, mc);
    } else {
      points[i] = run_ber_point(
          job.scheme,
          make_two_packet_scenario(job.delta, config.packet_len, job.phase),
          job.snr, mc);
      points[i].phase_deg = job.phase;  // as requested, not via atan2
    }
  };

  unsigned workers = config.threads > 0
                         ? static_cast<unsigned>(config.threads)
                         : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, jobs.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs.size(); ++i) run_job(i);
  } else {
    std::atomic<std::size_t> cursor{0};
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t i = cursor.fetch_add(1); i < jobs.size();
             i = cursor.fetch_add(1))
          run_job(i);
      });
    for (auto& t : pool) t.join();
  }
  return points;
}

namespace {

std::string format_double(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);  // shortest round-trip form
}

}  // namespace

void write_csv(std::ostream& out, const std::vector<BerPoint>& points) {
  out << "scheme,n,delta,phase_deg,ebn0_db,packet_len,bits,errors,ber,ci95,"
         "seed\n";
  for (const BerPoint& p : points) {
    out << to_string(p.scheme) << ',' << p.n << ',' << format_double(p.delta)
        << ',' << format_double(p.phase_deg) << ','
        << format_double(p.ebn0_db) << ',' << p.packet_len << ',' << p.bits
        << ',' << p.errors << ',' << format_double(p.ber) << ','
        << format_double(p.ci95) << ',' << p.seed << '\n';
  }
}

std::vector<BerPoint> read_csv(std::istream& in) {
  std::vector<BerPoint> points;
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("csv: missing header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string field;
    auto next = [&]() {
      if (!std::getline(ls, field, ','))
        throw std::runtime_error("csv: truncated row '" + line + "'");
      return field;
    };
    BerPoint p;
    p.scheme = scheme_from_string(next());
    p.n = std::stoi(next());
    p.delta = std::stod(next());
    p.phase_deg = std::stod(next());
    p.ebn0_db = std::stod(next());
    p.packet_len = std::stoll(next());
    p.bits = std::stoll(next());
    p.errors = std::stoll(next());
    p.ber = std::stod(next());
    p.ci95 = std::stod(next());
    p.seed = std::stoull(next());
    points.push_back(p);
  }
  return points;
}

namespace {

double snr_at_target(const BerCurve& curve, double target, const char* name) {
  if (curve.size() < 2)
    throw std::invalid_argument(std::string("db_penalty: curve ") + name +
                                " needs at least 2 points");
  const double log_t = std::log10(target);
  double lo = 1.0, hi = 0.0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const BerPoint& a = curve[i];
    const BerPoint& b = curve[i + 1];
    if (!(b.ebn0_db > a.ebn0_db))
      throw std::invalid_argument("db_penalty: SNR axis must be increasing");
    if (a.ber <= 0.0 || b.ber <= 0.0) continue;
    lo = std::min({lo, a.ber, b.ber});
    hi = std::max({hi, a.ber, b.ber});
    const double la = std::log10(a.ber);
    const double lb = std::log10(b.ber);
    if ((la - log_t) * (lb - log_t) <= 0.0 && la != lb)
      return a.ebn0_db +
             (b.ebn0_db - a.ebn0_db) * (log_t - la) / (lb - la);
  }
  std::ostringstream msg;
  msg << "db_penalty: target " << target << " not bracketed by curve " << name
      << " (achievable BER range [" << lo << ", " << hi << "])";
  throw std::invalid_argument(msg.str());
}

}  // namespace

double db_penalty(const BerCurve& curve_a, const BerCurve& curve_b,
                  double target_ber) {
  return snr_at_target(curve_a, target_ber, "a") -
         snr_at_target(curve_b, target_ber, "b");
}

}  // namespace cresm
