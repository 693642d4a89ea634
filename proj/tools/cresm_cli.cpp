#include "cresm/baselines.hpp"
#include "cresm/channel.hpp"
#include "cresm/experiment.hpp"
#include "cresm/signal.hpp"
#include "cresm/trellis.hpp"
#include "cresm/validation.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <numbers>

namespace {

using namespace cresm;

CollisionScenario scenario_from_flags(int n, const std::vector<double>& deltas,
                                      double phase_deg, double ratio,
                                      long packet_len) {
  if (n == 2) {
    CollisionScenario s =
        make_two_packet_scenario(deltas.at(0), packet_len, phase_deg, ratio);
    return s;
  }
  CollisionScenario s;
  s.n = n;
  s.packet_len = packet_len;
  s.offsets = Eigen::Map<const Eigen::ArrayXd>(deltas.data(),
                                               static_cast<long>(deltas.size()));
  s.channels = ComplexArray::Constant(n, 1.0);
  if (phase_deg != 0.0)
    s.channels[1] = std::polar(ratio, phase_deg * std::numbers::pi / 180.0);
  return s;
}

void print_stream(const std::string& label, const SymbolStream& s) {
  std::cout << label << ":";
  for (Eigen::Index i = 0; i < s.size(); ++i)
    std::cout << ' ' << (s[i] > 0 ? "+1" : "-1");
  std::cout << '\n';
}

void print_complex(std::ostream& out, Complex z) {
  out << z.real();
  if (z.imag() != 0.0)
    out << (z.imag() < 0 ? "" : "+") << z.imag() << "j";
}

int cmd_decode(int n, const std::vector<double>& deltas, double phase_deg,
               double ratio, long packet_len, double ebn0_db,
               std::uint64_t seed) {
  CollisionScenario scenario =
      scenario_from_flags(n, deltas, phase_deg, ratio, packet_len);
  scenario.noise_density = std::pow(10.0, -ebn0_db / 10.0);
  scenario.validate();

  const Seed master{seed};
  std::vector<SymbolStream> tx(n);
  for (int j = 0; j < n; ++j)
    tx[j] = bpsk_modulate(
        random_bits(packet_len, derive_seed(master, static_cast<std::uint64_t>(j))));
  for (int j = 0; j < n; ++j)
    print_stream("tx[" + std::to_string(j) + "]", tx[j]);

  const SubSampleStream y =
      add_noise(virtual_encode(scenario, tx), scenario, derive_seed(master, 7));
  std::cout << "sub-samples:";
  for (Eigen::Index m = 0; m < y.size(); ++m) {
    std::cout << ' ';
    print_complex(std::cout, y.values[m]);
  }
  std::cout << '\n';

  auto report = [&](const std::string& name,
                    const std::vector<SymbolStream>& rx, double metric) {
    long errors = 0;
    for (int j = 0; j < n; ++j)
      for (Eigen::Index k = 0; k < packet_len; ++k)
        if (rx[j][k] != tx[j][k]) ++errors;
    std::cout << "== " << name << " (bit errors: " << errors;
    if (metric >= 0) std::cout << ", path metric: " << metric;
    std::cout << ")\n";
    for (int j = 0; j < n; ++j)
      print_stream("rx[" + std::to_string(j) + "]", rx[j]);
  };

  const VirtualTrellis trellis = build_trellis(scenario);
  const DecodeResult vit = viterbi_decode(y, trellis, Metric::kWhitened);
  report("viterbi (whitened)", vit.streams, vit.path_metric);
  if (n == 2) {
    const DecodeResult succ = successive_decode(y, scenario);
    report("successive", succ.streams, succ.path_metric);
    report("sic", sic_decode(y, scenario), -1.0);
  }
  return 0;
}

int cmd_trellis(int n, const std::vector<double>& deltas, double phase_deg,
                double ratio, long packet_len) {
  const CollisionScenario scenario =
      scenario_from_flags(n, deltas, phase_deg, ratio, packet_len);
  scenario.validate();
  const VirtualTrellis trellis = build_trellis(scenario);

  std::cout << "n=" << trellis.n << " L=" << trellis.packet_len
            << " states=" << trellis.num_states()
            << " stages=" << trellis.stage_count() << "\n";
  std::cout << "sub-interval lengths:";
  for (int i = 0; i < trellis.n; ++i) std::cout << ' ' << trellis.deltas[i];
  std::cout << "\nstate bit i set means v[m-1-i] = -1\n";
  for (Eigen::Index m = 0; m < trellis.stage_count(); ++m) {
    const bool tail = trellis.tail_stage(m);
    std::cout << "stage " << m << " (delta=" << trellis.deltas[m % trellis.n]
              << (tail ? ", tail pad" : "") << ")\n";
    for (int s = 0; s < trellis.num_states(); ++s) {
      for (int u = 0; u < (tail ? 1 : 2); ++u) {
        std::cout << "  state " << s << " --"
                  << (tail ? "0" : (u ? "-1" : "+1")) << "--> state "
                  << trellis.next_state(s, u) << "  out=";
        print_complex(std::cout, trellis.branch_output(m, s, u));
        std::cout << '\n';
      }
    }
  }
  return 0;
}

int cmd_validate(std::uint64_t seed) {
  int failures = 0;
  auto show = [&](const ValidationReport& r) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.detail << '\n';
    if (!r.passed) ++failures;
  };
  show(run_roundtrip_suite(100, 64, Seed{seed}));
  show(run_oracle_equivalence(1000, derive_seed(Seed{seed}, 1)));
  show(run_passband_agreement(100, 100, 10'000, 1e-3,
                              derive_seed(Seed{seed}, 2)));
  return failures == 0 ? 0 : 2;
}

int cmd_sweep(const std::string& config_path, const SweepConfig& overrides,
              const std::vector<std::string>& set_keys) {
  SweepConfig config;
  if (!config_path.empty()) config = load_sweep_config(config_path);
  auto overridden = [&](const std::string& key) {
    return std::find(set_keys.begin(), set_keys.end(), key) != set_keys.end();
  };
  if (overridden("schemes")) config.schemes = overrides.schemes;
  if (overridden("deltas")) config.deltas = overrides.deltas;
  if (overridden("phases")) config.phases = overrides.phases;
  if (overridden("snr")) config.snrs = overrides.snrs;
  if (overridden("packet_len")) config.packet_len = overrides.packet_len;
  if (overridden("min_errors")) config.min_errors = overrides.min_errors;
  if (overridden("max_bits")) config.max_bits = overrides.max_bits;
  if (overridden("seed")) config.seed = overrides.seed;
  if (overridden("output")) config.output = overrides.output;
  if (overridden("threads")) config.threads = overrides.threads;
  if (config.schemes.empty()) throw std::runtime_error("scheme list is empty");
  if (config.snrs.empty()) throw std::runtime_error("snr grid is empty");

  const std::vector<BerPoint> points = run_sweep(config);
  std::ofstream out(config.output);
  if (!out)
    throw std::runtime_error("cannot open output '" + config.output + "'");
  write_csv(out, points);
  std::cout << "wrote " << points.size() << " rows to " << config.output
            << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CRESM collision-resolution simulator"};
  app.require_subcommand(1);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run an experiment grid, write CSV");
  std::string config_path;
  SweepConfig ov;
  std::vector<std::string> scheme_names;
  std::string snr_spec;
  sweep->add_option("config", config_path, "key-value config file");
  sweep->add_option("--schemes", scheme_names, "scheme list")->delimiter(',');
  sweep->add_option("--deltas", ov.deltas, "offset list")->delimiter(',');
  sweep->add_option("--phases", ov.phases, "phase list, degrees")->delimiter(',');
  sweep->add_option("--snr", snr_spec, "Eb/N0 grid: list or start:step:stop");
  sweep->add_option("--packet_len", ov.packet_len);
  sweep->add_option("--min_errors", ov.min_errors);
  sweep->add_option("--max_bits", ov.max_bits);
  sweep->add_option("--seed", ov.seed);
  sweep->add_option("--output", ov.output, "CSV path");
  sweep->add_option("--threads", ov.threads);

  // decode / trellis shared flags
  int n = 2;
  std::vector<double> deltas{0.5};
  double phase_deg = 0.0, ratio = 1.0, ebn0_db = 8.0;
  long packet_len = 8;
  std::uint64_t seed = 1;
  auto add_scenario_flags = [&](CLI::App* cmd) {
    cmd->add_option("--n", n, "colliding packets (2-4)");
    cmd->add_option("--delta", deltas, "arrival offsets (n-1 values)")
        ->delimiter(',');
    cmd->add_option("--phase", phase_deg, "relative carrier phase, degrees");
    cmd->add_option("--ratio", ratio, "amplitude ratio |h_B/h_A|");
    cmd->add_option("--packet_len", packet_len);
  };
  auto* decode = app.add_subcommand("decode", "single-shot decode demo");
  add_scenario_flags(decode);
  decode->add_option("--ebn0", ebn0_db, "Eb/N0 in dB");
  decode->add_option("--seed", seed);

  auto* trellis_cmd =
      app.add_subcommand("trellis", "dump the virtual trellis as text");
  add_scenario_flags(trellis_cmd);

  auto* validate = app.add_subcommand(
      "validate", "run oracle-equivalence and passband-oracle suites");
  std::uint64_t validate_seed = 20260823;
  validate->add_option("--seed", validate_seed);

  try {
    app.parse(argc, argv);
    if (sweep->parsed()) {
      std::vector<std::string> set_keys;
      for (const auto* opt : sweep->get_options()) {
        const std::string name = opt->get_name();
        if (opt->count() > 0 && name.rfind("--", 0) == 0)
          set_keys.push_back(name.substr(2));
      }
      for (const auto& name : scheme_names)
        ov.schemes.push_back(scheme_from_string(name));
      if (!snr_spec.empty()) {
        std::istringstream fake("snr = " + snr_spec + "\nschemes = bpsk\n");
        // reuse the config parser for the grid syntax
        ov.snrs = parse_sweep_config(fake).snrs;
      }
      return cmd_sweep(config_path, ov, set_keys);
    }
    if (decode->parsed())
      return cmd_decode(n, deltas, phase_deg, ratio, packet_len, ebn0_db,
                        seed);
    if (trellis_cmd->parsed())
      return cmd_trellis(n, deltas, phase_deg, ratio, packet_len);
    if (validate->parsed()) return cmd_validate(validate_seed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
