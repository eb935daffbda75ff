// mixmetro: sweeps of Fisher information, correlations, entanglement
// boundaries and Monte Carlo discord for mixed-state phase-estimation probes.
//
// Exit status: 0 success, 1 verification failure, 2 bad configuration,
// 3 compute limit exceeded.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mixmetro/parallel.hpp"
#include "mixmetro/sweep.hpp"
#include "mixmetro/verify.hpp"

namespace {

using namespace mixmetro;

struct RawOptions {
  std::optional<std::string> strategies;
  std::optional<std::string> n;
  double p_min = 0.0;
  double p_max = 1.0;
  int p_steps = 20;
  std::uint64_t seed = 42;
  std::uint64_t trials = 1000;
  std::string format = "csv";
  std::string out;
  std::string summary_out;
  int spectral_max = 8;
  unsigned workers = default_workers();
  std::string level = "quick";
};

void add_sweep_options(CLI::App& cmd, RawOptions& o, bool with_p, bool with_mc) {
  cmd.add_option("--strategies", o.strategies, "Comma-separated subset of S,Cl,Q1,Q2");
  cmd.add_option("--n", o.n, "Qubit counts: 10, 2,4,6 or 2..12");
  if (with_p) {
    cmd.add_option("--p-min", o.p_min, "Lower end of the p grid")->capture_default_str();
    cmd.add_option("--p-max", o.p_max, "Upper end of the p grid")->capture_default_str();
    cmd.add_option("--p-steps", o.p_steps, "Grid intervals (points = steps + 1)")
        ->capture_default_str();
  }
  if (with_mc) {
    cmd.add_option("--seed", o.seed, "Sampling seed")->capture_default_str();
    cmd.add_option("--trials", o.trials, "Number of random measurement bases")
        ->capture_default_str();
  }
  cmd.add_option("--format", o.format, "csv or json")->capture_default_str();
  cmd.add_option("--out", o.out, "Output path (default: standard output)");
  cmd.add_option("--workers", o.workers, "Worker threads (never changes output)");
}

SweepConfig to_config(const RawOptions& o, std::string_view default_strategies,
                      std::string_view default_n) {
  SweepConfig c;
  c.strategies = parse_strategy_list(o.strategies ? *o.strategies : default_strategies);
  c.ns = parse_n_list(o.n ? *o.n : default_n);
  c.p_min = o.p_min;
  c.p_max = o.p_max;
  c.p_steps = o.p_steps;
  c.seed = o.seed;
  c.trials = o.trials;
  if (o.format == "csv") {
    c.format = OutputFormat::csv;
  } else if (o.format == "json") {
    c.format = OutputFormat::json;
  } else {
    throw ConfigError("--format must be csv or json");
  }
  c.spectral_max = o.spectral_max;
  c.workers = std::max(1u, o.workers);
  return c;
}

template <class Fn>
void with_output(const std::string& path, Fn fn) {
  if (path.empty()) {
    fn(std::cout);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file " + path);
  fn(file);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mixed-state phase estimation: probe states, Fisher information and correlations"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  RawOptions o;
  auto* qfi = app.add_subcommand("qfi", "Fisher information and phase uncertainty over a grid");
  add_sweep_options(*qfi, o, true, false);
  qfi->add_option("--spectral-max", o.spectral_max,
                  "Largest N for the brute-force spectral column")
      ->capture_default_str();

  auto* corr = app.add_subcommand("correlations", "Discord, classical and total correlations");
  add_sweep_options(*corr, o, true, false);

  auto* mc = app.add_subcommand("discord-mc", "Random local-basis dephasing samples");
  add_sweep_options(*mc, o, true, true);
  mc->add_option("--summary-out", o.summary_out,
                 "Summary table path (default: standard output after the samples)");

  auto* bounds = app.add_subcommand("boundaries", "Entanglement boundaries p* for Q1 and Q2");
  add_sweep_options(*bounds, o, false, false);

  auto* verify = app.add_subcommand("verify", "Cross-check closed forms against brute force");
  verify->add_option("--level", o.level, "quick or full")
      ->check(CLI::IsMember({"quick", "full"}))
      ->capture_default_str();
  verify->add_option("--workers", o.workers, "Worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (qfi->parsed()) {
      const auto c = to_config(o, "S,Cl,Q1,Q2", "10");
      with_output(o.out, [&](std::ostream& out) { cmd_qfi(c, out); });
    } else if (corr->parsed()) {
      const auto c = to_config(o, "S,Cl,Q1,Q2", "10");
      with_output(o.out, [&](std::ostream& out) { cmd_correlations(c, out); });
    } else if (bounds->parsed()) {
      const auto c = to_config(o, "Q1,Q2", "2..12");
      with_output(o.out, [&](std::ostream& out) { cmd_boundaries(c, out); });
    } else if (mc->parsed()) {
      auto raw = o;
      // A single p: --p-min alone selects it.
      if (mc->count("--p-max") == 0) raw.p_max = raw.p_min;
      if (mc->count("--p-min") == 0 && mc->count("--p-max") == 0) raw.p_min = raw.p_max = 0.5;
      const auto c = to_config(raw, "Q1", "5");
      with_output(o.out, [&](std::ostream& samples) {
        if (o.summary_out.empty() || c.format == OutputFormat::json) {
          cmd_discord_mc(c, samples, samples);
        } else {
          with_output(o.summary_out,
                      [&](std::ostream& summary) { cmd_discord_mc(c, samples, summary); });
        }
      });
    } else if (verify->parsed()) {
      const auto level = o.level == "full" ? VerifyLevel::full : VerifyLevel::quick;
      const auto report = run_verification(level, qfi_closed, std::max(1u, o.workers));
      print_report(report, std::cout);
      return report.ok() ? 0 : 1;
    }
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ComputeLimitError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
