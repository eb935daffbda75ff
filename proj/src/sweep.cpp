#include "mixmetro/sweep.hpp"

#include <charconv>
#include <cmath>
#include <optional>
#include <ostream>

#include <fmt/format.h>
#include <json.hpp>

#include "mixmetro/correlations.hpp"
#include "mixmetro/fisher.hpp"
#include "mixmetro/parallel.hpp"

namespace mixmetro {

namespace {

using nlohmann::json;

enum class Command { qfi, correlations, boundaries, discord_mc };

std::string_view command_name(Command c) {
  switch (c) {
    case Command::qfi: return "qfi";
    case Command::correlations: return "correlations";
    case Command::boundaries: return "boundaries";
    case Command::discord_mc: return "discord-mc";
  }
  return "?";
}

std::string join_strategies(const std::vector<Strategy>& list) {
  std::string s;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) s += ',';
    s += to_string(list[i]);
  }
  return s;
}

std::string join_ns(const std::vector<int>& list) {
  std::string s;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(list[i]);
  }
  return s;
}

std::string_view format_name(OutputFormat f) {
  return f == OutputFormat::csv ? "csv" : "json";
}

void validate_common(const SweepConfig& c, Command cmd) {
  if (c.strategies.empty()) throw ConfigError("no strategies selected");
  if (c.ns.empty()) throw ConfigError("no N values selected");
  if (!(c.p_min >= 0.0 && c.p_min <= c.p_max && c.p_max <= 1.0)) {
    throw ConfigError(fmt::format("need 0 <= p_min <= p_max <= 1, got p_min={} p_max={}",
                                  c.p_min, c.p_max));
  }
  if (c.p_steps < 1) throw ConfigError("p_steps must be >= 1");
  for (int n : c.ns) {
    for (Strategy s : c.strategies) {
      if (n < min_qubits(s)) {
        throw ConfigError(fmt::format("strategy {} needs N >= {}, got {}", to_string(s),
                                      min_qubits(s), n));
      }
    }
    if (n > kMaxClosedFormQubits) {
      throw ComputeLimitError(
          fmt::format("N = {} exceeds the limit of {}", n, kMaxClosedFormQubits));
    }
  }
  if (cmd == Command::qfi &&
      (c.spectral_max < 0 || c.spectral_max > kMaxDenseQubits)) {
    throw ComputeLimitError(fmt::format("spectral_max = {} outside 0..{}", c.spectral_max,
                                        kMaxDenseQubits));
  }
  if (cmd == Command::boundaries || cmd == Command::discord_mc) {
    for (Strategy s : c.strategies) {
      if (s != Strategy::quantum1 && s != Strategy::quantum2) {
        throw ConfigError(fmt::format("{} accepts only Q1 and Q2, got {}",
                                      command_name(cmd), to_string(s)));
      }
    }
  }
}

json metadata_json(const SweepConfig& c, Command cmd) {
  json m;
  m["tool"] = fmt::format("mixmetro {}", kToolVersion);
  m["command"] = std::string(command_name(cmd));
  std::vector<std::string> strategies;
  for (Strategy s : c.strategies) strategies.emplace_back(to_string(s));
  m["strategies"] = strategies;
  m["n"] = c.ns;
  m["p_min"] = c.p_min;
  m["p_max"] = c.p_max;
  m["p_steps"] = c.p_steps;
  m["seed"] = c.seed;
  m["trials"] = c.trials;
  m["spectral_max"] = c.spectral_max;
  m["format"] = std::string(format_name(c.format));
  return m;
}

void write_csv_metadata(std::ostream& out, const SweepConfig& c, Command cmd) {
  out << "# tool=mixmetro " << kToolVersion << '\n'
      << "# command=" << command_name(cmd) << '\n'
      << "# strategies=" << join_strategies(c.strategies) << '\n'
      << "# n=" << join_ns(c.ns) << '\n'
      << "# p_min=" << format_double(c.p_min) << '\n'
      << "# p_max=" << format_double(c.p_max) << '\n'
      << "# p_steps=" << c.p_steps << '\n'
      << "# seed=" << c.seed << '\n'
      << "# trials=" << c.trials << '\n'
      << "# spectral_max=" << c.spectral_max << '\n'
      << "# format=" << format_name(c.format) << '\n';
}

json number_or_null(double x) {
  return std::isfinite(x) ? json(x) : json(nullptr);
}

struct GridPoint {
  Strategy strategy;
  int n;
  double p;
};

std::vector<GridPoint> grid_points(const SweepConfig& c) {
  const auto ps = p_grid(c);
  std::vector<GridPoint> points;
  for (Strategy s : c.strategies) {
    for (int n : c.ns) {
      for (double p : ps) points.push_back({s, n, p});
    }
  }
  return points;
}

}  // namespace

std::vector<double> p_grid(const SweepConfig& c) {
  if (!(c.p_min >= 0.0 && c.p_min <= c.p_max && c.p_max <= 1.0)) {
    throw ConfigError(fmt::format("need 0 <= p_min <= p_max <= 1, got p_min={} p_max={}",
                                  c.p_min, c.p_max));
  }
  if (c.p_steps < 1) throw ConfigError("p_steps must be >= 1");
  if (c.p_min == c.p_max) return {c.p_min};
  std::vector<double> ps;
  ps.reserve(c.p_steps + 1);
  for (int i = 0; i <= c.p_steps; ++i) {
    ps.push_back(i == c.p_steps ? c.p_max
                                : c.p_min + (c.p_max - c.p_min) * i / c.p_steps);
  }
  return ps;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return fmt::format("{}", x);
}

std::vector<Strategy> parse_strategy_list(std::string_view text) {
  std::vector<Strategy> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string_view::npos
                                              ? std::string_view::npos
                                              : comma - start);
    const auto s = parse_strategy(token);
    if (!s) throw ConfigError(fmt::format("unknown strategy '{}'", token));
    out.push_back(*s);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

int parse_int(std::string_view token) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size()) {
    throw ConfigError(fmt::format("'{}' is not an integer", token));
  }
  return value;
}

}  // namespace

std::vector<int> parse_n_list(std::string_view text) {
  std::vector<int> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const auto token = text.substr(start, comma == std::string_view::npos
                                              ? std::string_view::npos
                                              : comma - start);
    const auto dots = token.find("..");
    if (dots != std::string_view::npos) {
      const int lo = parse_int(token.substr(0, dots));
      const int hi = parse_int(token.substr(dots + 2));
      if (lo > hi) throw ConfigError(fmt::format("empty range '{}'", token));
      if (lo < 1) throw ConfigError(fmt::format("N must be >= 1, got {}", lo));
      for (int n = lo; n <= hi; ++n) out.push_back(n);
    } else {
      out.push_back(parse_int(token));
    }
    if (out.back() < 1) throw ConfigError(fmt::format("N must be >= 1, got {}", out.back()));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

void cmd_qfi(const SweepConfig& c, std::ostream& out) {
  validate_common(c, Command::qfi);
  const auto points = grid_points(c);

  struct Row {
    double closed;
    std::optional<double> spectral;
    double delta_phi;
  };
  const auto rows = parallel_map(points.size(), c.workers, [&](std::size_t i) {
    const auto& pt = points[i];
    Row r;
    r.closed = qfi_closed(pt.strategy, pt.n, pt.p);
    if (pt.n <= c.spectral_max) r.spectral = qfi_spectral_probe(pt.strategy, pt.n, pt.p);
    r.delta_phi = phase_uncertainty(r.closed);
    return r;
  });

  if (c.format == OutputFormat::json) {
    json doc;
    doc["metadata"] = metadata_json(c, Command::qfi);
    doc["rows"] = json::array();
    for (std::size_t i = 0; i < points.size(); ++i) {
      doc["rows"].push_back({{"strategy", std::string(to_string(points[i].strategy))},
                             {"N", points[i].n},
                             {"p", points[i].p},
                             {"fisher_closed", rows[i].closed},
                             {"fisher_spectral", rows[i].spectral
                                                     ? json(*rows[i].spectral)
                                                     : json(nullptr)},
                             {"delta_phi", number_or_null(rows[i].delta_phi)}});
    }
    out << doc.dump(2) << '\n';
    return;
  }

  write_csv_metadata(out, c, Command::qfi);
  out << "strategy,N,p,fisher_closed,fisher_spectral,delta_phi\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    out << to_string(points[i].strategy) << ',' << points[i].n << ','
        << format_double(points[i].p) << ',' << format_double(rows[i].closed) << ','
        << (rows[i].spectral ? format_double(*rows[i].spectral) : std::string{}) << ','
        << format_double(rows[i].delta_phi) << '\n';
  }
}

void cmd_correlations(const SweepConfig& c, std::ostream& out) {
  validate_common(c, Command::correlations);
  const auto points = grid_points(c);
  const auto reports = parallel_map(points.size(), c.workers, [&](std::size_t i) {
    return correlation_report(points[i].strategy, points[i].n, points[i].p);
  });

  if (c.format == OutputFormat::json) {
    json doc;
    doc["metadata"] = metadata_json(c, Command::correlations);
    doc["rows"] = json::array();
    for (const auto& r : reports) {
      doc["rows"].push_back({{"strategy", std::string(to_string(r.strategy))},
                             {"N", r.num_qubits},
                             {"p", r.p},
                             {"discord", r.discord_bits},
                             {"classical", r.classical_bits},
                             {"total", r.total_bits},
                             {"entangled", r.entangled},
                             {"min_pt_eig", r.min_pt_eigenvalue}});
    }
    out << doc.dump(2) << '\n';
    return;
  }

  write_csv_metadata(out, c, Command::correlations);
  out << "strategy,N,p,discord,classical,total,entangled,min_pt_eig\n";
  for (const auto& r : reports) {
    out << to_string(r.strategy) << ',' << r.num_qubits << ',' << format_double(r.p) << ','
        << format_double(r.discord_bits) << ',' << format_double(r.classical_bits) << ','
        << format_double(r.total_bits) << ',' << (r.entangled ? "true" : "false") << ','
        << format_double(r.min_pt_eigenvalue) << '\n';
  }
}

void cmd_boundaries(const SweepConfig& c, std::ostream& out) {
  validate_common(c, Command::boundaries);
  struct Job {
    Strategy s;
    int n;
  };
  std::vector<Job> jobs;
  for (Strategy s : c.strategies) {
    for (int n : c.ns) {
      if (n < 2) throw ConfigError("boundaries need N >= 2");
      jobs.push_back({s, n});
    }
  }
  const auto roots = parallel_map(jobs.size(), c.workers, [&](std::size_t i) {
    return entanglement_boundary(jobs[i].s, jobs[i].n);
  });

  if (c.format == OutputFormat::json) {
    json doc;
    doc["metadata"] = metadata_json(c, Command::boundaries);
    doc["rows"] = json::array();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
      doc["rows"].push_back({{"strategy", std::string(to_string(jobs[i].s))},
                             {"N", jobs[i].n},
                             {"p_star", roots[i]}});
    }
    out << doc.dump(2) << '\n';
    return;
  }
  write_csv_metadata(out, c, Command::boundaries);
  out << "strategy,N,p_star\n";
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    out << to_string(jobs[i].s) << ',' << jobs[i].n << ',' << format_double(roots[i])
        << '\n';
  }
}

McSummary cmd_discord_mc(const SweepConfig& c, std::ostream& samples_out,
                         std::ostream& summary_out) {
  validate_common(c, Command::discord_mc);
  if (c.strategies.size() != 1 || c.ns.size() != 1) {
    throw ConfigError("discord-mc takes exactly one strategy and one N");
  }
  const auto ps = p_grid(c);
  if (ps.size() != 1) throw ConfigError("discord-mc takes a single p (p_min == p_max)");
  const int n = c.ns.front();
  if (n < 2) throw ConfigError("discord-mc needs N >= 2");
  if (n > kMaxMcQubits) {
    throw ComputeLimitError(fmt::format("discord-mc: N = {} exceeds {}", n, kMaxMcQubits));
  }
  if (c.trials < 1) throw ConfigError("trials must be >= 1");

  const auto result =
      discord_mc(c.strategies.front(), n, ps.front(), c.trials, c.seed, c.workers);
  const McSummary summary{result.min_bits, result.max_bits, result.conjectured_bits,
                          result.upper_bound_bits};

  if (c.format == OutputFormat::json) {
    json doc;
    doc["metadata"] = metadata_json(c, Command::discord_mc);
    doc["samples"] = json::array();
    for (const auto& s : result.samples) {
      doc["samples"].push_back({{"trial", s.trial}, {"value_bits", s.value_bits}});
    }
    doc["summary"] = {{"min", summary.min_bits},
                      {"max", summary.max_bits},
                      {"conjectured", summary.conjectured_bits},
                      {"upper_bound", summary.upper_bound_bits}};
    samples_out << doc.dump(2) << '\n';
    return summary;
  }

  write_csv_metadata(samples_out, c, Command::discord_mc);
  samples_out << "trial,value_bits\n";
  for (const auto& s : result.samples) {
    samples_out << s.trial << ',' << format_double(s.value_bits) << '\n';
  }
  write_csv_metadata(summary_out, c, Command::discord_mc);
  summary_out << "min,max,conjectured,upper_bound\n"
              << format_double(summary.min_bits) << ',' << format_double(summary.max_bits)
              << ',' << format_double(summary.conjectured_bits) << ','
              << format_double(summary.upper_bound_bits) << '\n';
  return summary;
}

}  // namespace mixmetro
