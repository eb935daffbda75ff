#pragma once

// Grid sweeps behind the command-line tool. Each command writes a table to
// a stream: CSV with '#'-prefixed metadata lines, or a JSON document.

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mixmetro/probes.hpp"

namespace mixmetro {

inline constexpr std::string_view kToolVersion = "0.1.0";
inline constexpr int kMaxClosedFormQubits = 1000;

/// Invalid configuration; the tool exits with status 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Request beyond what the dense routines allow; exit status 3.
class ComputeLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { csv, json };

struct SweepConfig {
  std::vector<Strategy> strategies;
  std::vector<int> ns;
  double p_min = 0.0;
  double p_max = 1.0;
  int p_steps = 20;  // intervals; the grid has p_steps + 1 points
  std::uint64_t seed = 42;
  std::uint64_t trials = 1000;
  OutputFormat format = OutputFormat::csv;
  int spectral_max = 8;
  unsigned workers = 1;  // never affects output
};

/// Inclusive grid p_min + i (p_max - p_min) / p_steps, i = 0..p_steps; a
/// single point when p_min == p_max.
std::vector<double> p_grid(const SweepConfig& config);

/// Shortest representation that round-trips (at most 17 significant digits);
/// "inf" / "nan" for non-finite values.
std::string format_double(double x);

/// Parses "S,Cl,Q1" style lists; throws ConfigError.
std::vector<Strategy> parse_strategy_list(std::string_view text);
/// Parses "10", "2,4,6" or "2..6"; throws ConfigError.
std::vector<int> parse_n_list(std::string_view text);

/// Header: strategy,N,p,fisher_closed,fisher_spectral,delta_phi
void cmd_qfi(const SweepConfig& config, std::ostream& out);

/// Header: strategy,N,p,discord,classical,total,entangled,min_pt_eig
void cmd_correlations(const SweepConfig& config, std::ostream& out);

/// Header: strategy,N,p_star
void cmd_boundaries(const SweepConfig& config, std::ostream& out);

struct McSummary {
  double min_bits;
  double max_bits;
  double conjectured_bits;
  double upper_bound_bits;
};

/// One strategy (Q1 or Q2), one N <= 6 and one p. Samples table header
/// `trial,value_bits`; summary table header `min,max,conjectured,upper_bound`.
/// In JSON mode both go to `samples` as one document and `summary` is
/// unused.
McSummary cmd_discord_mc(const SweepConfig& config, std::ostream& samples,
                         std::ostream& summary);

}  // namespace mixmetro
