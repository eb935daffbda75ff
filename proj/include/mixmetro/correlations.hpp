#pragma once

// Entanglement boundaries, conjectured discord, Monte Carlo discord sampling
// and classical/total correlations of the probe states. All quantities are
// in bits.

#include <cstdint>
#include <vector>

#include "mixmetro/probes.hpp"
#include "mixmetro/qstate.hpp"

namespace mixmetro {

/// Smallest partial-transpose eigenvalue of the Q1/Q2 probes in closed form,
/// scaled by 2 (the sign is what matters):
///   Q1: lambda1^(N-1) - p lambda0^(N-1)
///   Q2: lambda0^a lambda1^b + lambda0^b lambda1^a - lambda0^N + lambda1^N
///       with a = floor(N/2), b = ceil(N/2)
/// Throws std::invalid_argument for S and Cl.
double min_pt_eigenvalue_closed(Strategy s, int num_qubits, double p);

/// Smallest eigenvalue of every partial transpose of S and Cl probes:
/// lambda1^N (both states are invariant under any partial transpose).
double product_min_pt_eigenvalue(int num_qubits, double p);

/// p* where min_pt_eigenvalue_closed changes sign; separable for p <= p*.
double entanglement_boundary(Strategy s, int num_qubits);

/// Minimum over all 2^(N-1) - 1 bipartitions of the smallest eigenvalue of
/// the partial transpose. N <= 8.
double min_pt_eigenvalue_brute(const DensityOperator& rho);

inline constexpr int kMaxBrutePtQubits = 8;

/// Probe dephased in the computational basis.
DensityOperator closest_classical_state(Strategy s, int num_qubits, double p);

/// Q1: 1 - S(rho). Q2: 2 sum_m C(N-1,m) h((a_m + b_m)/2) - N S(rho).
double conjectured_discord(Strategy s, int num_qubits, double p);

/// S(rho || chi_B) evaluated as -S(rho) - tr(rho log2 chi_B).
double dephasing_relative_entropy(const DensityOperator& rho,
                                  const ProductBasis& basis);

/// Haar-random 2x2 unitary keyed by (seed, trial, qubit).
Matrix2c haar_unitary_2x2(std::uint64_t seed, std::uint64_t trial, int qubit);

/// Trial 0 is the computational basis; later trials draw a Haar local
/// unitary per qubit.
ProductBasis mc_basis(int num_qubits, std::uint64_t seed, std::uint64_t trial);

struct McDiscordSample {
  std::uint64_t seed;
  std::uint64_t trial;
  ProductBasis basis;
  double value_bits;  // S(chi_B) - S(rho)
};

struct McDiscordResult {
  std::vector<McDiscordSample> samples;
  double min_bits;
  double max_bits;
  double conjectured_bits;
  double upper_bound_bits;  // N - S(probe)
};

inline constexpr int kMaxMcQubits = 6;

/// Samples are independent of `workers`.
McDiscordResult discord_mc(Strategy s, int num_qubits, double p,
                           std::uint64_t trials, std::uint64_t seed,
                           unsigned workers = 1);

double classical_correlations(Strategy s, int num_qubits, double p);

struct CorrelationReport {
  Strategy strategy;
  int num_qubits;
  double p;
  double discord_bits;
  double classical_bits;
  double total_bits;
  bool entangled;
  double min_pt_eigenvalue;
};

CorrelationReport correlation_report(Strategy s, int num_qubits, double p);

}  // namespace mixmetro
