#pragma once

// Probe states for the four preparation strategies, built three ways: by
// running the preparation circuit, from the closed-form block matrices, and
// as closed-form labelled eigensystems.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mixmetro/qstate.hpp"

namespace mixmetro {

enum class Strategy { standard, classical, quantum1, quantum2 };

inline constexpr Strategy kAllStrategies[] = {
    Strategy::standard, Strategy::classical, Strategy::quantum1,
    Strategy::quantum2};

/// "S", "Cl", "Q1", "Q2".
std::string_view to_string(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view tag);

/// Smallest register the strategy is defined on (1 for S, 2 otherwise).
int min_qubits(Strategy s);
/// Throws std::invalid_argument when N is below min_qubits(s).
void require_qubits(Strategy s, int num_qubits);

/// Single-qubit polarisation: rho = diag(lambda0, lambda1).
struct Mixedness {
  double p;
  double lambda0;
  double lambda1;

  /// Throws std::domain_error unless 0 <= p <= 1.
  static Mixedness from_p(double p);
  /// Von Neumann entropy of the single-qubit state, in bits.
  double qubit_entropy() const;
};

DensityOperator initial_qubit(double p);

/// Gate sequence in application order:
///   S  = H on every qubit
///   Cl = C, then H on every qubit
///   Q1 = H_1, then C
///   Q2 = C, then H_1, then C
/// where C is C-Not(1 -> i) for i = 2..N.
std::vector<Gate> probe_circuit(Strategy s, int num_qubits);

/// Runs probe_circuit on rho^{(x)N}.
DensityOperator prepare_probe(Strategy s, int num_qubits, double p);

/// Assembles the closed-form block matrices directly.
DensityOperator closed_form_density(Strategy s, int num_qubits, double p);

enum class Branch { none, plus, minus };

/// One degenerate eigenvalue family.
///
/// S:      m = number of |-> factors (0..N), multiplicity C(N, m).
/// Cl:     m = number of |-> factors on qubits 2..N (0..N-1); the branch is
///         the state of qubit 1 (|+> or |->); multiplicity C(N-1, m).
/// Q1, Q2: vectors (|0,chi> +/- |1,flip(chi)>)/sqrt2 with chi of weight m on
///         qubits 2..N (0..N-1); multiplicity C(N-1, m).
///
/// Degenerate members are indexed 0..multiplicity-1 by enumerating the
/// weight-m bitstrings in increasing (lexicographic) order.
struct SpectrumFamily {
  int m = 0;
  Branch branch = Branch::none;
  double eigenvalue = 0.0;
  std::uint64_t multiplicity = 0;
  std::function<ComplexVector(std::uint64_t)> eigenvector;
};

struct LabeledSpectrum {
  Strategy strategy;
  int num_qubits;
  std::vector<SpectrumFamily> families;

  /// sum of eigenvalue * multiplicity.
  double total_weight() const;
};

LabeledSpectrum closed_form_eigensystem(Strategy s, int num_qubits, double p);

/// index-th bitstring (as an integer on `length` bits) of Hamming weight
/// `weight`, in increasing order.
std::uint64_t nth_weight_bitstring(int length, int weight, std::uint64_t index);

}  // namespace mixmetro
