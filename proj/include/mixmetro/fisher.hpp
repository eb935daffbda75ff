#pragma once

// Quantum Fisher information of the probe states for the local phase
// generator G = sum_i |1_i><1_i|.

#include <functional>

#include "mixmetro/probes.hpp"
#include "mixmetro/qstate.hpp"

namespace mixmetro {

struct QfiResult {
  Strategy strategy;
  int num_qubits;
  double p;
  double fisher;
  double phase_uncertainty;  // 1/sqrt(fisher), +inf when fisher == 0
};

/// 4 sum_{j>k} (eta_j - eta_k)^2 / (eta_j + eta_k) |<Psi_j|G|Psi_k>|^2.
/// Pairs with eta_j + eta_k <= 1e-14 are skipped.
double qfi_spectral(const EigenSystem& es, const HammingGenerator& g);

/// Convenience: eigendecompose the prepared probe and evaluate qfi_spectral.
double qfi_spectral_probe(Strategy s, int num_qubits, double p);

/// Closed-form QFI. Every closed form is defined for N >= 1 (all reduce to
/// p^2 on one qubit).
double qfi_closed(Strategy s, int num_qubits, double p);

/// The Cl closed form written with the subtracted harmonic sum,
/// (N-1)p^2 + 1 - sum_m C(N-1,m) 4ab/(a+b). Equal to qfi_closed(Cl, ...) up
/// to cancellation near p = 0.
double qfi_cl_harmonic_form(int num_qubits, double p);

/// N p^2 + 1 - p^2 - exp(-N p^2).
double qfi_cl_approx(int num_qubits, double p);

/// 1/sqrt(f); +infinity for f == 0. Throws std::domain_error for f < 0.
double phase_uncertainty(double fisher);

QfiResult qfi_result(Strategy s, int num_qubits, double p);

/// sqrt(F_Q2 / F_S). Requires p > 0 and N >= 2.
double quantum_advantage(int num_qubits, double p);

/// Largest p in (1e-6, 1) where F_Cl = F_Q1, by bisection to 1e-10.
/// Requires N >= 3; throws std::runtime_error if no sign change exists.
double classical_q1_crossing(int num_qubits);

/// Leading pair contributions N^2 (a - b)^2 / (a + b) with the largest
/// eigenvalue lambda0^N paired to lambda1^N (Q2) or lambda0^(N-1) lambda1
/// (Q1).
double q2_leading_term(int num_qubits, double p);
double q1_leading_term(int num_qubits, double p);

using QfiClosedFn = std::function<double(Strategy, int, double)>;

}  // namespace mixmetro
