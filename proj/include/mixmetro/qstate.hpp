#pragma once

// Dense quantum-state primitives over N qubits.
//
// Qubits are numbered 1..N and qubit 1 is the leftmost (most significant)
// tensor factor: basis index k has qubit i in bit (N - i) of k.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace mixmetro {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;
using Matrix2c = Eigen::Matrix2cd;

/// Tolerance used for the density-operator invariants.
inline constexpr double kStateTolerance = 1e-10;
/// Largest register the dense routines accept.
inline constexpr int kMaxDenseQubits = 12;

/// Largest entrywise |a - b|. Shapes must match.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = 1e-10);

/// Qubit count of a 2^N x 2^N matrix; throws if the dimension is not a
/// power of two.
int qubits_for_dimension(Eigen::Index dim);

/// Hermitian, unit-trace, positive semidefinite 2^N x 2^N matrix.
class DensityOperator {
 public:
  /// Validates all three invariants; throws std::invalid_argument.
  explicit DensityOperator(ComplexMatrix matrix);

  /// Wraps a matrix produced by a trace- and positivity-preserving map of an
  /// already valid state. Only the shape is checked.
  static DensityOperator from_trusted(ComplexMatrix matrix);

  int num_qubits() const { return num_qubits_; }
  Eigen::Index dim() const { return matrix_.rows(); }
  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  struct TrustedTag {};
  DensityOperator(ComplexMatrix matrix, TrustedTag);

  int num_qubits_ = 0;
  ComplexMatrix matrix_;
};

/// Human-readable list of violated density-operator invariants (empty when
/// the matrix is a valid state at kStateTolerance).
std::vector<std::string> density_violations(const ComplexMatrix& m);

/// Diagonal phase generator G = sum_i |1_i><1_i|.
struct HammingGenerator {
  int num_qubits = 0;
  std::vector<int> diagonal;  // Hamming weight of each basis index
};

HammingGenerator hamming_generator(int num_qubits);

/// Spectral decomposition, eigenvalues descending; column j of
/// `eigenvectors` belongs to eigenvalues[j].
struct EigenSystem {
  RealVector eigenvalues;
  ComplexMatrix eigenvectors;

  Eigen::Index size() const { return eigenvalues.size(); }
  ComplexMatrix reconstruct() const;
};

/// Local product basis: qubit i is measured in the columns of
/// local_unitaries[i - 1].
class ProductBasis {
 public:
  explicit ProductBasis(std::vector<Matrix2c> local_unitaries);
  static ProductBasis computational(int num_qubits);

  int num_qubits() const { return static_cast<int>(local_.size()); }
  const std::vector<Matrix2c>& local_unitaries() const { return local_; }
  /// U_1 (x) U_2 (x) ... (x) U_N as a dense matrix.
  ComplexMatrix full_unitary() const;

 private:
  std::vector<Matrix2c> local_;
};

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix identity(Eigen::Index dim);

bool is_unitary(const ComplexMatrix& u, double tol = 1e-8);

/// U rho U^dagger. Throws on dimension mismatch or if u is not unitary
/// within 1e-8.
DensityOperator apply_unitary(const DensityOperator& rho, const ComplexMatrix& u);

// Single-qubit constants.
ComplexMatrix hadamard();
ComplexMatrix pauli_x();
ComplexMatrix ket_plus_projector();
ComplexMatrix ket_minus_projector();

/// Dense 2^N gates; qubit indices are 1-based.
ComplexMatrix gate_hadamard_all(int num_qubits);
ComplexMatrix gate_hadamard_on(int num_qubits, int qubit);
ComplexMatrix gate_cnot(int num_qubits, int control, int target);

/// Gate record for circuit descriptions. `target` is unused for Hadamard.
struct Gate {
  enum class Kind { hadamard, cnot };
  Kind kind;
  int qubit;   // Hadamard target, or C-Not control
  int target;  // C-Not target
};

ComplexMatrix gate_matrix(int num_qubits, const Gate& gate);

/// Applies the gate by index arithmetic on rows and columns. Agrees with
/// apply_unitary(rho, gate_matrix(...)) to rounding.
DensityOperator apply_gate(const DensityOperator& rho, const Gate& gate);
DensityOperator apply_circuit(const DensityOperator& rho,
                              std::span<const Gate> circuit);

/// Throws std::invalid_argument unless `m` is Hermitian within `tol`.
void require_hermitian(const ComplexMatrix& m, double tol);

EigenSystem hermitian_eigensystem(const ComplexMatrix& m);
/// Eigenvalues only, descending.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// Partial transpose over the listed qubits (1-based).
ComplexMatrix partial_transpose(const DensityOperator& rho,
                                std::span<const int> qubits);

/// sum_k |k><k| rho |k><k| for the product basis {|k>}.
DensityOperator dephase(const DensityOperator& rho, const ProductBasis& basis);
/// Outcome probabilities <k|rho|k> of the dephasing, in basis-index order.
RealVector dephased_probabilities(const DensityOperator& rho,
                                  const ProductBasis& basis);

/// Shannon entropy in bits of a probability/eigenvalue vector. Entries in
/// [-1e-10, 0) count as zero; anything more negative throws.
double entropy_bits(const RealVector& weights);
double von_neumann_entropy(const DensityOperator& rho);

/// -x log2 x with h(0) = 0; x must lie in [0, 1].
double binary_h(double x);

}  // namespace mixmetro
