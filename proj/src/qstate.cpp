#include "mixmetro/qstate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <fmt/format.h>

namespace mixmetro {

namespace {

using ColMatrix = Eigen::MatrixXcd;

std::uint64_t qubit_bit(int num_qubits, int qubit) {
  return std::uint64_t{1} << (num_qubits - qubit);
}

void require_qubit(int num_qubits, int qubit, const char* what) {
  if (qubit < 1 || qubit > num_qubits) {
    throw std::out_of_range(
        fmt::format("{}: qubit {} outside 1..{}", what, qubit, num_qubits));
  }
}

void require_register(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxDenseQubits) {
    throw std::out_of_range(fmt::format("register of {} qubits outside 1..{}",
                                        num_qubits, kMaxDenseQubits));
  }
}

double hermiticity_error(const ComplexMatrix& m) {
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument("max_abs_diff: shape mismatch");
  }
  if (a.size() == 0) return 0.0;
  return (a - b).cwiseAbs().maxCoeff();
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         max_abs_diff(a, b) <= tol;
}

int qubits_for_dimension(Eigen::Index dim) {
  const auto d = static_cast<std::uint64_t>(dim);
  if (dim < 1 || !std::has_single_bit(d)) {
    throw std::invalid_argument(
        fmt::format("dimension {} is not a power of two", dim));
  }
  return std::countr_zero(d);
}

std::vector<std::string> density_violations(const ComplexMatrix& m) {
  std::vector<std::string> out;
  if (m.rows() != m.cols() || m.rows() == 0) {
    out.push_back("matrix is not square");
    return out;
  }
  const double herm = hermiticity_error(m);
  if (herm > kStateTolerance) {
    out.push_back(fmt::format("not Hermitian (max deviation {:.3e})", herm));
  }
  const double trace_err = std::abs(m.trace() - Complex{1.0, 0.0});
  if (trace_err > kStateTolerance) {
    out.push_back(fmt::format("trace deviates from 1 by {:.3e}", trace_err));
  }
  if (herm <= 1e-8) {
    const ComplexMatrix sym = 0.5 * (m + m.adjoint());
    const double smallest = hermitian_eigenvalues(sym).minCoeff();
    if (smallest < -kStateTolerance) {
      out.push_back(fmt::format("negative eigenvalue {:.3e}", smallest));
    }
  }
  return out;
}

DensityOperator::DensityOperator(ComplexMatrix matrix, TrustedTag)
    : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) {
    throw std::invalid_argument("density operator must be square");
  }
  num_qubits_ = qubits_for_dimension(matrix_.rows());
}

DensityOperator::DensityOperator(ComplexMatrix matrix)
    : DensityOperator(std::move(matrix), TrustedTag{}) {
  const auto problems = density_violations(matrix_);
  if (!problems.empty()) {
    throw std::invalid_argument("invalid density operator: " + problems.front());
  }
}

DensityOperator DensityOperator::from_trusted(ComplexMatrix matrix) {
  return DensityOperator(std::move(matrix), TrustedTag{});
}

HammingGenerator hamming_generator(int num_qubits) {
  require_register(num_qubits);
  HammingGenerator g;
  g.num_qubits = num_qubits;
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  g.diagonal.resize(dim);
  for (std::uint64_t k = 0; k < dim; ++k) g.diagonal[k] = std::popcount(k);
  return g;
}

ComplexMatrix EigenSystem::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() *
         eigenvectors.adjoint();
}

ProductBasis::ProductBasis(std::vector<Matrix2c> local_unitaries)
    : local_(std::move(local_unitaries)) {
  for (std::size_t i = 0; i < local_.size(); ++i) {
    const double err =
        (local_[i].adjoint() * local_[i] - Matrix2c::Identity()).cwiseAbs().maxCoeff();
    if (err > kStateTolerance) {
      throw std::invalid_argument(fmt::format(
          "local unitary for qubit {} deviates from unitarity by {:.3e}", i + 1, err));
    }
  }
}

ProductBasis ProductBasis::computational(int num_qubits) {
  return ProductBasis(std::vector<Matrix2c>(num_qubits, Matrix2c::Identity()));
}

ComplexMatrix ProductBasis::full_unitary() const {
  ComplexMatrix u = identity(1);
  for (const auto& local : local_) u = tensor_product(u, ComplexMatrix(local));
  return u;
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexMatrix identity(Eigen::Index dim) {
  return ComplexMatrix::Identity(dim, dim);
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return max_abs_diff(u.adjoint() * u, identity(u.rows())) <= tol;
}

DensityOperator apply_unitary(const DensityOperator& rho, const ComplexMatrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
    throw std::invalid_argument(fmt::format(
        "apply_unitary: {}x{} operator on a {}-dimensional state", u.rows(),
        u.cols(), rho.dim()));
  }
  if (!is_unitary(u, 1e-8)) {
    throw std::invalid_argument("apply_unitary: operator is not unitary");
  }
  return DensityOperator::from_trusted(u * rho.matrix() * u.adjoint());
}

ComplexMatrix hadamard() {
  const double s = std::numbers::sqrt2 / 2.0;
  ComplexMatrix h(2, 2);
  h << s, s, s, -s;
  return h;
}

ComplexMatrix pauli_x() {
  ComplexMatrix x(2, 2);
  x << 0.0, 1.0, 1.0, 0.0;
  return x;
}

ComplexMatrix ket_plus_projector() { return ComplexMatrix::Constant(2, 2, 0.5); }

ComplexMatrix ket_minus_projector() {
  ComplexMatrix m(2, 2);
  m << 0.5, -0.5, -0.5, 0.5;
  return m;
}

ComplexMatrix gate_hadamard_on(int num_qubits, int qubit) {
  require_register(num_qubits);
  require_qubit(num_qubits, qubit, "gate_hadamard_on");
  ComplexMatrix u = identity(1);
  for (int i = 1; i <= num_qubits; ++i) {
    u = tensor_product(u, i == qubit ? hadamard() : identity(2));
  }
  return u;
}

ComplexMatrix gate_hadamard_all(int num_qubits) {
  require_register(num_qubits);
  ComplexMatrix u = identity(1);
  for (int i = 1; i <= num_qubits; ++i) u = tensor_product(u, hadamard());
  return u;
}

ComplexMatrix gate_cnot(int num_qubits, int control, int target) {
  require_register(num_qubits);
  require_qubit(num_qubits, control, "gate_cnot control");
  require_qubit(num_qubits, target, "gate_cnot target");
  if (control == target) {
    throw std::invalid_argument("gate_cnot: control equals target");
  }
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  const std::uint64_t cbit = qubit_bit(num_qubits, control);
  const std::uint64_t tbit = qubit_bit(num_qubits, target);
  ComplexMatrix u = ComplexMatrix::Zero(dim, dim);
  for (std::uint64_t k = 0; k < dim; ++k) {
    const std::uint64_t image = (k & cbit) ? (k ^ tbit) : k;
    u(image, k) = 1.0;
  }
  return u;
}

ComplexMatrix gate_matrix(int num_qubits, const Gate& gate) {
  switch (gate.kind) {
    case Gate::Kind::hadamard:
      return gate_hadamard_on(num_qubits, gate.qubit);
    case Gate::Kind::cnot:
      return gate_cnot(num_qubits, gate.qubit, gate.target);
  }
  throw std::logic_error("unknown gate kind");
}

DensityOperator apply_gate(const DensityOperator& rho, const Gate& gate) {
  const int n = rho.num_qubits();
  const auto dim = static_cast<std::uint64_t>(rho.dim());
  ComplexMatrix m = rho.matrix();
  if (gate.kind == Gate::Kind::cnot) {
    require_qubit(n, gate.qubit, "apply_gate control");
    require_qubit(n, gate.target, "apply_gate target");
    if (gate.qubit == gate.target) {
      throw std::invalid_argument("apply_gate: control equals target");
    }
    const std::uint64_t cbit = qubit_bit(n, gate.qubit);
    const std::uint64_t tbit = qubit_bit(n, gate.target);
    std::vector<std::uint64_t> perm(dim);
    for (std::uint64_t k = 0; k < dim; ++k) perm[k] = (k & cbit) ? (k ^ tbit) : k;
    ComplexMatrix out(dim, dim);
    for (std::uint64_t i = 0; i < dim; ++i) {
      for (std::uint64_t j = 0; j < dim; ++j) out(i, j) = m(perm[i], perm[j]);
    }
    return DensityOperator::from_trusted(std::move(out));
  }

  require_qubit(n, gate.qubit, "apply_gate hadamard");
  const std::uint64_t bit = qubit_bit(n, gate.qubit);
  const double s = std::numbers::sqrt2 / 2.0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & bit) continue;
    const std::uint64_t i1 = i | bit;
    for (std::uint64_t j = 0; j < dim; ++j) {
      const Complex a = m(i, j);
      const Complex b = m(i1, j);
      m(i, j) = s * (a + b);
      m(i1, j) = s * (a - b);
    }
  }
  for (std::uint64_t j = 0; j < dim; ++j) {
    if (j & bit) continue;
    const std::uint64_t j1 = j | bit;
    for (std::uint64_t i = 0; i < dim; ++i) {
      const Complex a = m(i, j);
      const Complex b = m(i, j1);
      m(i, j) = s * (a + b);
      m(i, j1) = s * (a - b);
    }
  }
  return DensityOperator::from_trusted(std::move(m));
}

DensityOperator apply_circuit(const DensityOperator& rho,
                              std::span<const Gate> circuit) {
  DensityOperator out = rho;
  for (const auto& gate : circuit) out = apply_gate(out, gate);
  return out;
}

void require_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix is not square");
  }
  const double err = m.size() == 0 ? 0.0 : hermiticity_error(m);
  if (err > tol) {
    throw std::invalid_argument(
        fmt::format("matrix is not Hermitian (max deviation {:.3e})", err));
  }
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  require_hermitian(m, 1e-8);
  const ColMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ColMatrix> solver(sym, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigensystem: solver did not converge");
  }
  // Eigen sorts ascending.
  EigenSystem es;
  es.eigenvalues = solver.eigenvalues().reverse();
  es.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return es;
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  require_hermitian(m, 1e-8);
  const ColMatrix sym = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ColMatrix> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenvalues: solver did not converge");
  }
  return solver.eigenvalues().reverse();
}

ComplexMatrix partial_transpose(const DensityOperator& rho,
                                std::span<const int> qubits) {
  const int n = rho.num_qubits();
  std::uint64_t mask = 0;
  for (int q : qubits) {
    require_qubit(n, q, "partial_transpose");
    mask |= qubit_bit(n, q);
  }
  const auto dim = static_cast<std::uint64_t>(rho.dim());
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out(dim, dim);
  for (std::uint64_t i = 0; i < dim; ++i) {
    for (std::uint64_t j = 0; j < dim; ++j) {
      const std::uint64_t src_i = (i & ~mask) | (j & mask);
      const std::uint64_t src_j = (j & ~mask) | (i & mask);
      out(i, j) = m(src_i, src_j);
    }
  }
  return out;
}

RealVector dephased_probabilities(const DensityOperator& rho,
                                  const ProductBasis& basis) {
  if (basis.num_qubits() != rho.num_qubits()) {
    throw std::invalid_argument("dephase: basis and state sizes differ");
  }
  const ComplexMatrix u = basis.full_unitary();
  const ComplexMatrix rotated = u.adjoint() * rho.matrix() * u;
  return rotated.diagonal().real();
}

DensityOperator dephase(const DensityOperator& rho, const ProductBasis& basis) {
  if (basis.num_qubits() != rho.num_qubits()) {
    throw std::invalid_argument("dephase: basis and state sizes differ");
  }
  const ComplexMatrix u = basis.full_unitary();
  const RealVector probs = dephased_probabilities(rho, basis);
  ComplexMatrix chi = u * probs.cast<Complex>().asDiagonal() * u.adjoint();
  return DensityOperator::from_trusted(std::move(chi));
}

double entropy_bits(const RealVector& weights) {
  double s = 0.0;
  for (double w : weights) {
    if (w < -kStateTolerance) {
      throw std::domain_error(
          fmt::format("entropy of a distribution with weight {:.3e}", w));
    }
    if (w > 0.0) s -= w * std::log2(w);
  }
  return s;
}

double von_neumann_entropy(const DensityOperator& rho) {
  return entropy_bits(hermitian_eigenvalues(rho.matrix()));
}

double binary_h(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw std::domain_error(fmt::format("binary_h: {} outside [0, 1]", x));
  }
  return x == 0.0 ? 0.0 : -x * std::log2(x);
}

}  // namespace mixmetro
