#pragma once

#include <cstdint>
#include <random>

#include <Eigen/QR>

#include "mixmetro/qstate.hpp"

namespace mixmetro::testing {

inline ComplexMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& gen) {
  std::normal_distribution<double> normal;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex{normal(gen), normal(gen)};
  }
  return m;
}

inline ComplexMatrix random_hermitian(Eigen::Index dim, std::mt19937_64& gen) {
  const ComplexMatrix a = random_gaussian(dim, dim, gen);
  return 0.5 * (a + a.adjoint());
}

// Haar unitary via QR with the phases of R's diagonal divided out.
inline ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& gen) {
  const Eigen::MatrixXcd a = random_gaussian(dim, dim, gen);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < dim; ++j) {
    const Complex d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline DensityOperator random_density(int num_qubits, std::mt19937_64& gen) {
  const Eigen::Index dim = Eigen::Index{1} << num_qubits;
  const ComplexMatrix a = random_gaussian(dim, dim, gen);
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  return DensityOperator(0.5 * (rho + rho.adjoint()));
}

inline ProductBasis random_basis(int num_qubits, std::mt19937_64& gen) {
  std::vector<Matrix2c> locals;
  for (int i = 0; i < num_qubits; ++i) locals.push_back(Matrix2c(random_unitary(2, gen)));
  return ProductBasis(std::move(locals));
}

inline ComplexMatrix pure_projector(const ComplexVector& v) {
  return v * v.adjoint();
}

inline ComplexVector basis_ket(Eigen::Index dim, Eigen::Index k) {
  ComplexVector v = ComplexVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

inline ComplexMatrix bell_state() {
  ComplexVector v = ComplexVector::Zero(4);
  v(0) = v(3) = std::sqrt(0.5);
  return pure_projector(v);
}

}  // namespace mixmetro::testing
