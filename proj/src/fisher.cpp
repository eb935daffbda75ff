#include "mixmetro/fisher.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "mixmetro/combinatorics.hpp"

namespace mixmetro {

namespace {

constexpr double kPairCutoff = 1e-14;
constexpr double kTinyWeight = 1e-300;

void require_n(int num_qubits, int minimum, const char* what) {
  if (num_qubits < minimum) {
    throw std::invalid_argument(
        fmt::format("{}: N = {} below minimum {}", what, num_qubits, minimum));
  }
}

// lambda0^zeros * lambda1^ones
double weight(const Mixedness& mix, int zeros, int ones) {
  return std::pow(mix.lambda0, zeros) * std::pow(mix.lambda1, ones);
}

double leading_term(double largest, double partner, int num_qubits) {
  const double sum = largest + partner;
  if (sum <= kTinyWeight) return 0.0;
  const double diff = largest - partner;
  const double n = num_qubits;
  return diff * diff / sum * n * n;
}

}  // namespace

double qfi_spectral(const EigenSystem& es, const HammingGenerator& g) {
  const auto dim = es.size();
  if (es.eigenvectors.rows() != dim || es.eigenvectors.cols() != dim ||
      static_cast<Eigen::Index>(g.diagonal.size()) != dim) {
    throw std::invalid_argument(fmt::format(
        "qfi_spectral: eigensystem of size {} with generator of size {}", dim,
        g.diagonal.size()));
  }
  Eigen::VectorXd gdiag(dim);
  for (Eigen::Index i = 0; i < dim; ++i) gdiag(i) = g.diagonal[i];
  // Matrix elements <Psi_j|G|Psi_k> for all pairs at once.
  const ComplexMatrix elements =
      es.eigenvectors.adjoint() * gdiag.cast<Complex>().asDiagonal() * es.eigenvectors;

  double total = 0.0;
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index k = 0; k < j; ++k) {
      const double sum = es.eigenvalues(j) + es.eigenvalues(k);
      if (sum <= kPairCutoff) continue;
      const double diff = es.eigenvalues(j) - es.eigenvalues(k);
      total += diff * diff / sum * std::norm(elements(j, k));
    }
  }
  return 4.0 * total;
}

double qfi_spectral_probe(Strategy s, int num_qubits, double p) {
  const auto rho = prepare_probe(s, num_qubits, p);
  return qfi_spectral(hermitian_eigensystem(rho.matrix()),
                      hamming_generator(num_qubits));
}

double qfi_cl_harmonic_form(int n, double p) {
  require_n(n, 1, "qfi_cl_harmonic_form");
  const auto mix = Mixedness::from_p(p);
  double harmonic = 0.0;
  for (int m = 0; m <= n - 1; ++m) {
    const double a = weight(mix, m, n - m);
    const double b = weight(mix, n - m, m);
    if (a + b <= kTinyWeight) continue;
    harmonic += binomial_real(n - 1, m) * 4.0 * a * b / (a + b);
  }
  return (n - 1) * p * p + 1.0 - harmonic;
}

double qfi_closed(Strategy s, int n, double p) {
  require_n(n, 1, "qfi_closed");
  const auto mix = Mixedness::from_p(p);
  switch (s) {
    case Strategy::standard:
      return n * p * p;
    case Strategy::classical: {
      // 1 - sum C(N-1,m) 4ab/(a+b) rewritten through sum C(N-1,m)(a+b) = 1 as
      // sum C(N-1,m)(a-b)^2/(a+b), which has no cancellation near p = 0.
      double pairs = 0.0;
      for (int m = 0; m <= n - 1; ++m) {
        const double a = weight(mix, m, n - m);
        const double b = weight(mix, n - m, m);
        if (a + b <= kTinyWeight) continue;
        pairs += binomial_real(n - 1, m) * (a - b) * (a - b) / (a + b);
      }
      return (n - 1) * p * p + pairs;
    }
    case Strategy::quantum1: {
      const double nn = n;
      const double p2 = p * p;
      return nn * p2 + 2.0 * p2 * p * (nn - 1.0) + p2 * p2 * (nn * nn - 3.0 * nn + 2.0);
    }
    case Strategy::quantum2: {
      double total = 0.0;
      for (int m = 0; m <= n - 1; ++m) {
        const double a = weight(mix, n - m, m);
        const double b = weight(mix, m, n - m);
        if (a + b <= kTinyWeight) continue;
        const double spread = n - 2.0 * m;
        total += binomial_real(n - 1, m) * spread * spread * (a - b) * (a - b) / (a + b);
      }
      return total;
    }
  }
  throw std::logic_error("qfi_closed: unknown strategy");
}

double qfi_cl_approx(int n, double p) {
  const double np2 = n * p * p;
  return np2 + 1.0 - p * p - std::exp(-np2);
}

double phase_uncertainty(double fisher) {
  if (fisher < 0.0 || std::isnan(fisher)) {
    throw std::domain_error(fmt::format("phase_uncertainty: negative Fisher information {}", fisher));
  }
  if (fisher == 0.0) return std::numeric_limits<double>::infinity();
  return 1.0 / std::sqrt(fisher);
}

QfiResult qfi_result(Strategy s, int num_qubits, double p) {
  const double f = qfi_closed(s, num_qubits, p);
  return QfiResult{s, num_qubits, p, f, phase_uncertainty(f)};
}

double quantum_advantage(int n, double p) {
  require_n(n, 2, "quantum_advantage");
  if (!(p > 0.0)) {
    throw std::domain_error("quantum_advantage: undefined at p = 0");
  }
  return std::sqrt(qfi_closed(Strategy::quantum2, n, p) /
                   qfi_closed(Strategy::standard, n, p));
}

double classical_q1_crossing(int n) {
  require_n(n, 3, "classical_q1_crossing");
  auto gap = [n](double p) {
    return qfi_closed(Strategy::classical, n, p) - qfi_closed(Strategy::quantum1, n, p);
  };
  constexpr double lo = 1e-6;
  constexpr double hi = 1.0;
  constexpr int scan = 2000;
  // Scan downward from p = 1 for the last sign change.
  double right = hi;
  double f_right = gap(right);
  for (int i = scan - 1; i >= 0; --i) {
    const double left = lo + (hi - lo) * i / scan;
    const double f_left = gap(left);
    if (f_left == 0.0) return left;
    if ((f_left > 0.0) != (f_right > 0.0)) {
      auto done = [](double a, double b) { return std::abs(b - a) <= 1e-10; };
      const auto [a, b] = boost::math::tools::bisect(gap, left, right, done);
      return 0.5 * (a + b);
    }
    right = left;
    f_right = f_left;
  }
  throw std::runtime_error(fmt::format("no Cl/Q1 crossing for N = {}", n));
}

double q2_leading_term(int n, double p) {
  require_n(n, 2, "q2_leading_term");
  const auto mix = Mixedness::from_p(p);
  return leading_term(weight(mix, n, 0), weight(mix, 0, n), n);
}

double q1_leading_term(int n, double p) {
  require_n(n, 2, "q1_leading_term");
  const auto mix = Mixedness::from_p(p);
  return leading_term(weight(mix, n, 0), weight(mix, n - 1, 1), n);
}

}  // namespace mixmetro
