#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "mixmetro/combinatorics.hpp"
#include "mixmetro/probes.hpp"
#include "test_support.hpp"

using namespace mixmetro;
using namespace mixmetro::testing;

namespace {

std::vector<double> p_values() {
  std::vector<double> ps;
  for (int i = 0; i <= 10; ++i) ps.push_back(i / 10.0);
  return ps;
}

// All closed-form eigenvectors as columns, with their eigenvalues.
std::pair<ComplexMatrix, std::vector<double>> collect(const LabeledSpectrum& labeled) {
  const Eigen::Index dim = Eigen::Index{1} << labeled.num_qubits;
  ComplexMatrix v(dim, dim);
  std::vector<double> values;
  Eigen::Index col = 0;
  for (const auto& f : labeled.families) {
    for (std::uint64_t k = 0; k < f.multiplicity; ++k) {
      v.col(col++) = f.eigenvector(k);
      values.push_back(f.eigenvalue);
    }
  }
  REQUIRE(col == dim);
  return {v, values};
}

}  // namespace

TEST_CASE("strategy tags") {
  for (Strategy s : kAllStrategies) CHECK(parse_strategy(to_string(s)) == s);
  CHECK_FALSE(parse_strategy("Q3").has_value());
  CHECK(min_qubits(Strategy::standard) == 1);
  CHECK(min_qubits(Strategy::quantum2) == 2);
}

TEST_CASE("initial qubit") {
  ComplexMatrix pure = ComplexMatrix::Zero(2, 2);
  pure(0, 0) = 1.0;
  CHECK(approx_equal(initial_qubit(1.0).matrix(), pure, 0.0));
  CHECK(approx_equal(initial_qubit(0.0).matrix(), identity(2) / 2.0, 0.0));
  ComplexMatrix half = ComplexMatrix::Zero(2, 2);
  half(0, 0) = 0.75;
  half(1, 1) = 0.25;
  CHECK(approx_equal(initial_qubit(0.5).matrix(), half, 0.0));
  CHECK_THROWS_AS(initial_qubit(1.2), std::domain_error);
  CHECK_THROWS_AS(initial_qubit(-0.01), std::domain_error);

  const auto mix = Mixedness::from_p(0.3);
  CHECK(mix.lambda0 + mix.lambda1 == 1.0);
  CHECK(mix.lambda0 >= mix.lambda1);
}

TEST_CASE("probe circuits") {
  CHECK(probe_circuit(Strategy::standard, 3).size() == 3);
  CHECK(probe_circuit(Strategy::classical, 3).size() == 5);
  CHECK(probe_circuit(Strategy::quantum1, 3).size() == 3);
  CHECK(probe_circuit(Strategy::quantum2, 3).size() == 5);
  CHECK_THROWS_AS(prepare_probe(Strategy::classical, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(prepare_probe(Strategy::quantum1, 1, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(closed_form_density(Strategy::quantum2, 1, 0.5), std::invalid_argument);
  CHECK_NOTHROW(prepare_probe(Strategy::standard, 1, 0.5));
}

TEST_CASE("probe examples") {
  CHECK(approx_equal(prepare_probe(Strategy::standard, 1, 1.0).matrix(), ket_plus_projector(),
                     1e-15));

  ComplexVector ghz = ComplexVector::Zero(4);
  ghz(0) = ghz(3) = std::sqrt(0.5);
  CHECK(approx_equal(prepare_probe(Strategy::quantum1, 2, 1.0).matrix(), pure_projector(ghz),
                     1e-15));

  CHECK(max_abs_diff(prepare_probe(Strategy::quantum2, 3, 0.5).matrix(),
                     closed_form_density(Strategy::quantum2, 3, 0.5).matrix()) <= 1e-12);
  CHECK(max_abs_diff(prepare_probe(Strategy::quantum2, 2, 0.5).matrix(),
                     closed_form_density(Strategy::quantum2, 2, 0.5).matrix()) <= 1e-12);

  const ComplexMatrix q1_mixed = closed_form_density(Strategy::quantum1, 2, 0.0).matrix();
  CHECK(approx_equal(q1_mixed, identity(4) / 4.0, 1e-15));

  const ComplexMatrix plus_plus = tensor_product(ket_plus_projector(), ket_plus_projector());
  CHECK(approx_equal(closed_form_density(Strategy::classical, 2, 1.0).matrix(), plus_plus, 1e-15));
}

TEST_CASE("circuit and block forms agree, spectra are preserved") {
  for (Strategy s : kAllStrategies) {
    for (int n = min_qubits(s); n <= 6; ++n) {
      for (double p : p_values()) {
        CAPTURE(to_string(s));
        CAPTURE(n);
        CAPTURE(p);
        const auto circuit = prepare_probe(s, n, p);
        const auto block = closed_form_density(s, n, p);
        CHECK(max_abs_diff(circuit.matrix(), block.matrix()) <= 1e-10);
        if (n <= 4) CHECK(density_violations(circuit.matrix()).empty());

        const auto mix = Mixedness::from_p(p);
        std::vector<double> expected;
        for (int m = 0; m <= n; ++m) {
          expected.insert(expected.end(), binomial_exact(n, m),
                          std::pow(mix.lambda0, n - m) * std::pow(mix.lambda1, m));
        }
        std::sort(expected.begin(), expected.end(), std::greater<>());
        const RealVector eig = hermitian_eigenvalues(circuit.matrix());
        double worst = 0.0;
        for (Eigen::Index i = 0; i < eig.size(); ++i)
          worst = std::max(worst, std::abs(eig(i) - expected[i]));
        CHECK(worst <= 1e-9);
      }
    }
  }
}

TEST_CASE("weight-m bitstring enumeration") {
  CHECK(nth_weight_bitstring(4, 2, 0) == 0b0011);
  CHECK(nth_weight_bitstring(4, 2, 1) == 0b0101);
  CHECK(nth_weight_bitstring(4, 2, 5) == 0b1100);
  CHECK_THROWS_AS(nth_weight_bitstring(4, 2, 6), std::out_of_range);
  for (int len = 0; len <= 8; ++len) {
    for (int w = 0; w <= len; ++w) {
      std::uint64_t prev = 0;
      for (std::uint64_t k = 0; k < binomial_exact(len, w); ++k) {
        const auto bits = nth_weight_bitstring(len, w, k);
        CHECK(std::popcount(bits) == w);
        if (k > 0) CHECK(bits > prev);
        prev = bits;
      }
    }
  }
}

TEST_CASE("closed-form eigensystem") {
  for (Strategy s : kAllStrategies) {
    for (int n = min_qubits(s); n <= 8; ++n) {
      for (double p : p_values()) {
        const auto labeled = closed_form_eigensystem(s, n, p);
        CHECK(std::abs(labeled.total_weight() - 1.0) <= 1e-10);
        for (const auto& f : labeled.families) {
          const int pool = s == Strategy::standard ? n : n - 1;
          CHECK(f.multiplicity == binomial_exact(pool, f.m));
        }
      }
    }
  }

  // Q2 minus branch at m = 0 is lambda1^N.
  const auto q2 = closed_form_eigensystem(Strategy::quantum2, 2, 0.5);
  const auto it = std::find_if(q2.families.begin(), q2.families.end(), [](const auto& f) {
    return f.m == 0 && f.branch == Branch::minus;
  });
  REQUIRE(it != q2.families.end());
  CHECK(it->eigenvalue == doctest::Approx(0.0625).epsilon(1e-15));

  CHECK(binomial_real(40, 20) == doctest::Approx(137846528820.0).epsilon(1e-14));
  CHECK(binomial_exact(20, 10) == 184756);
}

TEST_CASE("closed-form eigenvectors diagonalise the prepared probes") {
  for (Strategy s : kAllStrategies) {
    for (int n = min_qubits(s); n <= 6; ++n) {
      for (double p : {0.0, 0.3, 0.7, 1.0}) {
        CAPTURE(to_string(s));
        CAPTURE(n);
        CAPTURE(p);
        const auto rho = prepare_probe(s, n, p);
        const auto [vectors, values] = collect(closed_form_eigensystem(s, n, p));
        double residual = 0.0;
        for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
          const ComplexVector v = vectors.col(j);
          residual = std::max(residual, (rho.matrix() * v - values[j] * v).norm());
        }
        CHECK(residual <= 1e-9);
        if (n <= 5) {
          const ComplexMatrix gram = vectors.adjoint() * vectors;
          CHECK(max_abs_diff(gram, identity(gram.rows())) <= 1e-10);
        }
      }
    }
  }
}

TEST_CASE("Q1 and Q2 share eigenvectors") {
  // Spectral projectors of Q2 (grouped by numerical eigenvalue) commute with
  // Q1 and vice versa.
  for (int n = 2; n <= 4; ++n) {
    for (double p : {0.2, 0.6, 0.9}) {
      const auto q1 = prepare_probe(Strategy::quantum1, n, p).matrix();
      const auto q2 = prepare_probe(Strategy::quantum2, n, p).matrix();
      for (const auto& [a, b] : {std::pair{q1, q2}, std::pair{q2, q1}}) {
        const auto es = hermitian_eigensystem(a);
        Eigen::Index start = 0;
        while (start < es.size()) {
          Eigen::Index end = start + 1;
          while (end < es.size() && std::abs(es.eigenvalues(end) - es.eigenvalues(start)) < 1e-9)
            ++end;
          const ComplexMatrix block = es.eigenvectors.middleCols(start, end - start);
          const ComplexMatrix proj = block * block.adjoint();
          CHECK(max_abs_diff(proj * b, b * proj) <= 1e-10);
          start = end;
        }
      }
    }
  }
}
