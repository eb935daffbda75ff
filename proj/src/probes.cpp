#include "mixmetro/probes.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "mixmetro/combinatorics.hpp"

namespace mixmetro {

namespace {

constexpr int kMaxSpectrumQubits = 60;
constexpr int kMaxVectorQubits = 24;

ComplexMatrix tensor_power(const ComplexMatrix& a, int times) {
  ComplexMatrix out = identity(1);
  for (int i = 0; i < times; ++i) out = tensor_product(out, a);
  return out;
}

ComplexMatrix block2(const ComplexMatrix& tl, const ComplexMatrix& tr,
                     const ComplexMatrix& bl, const ComplexMatrix& br) {
  const Eigen::Index d = tl.rows();
  ComplexMatrix out(2 * d, 2 * d);
  out.topLeftCorner(d, d) = tl;
  out.topRightCorner(d, d) = tr;
  out.bottomLeftCorner(d, d) = bl;
  out.bottomRightCorner(d, d) = br;
  return out;
}

ComplexMatrix diag2(double a, double b) {
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = a;
  m(1, 1) = b;
  return m;
}

void require_vector_size(int num_qubits) {
  if (num_qubits > kMaxVectorQubits) {
    throw std::out_of_range(fmt::format(
        "eigenvectors requested on {} qubits (limit {})", num_qubits, kMaxVectorQubits));
  }
}

// Product of |+>/|-> factors: qubit i is |-> when bit (N - i) of `minus_mask`
// is set.
ComplexVector x_basis_vector(int num_qubits, std::uint64_t minus_mask) {
  require_vector_size(num_qubits);
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  const double amp = std::pow(2.0, -0.5 * num_qubits);
  ComplexVector v(dim);
  for (std::uint64_t x = 0; x < dim; ++x) {
    v(x) = (std::popcount(x & minus_mask) % 2 == 0) ? amp : -amp;
  }
  return v;
}

ComplexVector ghz_vector(int num_qubits, std::uint64_t chi, bool plus) {
  require_vector_size(num_qubits);
  const std::uint64_t dim = std::uint64_t{1} << num_qubits;
  const std::uint64_t lead = std::uint64_t{1} << (num_qubits - 1);
  const std::uint64_t rest = lead - 1;
  const double s = std::numbers::sqrt2 / 2.0;
  ComplexVector v = ComplexVector::Zero(dim);
  v(chi) = s;
  v(lead | (~chi & rest)) = plus ? s : -s;
  return v;
}

}  // namespace

std::string_view to_string(Strategy s) {
  switch (s) {
    case Strategy::standard: return "S";
    case Strategy::classical: return "Cl";
    case Strategy::quantum1: return "Q1";
    case Strategy::quantum2: return "Q2";
  }
  return "?";
}

std::optional<Strategy> parse_strategy(std::string_view tag) {
  for (Strategy s : kAllStrategies) {
    if (to_string(s) == tag) return s;
  }
  return std::nullopt;
}

int min_qubits(Strategy s) { return s == Strategy::standard ? 1 : 2; }

void require_qubits(Strategy s, int num_qubits) {
  if (num_qubits < min_qubits(s)) {
    throw std::invalid_argument(fmt::format(
        "strategy {} needs at least {} qubits, got {}", to_string(s),
        min_qubits(s), num_qubits));
  }
}

Mixedness Mixedness::from_p(double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw std::domain_error(fmt::format("mixedness p = {} outside [0, 1]", p));
  }
  const double lambda0 = (1.0 + p) / 2.0;
  return Mixedness{p, lambda0, 1.0 - lambda0};
}

double Mixedness::qubit_entropy() const {
  return binary_h(lambda0) + binary_h(lambda1);
}

DensityOperator initial_qubit(double p) {
  const auto mix = Mixedness::from_p(p);
  return DensityOperator(diag2(mix.lambda0, mix.lambda1));
}

std::vector<Gate> probe_circuit(Strategy s, int num_qubits) {
  require_qubits(s, num_qubits);
  std::vector<Gate> c;
  auto fan_out = [&] {
    for (int i = 2; i <= num_qubits; ++i) c.push_back({Gate::Kind::cnot, 1, i});
  };
  auto h_all = [&] {
    for (int i = 1; i <= num_qubits; ++i) c.push_back({Gate::Kind::hadamard, i, 0});
  };
  auto h_first = [&] { c.push_back({Gate::Kind::hadamard, 1, 0}); };

  switch (s) {
    case Strategy::standard:
      h_all();
      break;
    case Strategy::classical:
      fan_out();
      h_all();
      break;
    case Strategy::quantum1:
      h_first();
      fan_out();
      break;
    case Strategy::quantum2:
      fan_out();
      h_first();
      fan_out();
      break;
  }
  return c;
}

DensityOperator prepare_probe(Strategy s, int num_qubits, double p) {
  require_qubits(s, num_qubits);
  if (num_qubits > kMaxDenseQubits) {
    throw std::out_of_range(fmt::format("prepare_probe: {} qubits exceeds {}",
                                        num_qubits, kMaxDenseQubits));
  }
  const auto rho = initial_qubit(p);
  const auto product =
      DensityOperator::from_trusted(tensor_power(rho.matrix(), num_qubits));
  const auto circuit = probe_circuit(s, num_qubits);
  return apply_circuit(product, circuit);
}

DensityOperator closed_form_density(Strategy s, int num_qubits, double p) {
  require_qubits(s, num_qubits);
  if (num_qubits > kMaxDenseQubits) {
    throw std::out_of_range(fmt::format("closed_form_density: {} qubits exceeds {}",
                                        num_qubits, kMaxDenseQubits));
  }
  const auto mix = Mixedness::from_p(p);
  const double l0 = mix.lambda0;
  const double l1 = mix.lambda1;
  const int rest = num_qubits - 1;

  const ComplexMatrix h = hadamard();
  const ComplexMatrix x = pauli_x();
  const ComplexMatrix rho = diag2(l0, l1);
  const ComplexMatrix flipped = x * rho * x;  // sigma_x rho sigma_x
  const ComplexMatrix rho_x = rho * x;        // rho sigma_x
  const ComplexMatrix x_rho = x * rho;        // sigma_x rho

  ComplexMatrix m;
  switch (s) {
    case Strategy::standard:
      m = tensor_power(h * rho * h, num_qubits);
      break;
    case Strategy::classical:
      m = l0 * tensor_product(ket_plus_projector(), tensor_power(h * rho * h, rest)) +
          l1 * tensor_product(ket_minus_projector(), tensor_power(h * flipped * h, rest));
      break;
    case Strategy::quantum1: {
      const ComplexMatrix a = tensor_power(rho, rest);
      const ComplexMatrix b = tensor_power(flipped, rest);
      m = 0.5 * block2(a, p * tensor_power(rho_x, rest), p * tensor_power(x_rho, rest), b);
      break;
    }
    case Strategy::quantum2: {
      const ComplexMatrix a = tensor_power(rho, rest);
      const ComplexMatrix b = tensor_power(flipped, rest);
      const ComplexMatrix ax = tensor_power(rho_x, rest);
      const ComplexMatrix xa = tensor_power(x_rho, rest);
      m = 0.5 * l0 * block2(a, ax, xa, b) + 0.5 * l1 * block2(b, -xa, -ax, a);
      break;
    }
  }
  return DensityOperator::from_trusted(std::move(m));
}

double LabeledSpectrum::total_weight() const {
  double total = 0.0;
  for (const auto& f : families) {
    total += f.eigenvalue * static_cast<double>(f.multiplicity);
  }
  return total;
}

std::uint64_t nth_weight_bitstring(int length, int weight, std::uint64_t index) {
  if (length < 0 || length > 63 || weight < 0 || weight > length) {
    throw std::out_of_range("nth_weight_bitstring: bad length/weight");
  }
  if (index >= binomial_exact(length, weight)) {
    throw std::out_of_range("nth_weight_bitstring: index beyond C(length, weight)");
  }
  std::uint64_t out = 0;
  int ones = weight;
  for (int pos = length - 1; pos >= 0 && ones > 0; --pos) {
    // Strings with a 0 here come first.
    const std::uint64_t with_zero = binomial_exact(pos, ones);
    if (index >= with_zero) {
      index -= with_zero;
      out |= std::uint64_t{1} << pos;
      --ones;
    }
  }
  return out;
}

LabeledSpectrum closed_form_eigensystem(Strategy s, int n, double p) {
  require_qubits(s, n);
  if (n > kMaxSpectrumQubits) {
    throw std::out_of_range(fmt::format("closed_form_eigensystem: {} qubits exceeds {}",
                                        n, kMaxSpectrumQubits));
  }
  const auto mix = Mixedness::from_p(p);
  const double l0 = mix.lambda0;
  const double l1 = mix.lambda1;
  auto weight = [&](int zeros, int ones) {
    return std::pow(l0, zeros) * std::pow(l1, ones);
  };

  LabeledSpectrum labeled{s, n, {}};
  if (s == Strategy::standard) {
    for (int m = 0; m <= n; ++m) {
      labeled.families.push_back(SpectrumFamily{
          m, Branch::none, weight(n - m, m), binomial_exact(n, m),
          [n, m](std::uint64_t k) {
            return x_basis_vector(n, nth_weight_bitstring(n, m, k));
          }});
    }
    return labeled;
  }

  const std::uint64_t lead = std::uint64_t{1} << (n - 1);
  for (int m = 0; m <= n - 1; ++m) {
    const std::uint64_t mult = binomial_exact(n - 1, m);
    double plus_value = weight(n - m, m);
    double minus_value = 0.0;
    switch (s) {
      case Strategy::classical:
      case Strategy::quantum2:
        minus_value = weight(m, n - m);
        break;
      case Strategy::quantum1:
        minus_value = weight(n - m - 1, m + 1);
        break;
      case Strategy::standard:
        break;
    }
    for (Branch b : {Branch::plus, Branch::minus}) {
      const bool plus = b == Branch::plus;
      std::function<ComplexVector(std::uint64_t)> factory;
      if (s == Strategy::classical) {
        factory = [n, m, plus, lead](std::uint64_t k) {
          const std::uint64_t y = nth_weight_bitstring(n - 1, m, k);
          return x_basis_vector(n, (plus ? 0 : lead) | y);
        };
      } else {
        factory = [n, m, plus](std::uint64_t k) {
          return ghz_vector(n, nth_weight_bitstring(n - 1, m, k), plus);
        };
      }
      labeled.families.push_back(SpectrumFamily{m, b, plus ? plus_value : minus_value,
                                              mult, std::move(factory)});
    }
  }
  return labeled;
}

}  // namespace mixmetro
