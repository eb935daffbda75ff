#include "mixmetro/correlations.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "mixmetro/combinatorics.hpp"
#include "mixmetro/parallel.hpp"

namespace mixmetro {

namespace {

constexpr double kBoundaryDeadZone = 1e-10;

void require_ghz_strategy(Strategy s, const char* what) {
  if (s != Strategy::quantum1 && s != Strategy::quantum2) {
    throw std::invalid_argument(
        fmt::format("{}: strategy {} is not Q1 or Q2", what, to_string(s)));
  }
}

void require_pair(int n, const char* what) {
  if (n < 2) {
    throw std::invalid_argument(fmt::format("{}: N = {} below 2", what, n));
  }
}

double weight(const Mixedness& mix, int zeros, int ones) {
  return std::pow(mix.lambda0, zeros) * std::pow(mix.lambda1, ones);
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double min_pt_eigenvalue_closed(Strategy s, int n, double p) {
  require_ghz_strategy(s, "min_pt_eigenvalue_closed");
  require_pair(n, "min_pt_eigenvalue_closed");
  const auto mix = Mixedness::from_p(p);
  if (s == Strategy::quantum1) {
    return weight(mix, 0, n - 1) - p * weight(mix, n - 1, 0);
  }
  // Smallest 2x2 GHZ block diagonal sits at excitation count floor(N/2),
  // largest coherence in the corners.
  const int lower = n / 2;
  const int upper = n - lower;
  return weight(mix, lower, upper) + weight(mix, upper, lower) - weight(mix, n, 0) +
         weight(mix, 0, n);
}

double product_min_pt_eigenvalue(int n, double p) {
  const auto mix = Mixedness::from_p(p);
  return weight(mix, 0, n);
}

double entanglement_boundary(Strategy s, int n) {
  require_ghz_strategy(s, "entanglement_boundary");
  require_pair(n, "entanglement_boundary");
  auto f = [s, n](double p) { return min_pt_eigenvalue_closed(s, n, p); };
  auto done = [](double a, double b) { return std::abs(b - a) <= 1e-10; };
  // f > 0 near p = 0 (lambda0 = lambda1) and f = -1 at p = 1.
  const auto [a, b] = boost::math::tools::bisect(f, 1e-12, 1.0, done);
  return 0.5 * (a + b);
}

double min_pt_eigenvalue_brute(const DensityOperator& rho) {
  const int n = rho.num_qubits();
  if (n > kMaxBrutePtQubits) {
    throw std::out_of_range(fmt::format(
        "min_pt_eigenvalue_brute: {} qubits exceeds {}", n, kMaxBrutePtQubits));
  }
  if (n < 2) {
    return hermitian_eigenvalues(rho.matrix()).minCoeff();
  }
  // Subsets containing qubit 1, excluding the full register; a subset and
  // its complement give partial transposes with the same spectrum.
  double smallest = std::numeric_limits<double>::infinity();
  const std::uint64_t others = std::uint64_t{1} << (n - 1);
  for (std::uint64_t mask = 0; mask + 1 < others; ++mask) {
    std::vector<int> qubits{1};
    for (int i = 2; i <= n; ++i) {
      if (mask & (std::uint64_t{1} << (i - 2))) qubits.push_back(i);
    }
    const ComplexMatrix pt = partial_transpose(rho, qubits);
    smallest = std::min(smallest, hermitian_eigenvalues(pt).minCoeff());
  }
  return smallest;
}

DensityOperator closest_classical_state(Strategy s, int n, double p) {
  require_ghz_strategy(s, "closest_classical_state");
  require_pair(n, "closest_classical_state");
  return dephase(prepare_probe(s, n, p), ProductBasis::computational(n));
}

double conjectured_discord(Strategy s, int n, double p) {
  require_ghz_strategy(s, "conjectured_discord");
  require_pair(n, "conjectured_discord");
  const auto mix = Mixedness::from_p(p);
  const double qubit_entropy = mix.qubit_entropy();
  if (s == Strategy::quantum1) return 1.0 - qubit_entropy;

  double dephased = 0.0;
  for (int m = 0; m <= n - 1; ++m) {
    const double diag = 0.5 * (weight(mix, n - m, m) + weight(mix, m, n - m));
    dephased += binomial_real(n - 1, m) * binary_h(diag);
  }
  return 2.0 * dephased - n * qubit_entropy;
}

double dephasing_relative_entropy(const DensityOperator& rho,
                                  const ProductBasis& basis) {
  const auto chi = dephase(rho, basis);
  const auto es = hermitian_eigensystem(chi.matrix());
  double cross = 0.0;  // tr(rho log2 chi)
  for (Eigen::Index j = 0; j < es.size(); ++j) {
    const double mu = es.eigenvalues(j);
    if (mu <= 1e-15) continue;  // rho has no weight on chi's kernel
    const ComplexVector v = es.eigenvectors.col(j);
    const double overlap = (v.adjoint() * rho.matrix() * v)(0, 0).real();
    cross += overlap * std::log2(mu);
  }
  return -von_neumann_entropy(rho) - cross;
}

Matrix2c haar_unitary_2x2(std::uint64_t seed, std::uint64_t trial, int qubit) {
  const std::uint64_t key =
      splitmix64(splitmix64(splitmix64(seed) ^ trial) ^ static_cast<std::uint64_t>(qubit));
  std::mt19937_64 gen(key);
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix2c g;
  for (int c = 0; c < 2; ++c) {
    for (int r = 0; r < 2; ++r) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(r, c) = Complex{re, im};
    }
  }
  // Gram-Schmidt = QR with a positive real diagonal in R, which fixes the
  // column phases and makes Q Haar distributed.
  Eigen::Vector2cd q0 = g.col(0).normalized();
  Eigen::Vector2cd q1 = g.col(1) - q0.dot(g.col(1)) * q0;
  q1.normalize();
  Matrix2c u;
  u.col(0) = q0;
  u.col(1) = q1;
  return u;
}

ProductBasis mc_basis(int n, std::uint64_t seed, std::uint64_t trial) {
  if (trial == 0) return ProductBasis::computational(n);
  std::vector<Matrix2c> locals;
  locals.reserve(n);
  for (int q = 1; q <= n; ++q) locals.push_back(haar_unitary_2x2(seed, trial, q));
  return ProductBasis(std::move(locals));
}

McDiscordResult discord_mc(Strategy s, int n, double p, std::uint64_t trials,
                           std::uint64_t seed, unsigned workers) {
  require_ghz_strategy(s, "discord_mc");
  require_pair(n, "discord_mc");
  if (n > kMaxMcQubits) {
    throw std::out_of_range(
        fmt::format("discord_mc: {} qubits exceeds {}", n, kMaxMcQubits));
  }
  if (trials < 1) throw std::invalid_argument("discord_mc: trials must be >= 1");

  const auto rho = prepare_probe(s, n, p);
  const double rho_entropy = von_neumann_entropy(rho);

  auto samples = parallel_map(trials, workers, [&](std::size_t t) {
    auto basis = mc_basis(n, seed, t);
    const double value = entropy_bits(dephased_probabilities(rho, basis)) - rho_entropy;
    return McDiscordSample{seed, t, std::move(basis), value};
  });

  McDiscordResult out{std::move(samples), 0.0, 0.0, conjectured_discord(s, n, p),
                      n - rho_entropy};
  out.min_bits = out.max_bits = out.samples.front().value_bits;
  for (const auto& sample : out.samples) {
    out.min_bits = std::min(out.min_bits, sample.value_bits);
    out.max_bits = std::max(out.max_bits, sample.value_bits);
  }
  return out;
}

double classical_correlations(Strategy s, int n, double p) {
  require_pair(n, "classical_correlations");
  const auto mix = Mixedness::from_p(p);
  const double qubit_entropy = mix.qubit_entropy();
  switch (s) {
    case Strategy::classical: {
      const double same = mix.lambda0 * mix.lambda0 + mix.lambda1 * mix.lambda1;
      const double cross = 2.0 * mix.lambda0 * mix.lambda1;
      return (n - 1) * (binary_h(same) + binary_h(cross) - qubit_entropy);
    }
    case Strategy::quantum1:
      return (n - 1) * (1.0 - qubit_entropy);
    case Strategy::quantum2:
      return n * (1.0 - qubit_entropy) - conjectured_discord(s, n, p);
    case Strategy::standard:
      break;
  }
  throw std::invalid_argument("classical_correlations: strategy must be Cl, Q1 or Q2");
}

CorrelationReport correlation_report(Strategy s, int n, double p) {
  require_qubits(s, n);
  CorrelationReport r{s, n, p, 0.0, 0.0, 0.0, false, 0.0};
  switch (s) {
    case Strategy::standard:
      r.min_pt_eigenvalue = product_min_pt_eigenvalue(n, p);
      break;
    case Strategy::classical:
      r.classical_bits = classical_correlations(s, n, p);
      r.min_pt_eigenvalue = product_min_pt_eigenvalue(n, p);
      break;
    case Strategy::quantum1:
    case Strategy::quantum2:
      r.discord_bits = conjectured_discord(s, n, p);
      r.classical_bits = classical_correlations(s, n, p);
      r.min_pt_eigenvalue = min_pt_eigenvalue_closed(s, n, p);
      r.entangled = r.min_pt_eigenvalue < -kBoundaryDeadZone;
      break;
  }
  r.total_bits = r.discord_bits + r.classical_bits;
  return r;
}

}  // namespace mixmetro
