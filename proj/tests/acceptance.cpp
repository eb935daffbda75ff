// Acceptance suite: one PASS/FAIL line per criterion at its pinned tolerance.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "mixmetro/correlations.hpp"
#include "mixmetro/fisher.hpp"
#include "mixmetro/sweep.hpp"

using namespace mixmetro;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Criterion {
  std::string name;
  std::function<Outcome()> run;
  double budget_seconds = 0.0;  // 0: no runtime bound
  std::string known_failure;    // why the criterion cannot hold, when it cannot
};

// Records the first violation and the worst margin seen.
class Tracker {
 public:
  void expect(bool ok, double deviation, const std::string& where) {
    worst_ = std::max(worst_, deviation);
    ++points_;
    if (!ok) {
      ++failed_;
      if (first_.empty()) first_ = where;
    }
  }
  Outcome finish(const std::string& label = "max deviation") const {
    if (failed_ == 0) return {true, fmt::format("{} points, {} {:.3e}", points_, label, worst_)};
    return {false, fmt::format("{} of {} points fail; first: {}", failed_, points_, first_)};
  }

 private:
  double worst_ = 0.0;
  int points_ = 0;
  int failed_ = 0;
  std::string first_;
};

std::vector<double> grid(int intervals) {
  std::vector<double> ps;
  for (int i = 0; i <= intervals; ++i) ps.push_back(static_cast<double>(i) / intervals);
  return ps;
}

double qubit_entropy(double p) { return Mixedness::from_p(p).qubit_entropy(); }

Outcome oracle_equivalence() {
  Tracker t;
  for (Strategy s : kAllStrategies) {
    const int lo = s == Strategy::standard ? 1 : 2;
    for (int n = lo; n <= 6; ++n) {
      for (double p : grid(20)) {
        const double closed = qfi_closed(s, n, p);
        const double dev = std::abs(qfi_spectral_probe(s, n, p) - closed);
        const double tol = 1e-7 * std::max(1.0, closed);
        t.expect(dev <= tol, dev, fmt::format("{} N={} p={}", to_string(s), n, p));
      }
    }
  }
  return t.finish();
}

Outcome pure_state_limits() {
  Tracker t;
  for (int n = 2; n <= 10; ++n) {
    const double nn = n;
    const std::pair<Strategy, double> expected[] = {{Strategy::standard, nn},
                                                    {Strategy::classical, nn},
                                                    {Strategy::quantum1, nn * nn},
                                                    {Strategy::quantum2, nn * nn}};
    for (const auto& [s, value] : expected) {
      const double dev = std::abs(qfi_closed(s, n, 1.0) - value);
      t.expect(dev <= 1e-9, dev, fmt::format("{} N={}", to_string(s), n));
    }
  }
  return t.finish();
}

Outcome q2_bound() {
  Tracker t;
  for (int n = 2; n <= 12; ++n) {
    for (double p : grid(100)) {
      const double margin = qfi_closed(Strategy::quantum2, n, p) - double(n) * n * p * p;
      t.expect(margin >= -1e-9, std::max(0.0, -margin), fmt::format("N={} p={}", n, p));
    }
  }
  return t.finish("max shortfall");
}

Outcome cl_approximation() {
  double worst = 0.0;
  double at = 0.0;
  for (int i = 0; i <= 10000; ++i) {
    const double p = i / 10000.0;
    const double dev = std::abs(qfi_closed(Strategy::classical, 10, p) - qfi_cl_approx(10, p));
    if (dev > worst) {
      worst = dev;
      at = p;
    }
  }
  return {worst <= 0.1, fmt::format("N=10 max |exact - approx| = {:.4f} at p={} (bound 0.1)", worst, at)};
}

Outcome entanglement_boundaries() {
  const double q1 = entanglement_boundary(Strategy::quantum1, 10);
  const double q2 = entanglement_boundary(Strategy::quantum2, 10);
  bool ok = std::abs(q1 - 0.118) <= 0.001 && std::abs(q2 - 0.088) <= 0.001;
  Tracker t;
  for (Strategy s : {Strategy::quantum1, Strategy::quantum2}) {
    for (int n = 2; n <= 6; ++n) {
      const double boundary = entanglement_boundary(s, n);
      for (double p : grid(100)) {
        if (p == 0.0 || std::abs(p - boundary) <= 1e-3) continue;
        const double brute = min_pt_eigenvalue_brute(prepare_probe(s, n, p));
        const double closed = min_pt_eigenvalue_closed(s, n, p);
        t.expect((brute < 0.0) == (closed < 0.0), 0.0,
                 fmt::format("{} N={} p={}: brute {:.3e} closed {:.3e}", to_string(s), n, p, brute, closed));
      }
    }
  }
  const auto agree = t.finish();
  ok = ok && agree.passed;
  return {ok, fmt::format("Q1 N=10 p*={:.5f}, Q2 N=10 p*={:.5f}; PPT sign agreement: {}", q1, q2, agree.detail)};
}

Outcome quantum_advantage_bound() {
  Tracker t;
  for (int n = 2; n <= 10; ++n) {
    const double root_n = std::sqrt(double(n));
    for (double p : grid(100)) {
      if (p == 0.0) continue;
      const double ratio = quantum_advantage(n, p);
      t.expect(ratio >= root_n - 1e-9, std::max(0.0, root_n - ratio), fmt::format("N={} p={}", n, p));
    }
    const double dev = std::abs(quantum_advantage(n, 1.0) - root_n);
    t.expect(dev <= 1e-9, dev, fmt::format("N={} p=1 equality", n));
  }
  return t.finish();
}

Outcome crossing_point() {
  const double p_star = classical_q1_crossing(10);
  const double rule = 1.0 / std::sqrt(10.0);
  bool ok = p_star > 0.0 && p_star < 1.0 && p_star >= rule / 2.0 && p_star <= rule * 2.0;
  Tracker t;
  for (double p : grid(1000)) {
    if (p == 0.0 || std::abs(p - p_star) < 1e-6) continue;
    const double gap = qfi_closed(Strategy::classical, 10, p) - qfi_closed(Strategy::quantum1, 10, p);
    t.expect(p < p_star ? gap > 0.0 : gap < 0.0, 0.0, fmt::format("p={} gap={:.3e}", p, gap));
  }
  const auto order = t.finish();
  ok = ok && order.passed;
  return {ok, fmt::format("p*={:.6f} vs 1/sqrt(10)={:.6f}; ordering: {}", p_star, rule, order.detail)};
}

Outcome discord_sandwich() {
  std::vector<std::string> below;
  Tracker t;
  for (Strategy s : {Strategy::quantum1, Strategy::quantum2}) {
    for (int n = 2; n <= 5; ++n) {
      for (double p : {0.2, 0.5, 0.8}) {
        const auto mc = discord_mc(s, n, p, 1000, 42);
        const double under = mc.conjectured_bits - 1e-9 - mc.min_bits;
        const double over = mc.max_bits - mc.upper_bound_bits - 1e-9;
        const std::string where = fmt::format("{} N={} p={}", to_string(s), n, p);
        t.expect(under <= 0.0 && over <= 0.0, std::max({0.0, under, over}), where);
        if (under > 0.0) {
          below.push_back(fmt::format("{} (min {:.4f} < {:.4f})", where, mc.min_bits, mc.conjectured_bits));
        }
      }
    }
  }
  auto out = t.finish();
  if (!below.empty()) {
    out.detail += "; below conjecture:";
    for (const auto& b : below) out.detail += " " + b + ";";
  }
  return out;
}

Outcome correlation_identities() {
  Tracker t;
  for (int n = 2; n <= 8; ++n) {
    for (double p : grid(20)) {
      const double base = double(n) * (1.0 - qubit_entropy(p));
      const auto q1 = correlation_report(Strategy::quantum1, n, p);
      const auto q2 = correlation_report(Strategy::quantum2, n, p);
      const std::string where = fmt::format("N={} p={}", n, p);
      const double d_total = std::max({std::abs(q1.total_bits - base), std::abs(q2.total_bits - base),
                                       std::abs(q1.total_bits - q2.total_bits)});
      t.expect(d_total <= 1e-9, d_total, where + " total");
      const double d_indep = std::abs(conjectured_discord(Strategy::quantum1, n, p) -
                                      conjectured_discord(Strategy::quantum1, 2, p));
      t.expect(d_indep <= 1e-12, d_indep, where + " D_Q1 vs N=2");
      const double d_q2 = std::abs(classical_correlations(Strategy::quantum2, n, p) +
                                   conjectured_discord(Strategy::quantum2, n, p) - base);
      t.expect(d_q2 <= 1e-12, d_q2, where + " C_Q2 + D_Q2");
    }
  }
  return t.finish();
}

Outcome determinism() {
  const auto render = [](unsigned workers) {
    SweepConfig c;
    c.strategies = {Strategy::quantum2};
    c.ns = {5};
    c.p_min = c.p_max = 0.5;
    c.trials = 1000;
    c.seed = 42;
    c.workers = workers;
    std::ostringstream samples;
    std::ostringstream summary;
    cmd_discord_mc(c, samples, summary);
    return samples.str() + summary.str();
  };
  const std::string first = render(1);
  const bool repeat = render(1) == first;
  const bool threads2 = render(2) == first;
  const bool threads8 = render(8) == first;
  return {repeat && threads2 && threads8,
          fmt::format("{} bytes; rerun {}, 2 workers {}, 8 workers {}", first.size(),
                      repeat ? "identical" : "differs", threads2 ? "identical" : "differs",
                      threads8 ? "identical" : "differs")};
}

}  // namespace

int main() {
  const std::string q2_counterexample =
      "the Q2 discord formula is not a minimum over product bases: for N=2 the all-X basis "
      "gives 1 - S(rho), below it for every 0 < p < 1";
  const std::vector<Criterion> criteria = {
      {"oracle equivalence (spectral vs closed QFI, N<=6)", oracle_equivalence, 60.0, {}},
      {"pure-state limits (N=2..10)", pure_state_limits, 0.0, {}},
      {"Q2 bound F >= N^2 p^2 (N=2..12)", q2_bound, 0.0, {}},
      {"Cl approximation within 0.1 (N=10)", cl_approximation, 0.0, {}},
      {"entanglement boundaries and PPT agreement", entanglement_boundaries, 0.0, {}},
      {"quantum advantage >= sqrt(N)", quantum_advantage_bound, 0.0, {}},
      {"Cl/Q1 crossing point (N=10)", crossing_point, 0.0, {}},
      {"discord sandwich (MC, N=2..5)", discord_sandwich, 300.0, q2_counterexample},
      {"correlation identities (N=2..8)", correlation_identities, 0.0, {}},
      {"discord-mc determinism", determinism, 0.0, {}},
  };

  int unexpected = 0;
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, fmt::format("threw: {}", e.what())};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt::format("{:.2f}s", seconds);
    if (c.budget_seconds > 0.0) {
      timing += fmt::format(" of {:.0f}s budget", c.budget_seconds);
      if (seconds > c.budget_seconds) {
        out.passed = false;
        out.detail += "; over runtime budget";
      }
    }
    std::cout << (out.passed ? "PASS" : "FAIL") << "  " << c.name << "  [" << timing << "]  "
              << out.detail << '\n';
    if (!out.passed) {
      ++failed;
      if (c.known_failure.empty()) {
        ++unexpected;
      } else {
        std::cout << "      known failure: " << c.known_failure << '\n';
      }
    }
  }
  std::cout << fmt::format("{} criteria, {} passed, {} failed ({} known, {} unexpected)\n",
                           criteria.size(), criteria.size() - failed, failed, failed - unexpected,
                           unexpected);
  return unexpected == 0 ? 0 : 1;
}
