// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "adca/fixtures.hpp"
#include "adca/montecarlo.hpp"
#include "adca/random_walk.hpp"
#include "oracles.hpp"

using namespace adca;

namespace {

struct Outcome {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      note += (note.empty() ? "" : "; ") + what;
    }
  }
};

int failures = 0;

void criterion(int id, const char* title, double budget_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.ok = false;
    o.note = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > budget_s) o.require(false, "runtime " + std::to_string(secs) + " s over budget");
  failures += !o.ok;
  std::printf("[%s] criterion %d: %s (%.2f s, budget %.0f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, title, secs,
              budget_s, o.note.empty() ? "" : " -- ", o.note.c_str());
  std::fflush(stdout);
}

std::size_t coherence_total = 0, monotonicity_total = 0, criterion8_trials = 0;

void tally(const ExperimentResult& r) {
  coherence_total += r.coherence_violations;
  monotonicity_total += r.monotonicity_violations;
  criterion8_trials += r.trials;
}

}  // namespace

int main() {
  criterion(1, "exact replays of printed matrices and products", 1.0, [] {
    Outcome o;
    const auto a = fixtures::partial_update_matrix();
    o.require(make_async_matrix(a, UpdateSet{1}) == fixtures::partial_update_single(), "A_{2}");
    o.require(make_async_matrix(a, UpdateSet{0, 2}) == fixtures::partial_update_pair(), "A_{1,3}");

    const auto five = run_script(fixtures::sia_counterexample_matrix(), fixtures::sia_counterexample_schedule(),
                                 {1, 2, 3, 4, 5});
    o.require(five.product->entries() == fixtures::sia_counterexample_product(), "five-factor product");
    o.require(!is_sia(*five.product), "five-factor product should not be SIA");

    const auto two = run_script(fixtures::swap_matrix(), fixtures::swap_schedule(), {1, -1});
    o.require(two.product->entries() == fixtures::swap_product(), "A_1 A_2 of the swap matrix");
    o.require(is_sia(*two.product), "A_1 A_2 should be SIA");

    const auto three = run_script(fixtures::period3_matrix(), std::vector<UpdateSet>{{2}, {1}, {0}}, {1, 2, 3});
    o.require(three.product->entries() == fixtures::period3_product(), "period-3 product");
    o.require(!is_sia(*three.product), "period-3 product should not be SIA");

    const auto c = fixtures::coverage_violation_matrix();
    const auto pair = multiply(make_async_matrix(c, UpdateSet{1, 3}), make_async_matrix(c, UpdateSet{0, 2}));
    o.require(pair.entries() == fixtures::coverage_violation_product(), "A_{2,4} A_{1,3}");
    return o;
  });

  criterion(2, "property suites against independent oracles", 30.0, [] {
    Outcome o;
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<std::size_t> size(2, 8), small(1, 7), support(1, 8), sparse(1, 3);
    std::uniform_real_distribution<double> entry(-1.0, 1.0);
    int submult = 0, contraction = 0, half_l1 = 0, sia = 0, root = 0, cycles = 0;
    for (int t = 0; t < 1000; ++t) {
      const std::size_t n = size(gen);
      const auto r1 = oracle::random_stochastic(gen, n, support(gen));
      const auto r2 = oracle::random_stochastic(gen, n, support(gen));
      const auto a1 = StochasticMatrix::from_rows(r1), a2 = StochasticMatrix::from_rows(r2);
      const double l1 = ergodic_coefficient(a1);
      submult += ergodic_coefficient(multiply(a1, a2)) <= l1 * ergodic_coefficient(a2) + 1e-10;
      half_l1 += std::abs(l1 - oracle::half_l1_lambda(r1)) <= 1e-12;
      StateVector x(n);
      for (double& v : x) v = entry(gen);
      contraction += max_discrepancy(adca::apply(a1, x)) <= l1 * max_discrepancy(x) + 1e-10;
    }
    for (int t = 0; t < 500; ++t) {
      const auto rows = oracle::random_stochastic(gen, small(gen), sparse(gen));
      const auto a = StochasticMatrix::from_rows(rows);
      sia += is_sia(a) == oracle::power_sia(rows);
      root += roots(build_graph(a)).roots == oracle::bfs_roots(rows);
    }
    std::bernoulli_distribution extra(0.2);
    for (int t = 0; t < 500; ++t) {
      const std::size_t n = size(gen);
      std::vector<Node> perm(n);
      for (Node v = 0; v < n; ++v) perm[v] = v;
      std::shuffle(perm.begin(), perm.end(), gen);
      DirectedGraph g(n);
      for (std::size_t k = 0; k < n; ++k) g.add_edge(perm[k], perm[(k + 1) % n]);
      for (Node u = 0; u < n; ++u)
        for (Node v = 0; v < n; ++v)
          if (extra(gen)) g.add_edge(u, v);
      NodeSet all(n);
      for (Node v = 0; v < n; ++v) all[v] = v;
      const auto c = build_labelled_cycle(g, all);
      NodeSet seen(c.labels().begin(), c.labels().end());
      std::sort(seen.begin(), seen.end());
      seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
      bool ok = seen == all && c.length() <= n * (n - 1);
      for (std::size_t p = 0; p < c.length(); ++p) ok = ok && g.has_edge(c.label(p), c.label(c.successor(p)));
      cycles += ok;
    }
    o.require(submult == 1000, "submultiplicativity " + std::to_string(submult) + "/1000");
    o.require(contraction == 1000, "contraction " + std::to_string(contraction) + "/1000");
    o.require(half_l1 == 1000, "half-L1 oracle " + std::to_string(half_l1) + "/1000");
    o.require(sia == 500, "SIA vs powers " + std::to_string(sia) + "/500");
    o.require(root == 500, "roots vs BFS " + std::to_string(root) + "/500");
    o.require(cycles == 500, "labelled cycles " + std::to_string(cycles) + "/500");
    return o;
  });

  criterion(3, "synchronous six-agent iteration never reaches consensus", 5.0, [] {
    Outcome o;
    ExperimentConfig cfg(fixtures::six_agent_matrix(), SchedulerSpec::synchronous(6));
    cfg.trials = 100;
    cfg.horizon = 1000;
    cfg.epsilon = kDivergenceEpsilon;
    const auto r = run_experiment(cfg);
    tally(r);
    o.require(r.consensus_fraction == 0.0, "consensus fraction " + std::to_string(r.consensus_fraction));
    o.note = o.ok ? "fraction 0, median final Delta " + std::to_string(r.final_delta.median) : o.note;
    return o;
  });

  const auto clock_run = [](const SchedulerSpec& spec) {
    Outcome o;
    ExperimentConfig cfg(fixtures::six_agent_matrix(), spec);
    cfg.trials = 200;
    cfg.horizon = 5000;
    cfg.epsilon = kConsensusEpsilon;
    const auto r = run_experiment(cfg);
    tally(r);
    o.require(r.consensus_fraction >= 0.99, "consensus fraction " + std::to_string(r.consensus_fraction));
    if (o.ok) o.note = "fraction " + std::to_string(r.consensus_fraction);
    return o;
  };
  criterion(4, "global clock 1/6: Delta < 1e-6 by K = 5000 in >= 99% of 200 trials", 60.0,
            [&] { return clock_run(SchedulerSpec::uniform_global_clock(6)); });
  criterion(4, "independent clocks 1/2: Delta < 1e-6 by K = 5000 in >= 99% of 200 trials", 60.0,
            [&] { return clock_run(SchedulerSpec::independent_clocks(6, 0.5)); });

  criterion(5, "condition checker verdicts", 5.0, [] {
    Outcome o;
    const auto ex = check_conditions(fixtures::three_support_scheduler(), fixtures::rooted_cycle_matrix());
    o.require(ex.overall(), "three-support spec should pass");
    o.require(ex.q == std::optional<std::size_t>(1), "q should be 1");
    o.require(ex.chi == NodeSet{0, 1, 2}, "chi should be {1,2,3}");

    const auto cv = check_conditions(fixtures::coverage_violation_scheduler(), fixtures::coverage_violation_matrix());
    o.require(cv.rooted.passed() && cv.positive_probability.passed() && cv.history_independence.passed() &&
                  cv.joint_coverage.passed(),
              "coverage violation: a) to d) should hold");
    o.require(cv.quasi_singleton.verdict == Verdict::fail, "coverage violation: e) should fail");
    o.require(cv.quasi_singleton_witness && cv.quasi_singleton_witness->intersection == NodeSet{0, 2},
              "witness should be {1,3}");

    std::mt19937_64 gen(55);
    std::uniform_int_distribution<std::size_t> size(2, 8);
    std::uniform_real_distribution<double> prob(0.05, 0.95);
    int passed = 0;
    for (int t = 0; t < 50; ++t) {
      const std::size_t n = size(gen);
      const auto a = StochasticMatrix::from_rows(oracle::random_rooted(gen, n));
      std::vector<double> w(n), p(n);
      double total = 0.0;
      for (auto& v : w) total += v = prob(gen);
      for (auto& v : w) v /= total;
      for (auto& v : p) v = prob(gen);
      passed += check_conditions(SchedulerSpec(n, GlobalClock{w}), a).overall() &&
                check_conditions(SchedulerSpec(n, IndependentClocks{p}), a).overall();
    }
    o.require(passed == 50, "single-agent/independent specs on rooted matrices " + std::to_string(passed) + "/50");
    return o;
  });

  criterion(6, "strongly aperiodic check: lhs = 0, rhs = 0.25", 1.0, [] {
    Outcome o;
    const auto r = check_strongly_aperiodic(SchedulerSpec::uniform_global_clock(4), fixtures::rooted_cycle_matrix(),
                                            0, 1);
    o.require(r.lhs == 0.0, "lhs = " + std::to_string(r.lhs));
    o.require(r.rhs == 0.25, "rhs = " + std::to_string(r.rhs));
    o.require(!r.holds, "inequality should fail");
    return o;
  });

  criterion(7, "label walk on a six-position cycle, gamma = 0.2, 10^4 trials", 30.0, [] {
    Outcome o;
    const auto curve = label_match_curve(fixtures::six_position_cycle(), 0, 3, 0.2, 200, 10000, kDefaultSeed);
    bool monotone = true, dominates = true;
    for (std::size_t k = 1; k < curve.empirical.size(); ++k) monotone = monotone && curve.empirical[k] >= curve.empirical[k - 1];
    for (std::size_t k = 0; k < curve.empirical.size(); ++k) dominates = dominates && curve.empirical[k] >= curve.bound[k];
    o.require(monotone, "empirical curve not monotone");
    o.require(curve.empirical[199] >= 0.95, "P(match by 200) = " + std::to_string(curve.empirical[199]));
    o.require(dominates, "bound exceeds the empirical curve");
    if (o.ok) {
      o.note = "P(match by 200) = " + std::to_string(curve.empirical[199]) + ", c0 = " +
               std::to_string(curve.certificate.c0) + ", beta = " + std::to_string(curve.certificate.beta);
    }
    return o;
  });

  criterion(8, "Delta/lambda coherence and lambda monotonicity in every trial of 3 and 4", 1.0, [] {
    Outcome o;
    o.require(criterion8_trials == 500, "expected 500 tracked trials, saw " + std::to_string(criterion8_trials));
    o.require(coherence_total == 0, std::to_string(coherence_total) + " coherence violations");
    o.require(monotonicity_total == 0, std::to_string(monotonicity_total) + " monotonicity violations");
    if (o.ok) o.note = std::to_string(criterion8_trials) + " trials checked at every step";
    return o;
  });

  std::printf("%s: %d failing\n", failures ? "ACCEPTANCE FAILED" : "ACCEPTANCE PASSED", failures);
  return failures ? 1 : 0;
}
