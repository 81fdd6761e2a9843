#include "adca/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "adca/fixtures.hpp"
#include "adca/graph.hpp"

namespace adca {

StateVector InitialCondition::draw(std::size_t n, CounterRng& rng) const {
  if (fixed) {
    if (fixed->size() != n) {
      throw DimensionError("initial state has " + std::to_string(fixed->size()) + " entries for " +
                           std::to_string(n) + " agents");
    }
    return *fixed;
  }
  StateVector x(n);
  for (double& v : x) v = rng.uniform(lo, hi);
  return x;
}

void ExperimentConfig::validate() const {
  if (trials == 0) throw std::invalid_argument("experiment needs at least one trial");
  if (horizon == 0) throw std::invalid_argument("experiment horizon must be positive");
  if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
  if (scheduler.agents() != matrix.size()) {
    throw DimensionError("scheduler has " + std::to_string(scheduler.agents()) +
                         " agents, matrix has " + std::to_string(matrix.size()));
  }
  if (init.fixed && init.fixed->size() != matrix.size()) {
    throw DimensionError("initial state length does not match the matrix");
  }
}

unsigned worker_threads(unsigned requested) {
  if (requested > 0) return requested;
  unsigned cap = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ASYNC_DCA_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) cap = std::min(cap, static_cast<unsigned>(v));
  }
  return cap;
}

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t trial, bool record_schedule) {
  CounterRng rng = CounterRng::for_stream(cfg.seed, trial);
  TrialRecord record;
  record.trial = trial;
  record.stream_key = rng.key();
  record.x1 = cfg.init.draw(cfg.matrix.size(), rng);

  Scheduler scheduler(cfg.scheduler, rng);
  TrajectoryState state = TrajectoryState::initial(record.x1, cfg.track_product);
  const double delta1 = max_discrepancy(record.x1);
  record.delta.reserve(cfg.horizon + 1);
  record.delta.push_back(delta1);
  if (cfg.track_product) {
    record.lambda.reserve(cfg.horizon + 1);
    record.lambda.push_back(ergodic_coefficient(*state.product));
  }
  for (std::size_t k = 1; k <= cfg.horizon; ++k) {
    advance(state, cfg.matrix, scheduler.next(), false);
    const double d = max_discrepancy(state.x);
    record.delta.push_back(d);
    if (cfg.track_product) {
      const double lam = ergodic_coefficient(*state.product);
      if (d > lam * delta1 + 1e-9) ++record.coherence_violations;
      if (lam > record.lambda.back() + kProductTolerance) ++record.monotonicity_violations;
      record.lambda.push_back(lam);
    }
  }
  if (record_schedule) record.schedule = scheduler.history();
  record.product = std::move(state.product);
  return record;
}

namespace {

template <typename Fn>
void for_each_trial(std::size_t trials, unsigned threads, Fn&& fn) {
  threads = std::min<unsigned>(threads, static_cast<unsigned>(trials));
  if (threads <= 1) {
    for (std::size_t t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t t = next++; t < trials; t = next++) fn(t);
        } catch (...) {
          errors[w] = std::current_exception();
          next = trials;
        }
      });
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

Quantiles quantiles(std::vector<double> values) {
  Quantiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  const auto at = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  q.min = values.front();
  q.q25 = at(0.25);
  q.median = at(0.5);
  q.q75 = at(0.75);
  q.max = values.back();
  return q;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const std::size_t k_max = cfg.horizon;

  // Per-trial indicator series, reduced afterwards in trial order.
  std::vector<std::vector<char>> delta_hit(cfg.trials), lambda_hit(cfg.trials);
  std::vector<double> final_delta(cfg.trials);
  std::vector<std::size_t> coherence(cfg.trials), monotonicity(cfg.trials);

  for_each_trial(cfg.trials, worker_threads(cfg.threads), [&](std::size_t t) {
    const TrialRecord r = run_trial(cfg, t);
    auto& dh = delta_hit[t];
    dh.resize(k_max);
    for (std::size_t k = 1; k <= k_max; ++k) dh[k - 1] = r.delta[k] >= cfg.epsilon;
    if (cfg.track_product) {
      auto& lh = lambda_hit[t];
      lh.resize(k_max);
      for (std::size_t k = 1; k <= k_max; ++k) lh[k - 1] = r.lambda[k] >= cfg.epsilon;
    }
    final_delta[t] = r.delta.back();
    coherence[t] = r.coherence_violations;
    monotonicity[t] = r.monotonicity_violations;
  });

  ExperimentResult out;
  out.trials = cfg.trials;
  out.horizon = k_max;
  out.epsilon = cfg.epsilon;
  const double inv = 1.0 / static_cast<double>(cfg.trials);
  std::vector<std::size_t> delta_count(k_max, 0), lambda_count(k_max, 0);
  std::size_t converged = 0;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    for (std::size_t k = 0; k < k_max; ++k) delta_count[k] += delta_hit[t][k];
    if (cfg.track_product)
      for (std::size_t k = 0; k < k_max; ++k) lambda_count[k] += lambda_hit[t][k];
    converged += final_delta[t] < cfg.epsilon;
    out.coherence_violations += coherence[t];
    out.monotonicity_violations += monotonicity[t];
  }
  out.p_delta_tail.resize(k_max);
  for (std::size_t k = 0; k < k_max; ++k) out.p_delta_tail[k] = static_cast<double>(delta_count[k]) * inv;
  if (cfg.track_product) {
    out.p_lambda_tail.resize(k_max);
    for (std::size_t k = 0; k < k_max; ++k)
      out.p_lambda_tail[k] = static_cast<double>(lambda_count[k]) * inv;
  }
  out.consensus_fraction = static_cast<double>(converged) * inv;
  out.final_delta = quantiles(final_delta);
  out.final_deltas = std::move(final_delta);
  return out;
}

HitRate wilson_interval(std::size_t hits, std::size_t trials) {
  HitRate h;
  h.hits = hits;
  h.trials = trials;
  if (trials == 0) return h;
  const double z = 1.96;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(hits) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  h.rate = p;
  h.lower = std::max(0.0, centre - half);
  h.upper = std::min(1.0, centre + half);
  return h;
}

HitRate scrambling_hit_rate(const ExperimentConfig& cfg, std::size_t m) {
  ExperimentConfig local = cfg;
  local.horizon = m;
  local.track_product = true;
  if (m == 0) throw std::invalid_argument("M must be positive");
  local.validate();
  std::vector<char> hit(local.trials, 0);
  for_each_trial(local.trials, worker_threads(local.threads), [&](std::size_t t) {
    hit[t] = is_scrambling(*run_trial(local, t).product);
  });
  return wilson_interval(static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1)), local.trials);
}

bool ReplayReport::passed() const {
  return !checks.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const ReplayCheck& c) { return c.passed; });
}

const std::vector<std::string>& replay_cases() {
  static const std::vector<std::string> cases{"example2",           "example3",
                                              "markov_vanishing_alpha", "coverage_violation",
                                              "period3_markov",     "strongly_aperiodic"};
  return cases;
}

namespace {

nlohmann::json rows_json(const SquareMatrix& m) { return m.to_rows(); }

ReplayCheck check(std::string name, bool ok, std::string detail = {}) {
  return {std::move(name), ok, std::move(detail)};
}

StateVector ramp(std::size_t n) {
  StateVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(i + 1);
  return x;
}

ReplayReport replay_example2() {
  ReplayReport r{"example2", {}, {}};
  const auto a = fixtures::sia_counterexample_matrix();
  const auto schedule = fixtures::sia_counterexample_schedule();
  const auto state = run_script(a, schedule, ramp(5));
  const auto& product = *state.product;
  r.checks.push_back(check("matrix is SIA", is_sia(a)));
  r.checks.push_back(check("A3 A2 A1 A4 A5 matches the printed product",
                           product.entries() == fixtures::sia_counterexample_product()));
  r.checks.push_back(check("period product is not SIA", !is_sia(product)));

  std::vector<UpdateSet> repeated;
  for (int rep = 0; rep < 200; ++rep) repeated.insert(repeated.end(), schedule.begin(), schedule.end());
  const auto long_run = run_script(a, repeated, ramp(5));
  const double d = max_discrepancy(long_run.x);
  r.checks.push_back(check("periodic schedule keeps a discrepancy after 1000 ticks",
                           d >= kDivergenceEpsilon, "Delta = " + std::to_string(d)));
  r.details = {{"product", rows_json(product.entries())}, {"final_delta", d}};
  return r;
}

ReplayReport replay_example3() {
  ReplayReport r{"example3", {}, {}};
  const auto a = fixtures::swap_matrix();
  const auto state = run_script(a, fixtures::swap_schedule(), {1.0, -1.0});
  const auto& product = *state.product;
  r.checks.push_back(check("matrix is not SIA", !is_sia(a)));
  r.checks.push_back(check("A1 A2 matches the printed product", product.entries() == fixtures::swap_product()));
  r.checks.push_back(check("A1 A2 is SIA", is_sia(product)));
  r.checks.push_back(check("consensus after two ticks", max_discrepancy(state.x) == 0.0,
                           "x = (" + std::to_string(state.x[0]) + ", " + std::to_string(state.x[1]) + ")"));
  r.details = {{"product", rows_json(product.entries())}, {"x", state.x}};
  return r;
}

ReplayReport replay_vanishing_alpha() {
  ReplayReport r{"markov_vanishing_alpha", {}, {}};
  const auto a = fixtures::vanishing_alpha_matrix();

  bool closed_form = true;
  StochasticMatrix power = StochasticMatrix::identity(3);
  const auto a1 = make_async_matrix(a, UpdateSet{0});
  for (unsigned k = 1; k <= 30; ++k) {
    power = multiply(a1, power);
    closed_form = closed_form && max_abs_difference(power.entries(), fixtures::vanishing_alpha_power(k)) <= 1e-15;
  }
  r.checks.push_back(check("A_1^k matches its closed form for k <= 30", closed_form));

  const auto report = check_conditions(fixtures::vanishing_alpha_scheduler(), a);
  r.checks.push_back(check("positive-probability bound fails", !report.positive_probability.passed(),
                           report.positive_probability.detail));

  ExperimentConfig cfg(a, fixtures::vanishing_alpha_scheduler());
  cfg.trials = 200;
  cfg.horizon = 300;
  cfg.epsilon = kDivergenceEpsilon;
  const auto result = run_experiment(cfg);
  r.checks.push_back(check("median Delta(x(K)) > 0.05 at K = 300 over 200 trials",
                           result.final_delta.median > 0.05,
                           "median = " + std::to_string(result.final_delta.median)));
  r.details = {{"median_final_delta", result.final_delta.median},
               {"consensus_fraction", result.consensus_fraction},
               {"alpha", report.alpha},
               {"operationalization", "desk-scale: K = 300, T = 200, median threshold 0.05"}};
  return r;
}

ReplayReport replay_coverage_violation() {
  ReplayReport r{"coverage_violation", {}, {}};
  const auto a = fixtures::coverage_violation_matrix();
  const auto spec = fixtures::coverage_violation_scheduler();
  const auto report = check_conditions(spec, a);
  r.checks.push_back(check("conditions a) to d) hold",
                           report.rooted.passed() && report.positive_probability.passed() &&
                               report.history_independence.passed() && report.joint_coverage.passed()));
  const bool witness = report.quasi_singleton_witness &&
                       report.quasi_singleton_witness->intersection == NodeSet{0, 2};
  r.checks.push_back(check("quasi-singleton property fails with witness {1,3}",
                           !report.quasi_singleton.passed() && witness, report.quasi_singleton.detail));

  const auto product = multiply(make_async_matrix(a, UpdateSet{1, 3}), make_async_matrix(a, UpdateSet{0, 2}));
  r.checks.push_back(check("A_{2,4} A_{1,3} matches the printed product",
                           product.entries() == fixtures::coverage_violation_product()));
  r.checks.push_back(check("A_{2,4} A_{1,3} is not SIA", !is_sia(product)));

  ExperimentConfig cfg(a, spec);
  cfg.trials = 100;
  cfg.horizon = 400;
  cfg.epsilon = kDivergenceEpsilon;
  const auto result = run_experiment(cfg);
  r.checks.push_back(check("no consensus at eps = 1e-3 after 400 ticks", result.consensus_fraction < 0.05,
                           "consensus fraction = " + std::to_string(result.consensus_fraction)));
  r.details = {{"q", report.q.value_or(0)},
               {"product", rows_json(product.entries())},
               {"consensus_fraction", result.consensus_fraction}};
  return r;
}

ReplayReport replay_period3() {
  ReplayReport r{"period3_markov", {}, {}};
  const auto a = fixtures::period3_matrix();
  const auto spec = fixtures::period3_scheduler();
  const auto bar = run_script(a, std::vector<UpdateSet>{{2}, {1}, {0}}, ramp(3));
  r.checks.push_back(check("A1 A2 A3 matches the printed product",
                           bar.product->entries() == fixtures::period3_product()));
  r.checks.push_back(check("the period product is not SIA", !is_sia(*bar.product)));

  bool idempotent = true;
  for (Node j = 0; j < 3; ++j) {
    const auto aj = make_async_matrix(a, UpdateSet{j});
    idempotent = idempotent && multiply(aj, aj) == aj;
  }
  r.checks.push_back(check("A_j^k = A_j", idempotent));

  const auto& m = std::get<MarkovSwitching>(spec.params());
  const auto t = m.transition(1);
  const std::vector<NodeSet> expected{{0, 2}, {0, 1}, {1, 2}};
  bool supports = true;
  for (std::size_t from = 0; from < 3; ++from) {
    NodeSet next;
    for (std::size_t to = 0; to < 3; ++to)
      if (t(to, from) > 0.0) next.push_back(to);
    supports = supports && next == expected[from];
  }
  r.checks.push_back(check("next-tick supports depend on the current agent", supports));
  const auto report = check_conditions(spec, a);
  r.checks.push_back(check("history independence is not established",
                           report.history_independence.verdict != Verdict::pass,
                           report.history_independence.detail));

  ExperimentConfig cfg(a, spec);
  cfg.trials = 100;
  cfg.horizon = 300;
  cfg.epsilon = kDivergenceEpsilon;
  const auto result = run_experiment(cfg);
  r.checks.push_back(check("no consensus at eps = 1e-3 after 300 ticks", result.consensus_fraction < 0.05,
                           "consensus fraction = " + std::to_string(result.consensus_fraction)));
  r.details = {{"product", rows_json(bar.product->entries())},
               {"consensus_fraction", result.consensus_fraction}};
  return r;
}

ReplayReport replay_strongly_aperiodic() {
  ReplayReport r{"strongly_aperiodic", {}, {}};
  const auto a = fixtures::rooted_cycle_matrix();
  const auto spec = SchedulerSpec::uniform_global_clock(4);
  const auto sa = check_strongly_aperiodic(spec, a, 0, 1);
  r.checks.push_back(check("lhs = 0", sa.lhs == 0.0, std::to_string(sa.lhs)));
  r.checks.push_back(check("rhs = 1/4", sa.rhs == 0.25, std::to_string(sa.rhs)));
  r.checks.push_back(check("inequality fails", !sa.holds));
  const auto report = check_conditions(spec, a);
  r.checks.push_back(check("independent-tick conditions hold", report.variant_independent.passed(),
                           report.variant_independent.detail));
  r.details = {{"lhs", sa.lhs}, {"rhs", sa.rhs}, {"holds", sa.holds}};
  return r;
}

}  // namespace

ReplayReport replay(const std::string& case_id) {
  if (case_id == "example2") return replay_example2();
  if (case_id == "example3") return replay_example3();
  if (case_id == "markov_vanishing_alpha") return replay_vanishing_alpha();
  if (case_id == "coverage_violation") return replay_coverage_violation();
  if (case_id == "period3_markov") return replay_period3();
  if (case_id == "strongly_aperiodic") return replay_strongly_aperiodic();
  throw std::invalid_argument("unknown replay case '" + case_id + "'");
}

}  // namespace adca
