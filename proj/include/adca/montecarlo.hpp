#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "adca/async.hpp"
#include "adca/matrix.hpp"
#include "adca/rng.hpp"
#include "adca/scheduler.hpp"

namespace adca {

inline constexpr std::uint64_t kDefaultSeed = 20190101;
inline constexpr double kConsensusEpsilon = 1e-6;
inline constexpr double kDivergenceEpsilon = 1e-3;

/// Initial states: uniform on [lo, hi]^N per trial unless `fixed` is given.
struct InitialCondition {
  std::optional<StateVector> fixed;
  double lo = -1.0;
  double hi = 1.0;

  StateVector draw(std::size_t n, CounterRng& rng) const;
};

struct ExperimentConfig {
  ExperimentConfig(StochasticMatrix m, SchedulerSpec s) : matrix(std::move(m)), scheduler(std::move(s)) {}

  StochasticMatrix matrix;
  SchedulerSpec scheduler;
  std::size_t trials = 200;
  std::size_t horizon = 1000;
  double epsilon = kConsensusEpsilon;
  std::uint64_t seed = kDefaultSeed;
  InitialCondition init;
  /// Accumulate A_{sigma_{k:1}}; required for lambda statistics.
  bool track_product = true;
  /// 0: ASYNC_DCA_THREADS if set, else hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

/// One trajectory of an experiment.
struct TrialRecord {
  std::size_t trial = 0;
  std::uint64_t stream_key = 0;
  StateVector x1;
  std::vector<UpdateSet> schedule;  // only when requested
  std::vector<double> delta;        // delta[k] = Delta(x(k+1)), k = 0..K
  std::vector<double> lambda;       // lambda[k] = lambda(A_{sigma_{k:1}}), lambda[0] = lambda(I)
  std::optional<StochasticMatrix> product;
  /// Steps where Delta(x(k+1)) > lambda(A_{sigma_{k:1}}) Delta(x(1)) + 1e-9.
  std::size_t coherence_violations = 0;
  /// Steps where lambda of the running product grew by more than 1e-10.
  std::size_t monotonicity_violations = 0;
};

TrialRecord run_trial(const ExperimentConfig& cfg, std::size_t trial, bool record_schedule = false);

struct Quantiles {
  double min = 0.0, q25 = 0.0, median = 0.0, q75 = 0.0, max = 0.0;
};

struct ExperimentResult {
  std::size_t trials = 0;
  std::size_t horizon = 0;
  double epsilon = 0.0;
  /// index k - 1 for k = 1..K: P(Delta(x(k+1)) >= eps), P(lambda(A_{sigma_{k:1}}) >= eps).
  std::vector<double> p_delta_tail;
  std::vector<double> p_lambda_tail;  // empty without product tracking
  /// Fraction of trials with Delta(x(K+1)) < eps.
  double consensus_fraction = 0.0;
  Quantiles final_delta;
  std::vector<double> final_deltas;  // per trial, trial order
  std::size_t coherence_violations = 0;
  std::size_t monotonicity_violations = 0;
};

ExperimentResult run_experiment(const ExperimentConfig& cfg);

Quantiles quantiles(std::vector<double> values);

struct HitRate {
  std::size_t hits = 0;
  std::size_t trials = 0;
  double rate = 0.0;
  double lower = 0.0;  // Wilson 95%
  double upper = 0.0;
};

/// Wilson score interval at z = 1.96.
HitRate wilson_interval(std::size_t hits, std::size_t trials);

/// Fraction of trials whose product A_{sigma_{M:1}} is scrambling.
HitRate scrambling_hit_rate(const ExperimentConfig& cfg, std::size_t m);

struct ReplayCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct ReplayReport {
  std::string case_id;
  std::vector<ReplayCheck> checks;
  nlohmann::json details;
  bool passed() const;
};

/// Canned cases: example2, example3, markov_vanishing_alpha,
/// coverage_violation, period3_markov, strongly_aperiodic.
const std::vector<std::string>& replay_cases();
ReplayReport replay(const std::string& case_id);

unsigned worker_threads(unsigned requested);

}  // namespace adca
