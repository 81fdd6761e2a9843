#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "adca/async.hpp"
#include "adca/graph.hpp"
#include "adca/matrix.hpp"
#include "adca/rng.hpp"

namespace adca {

class SchedulerError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr std::size_t kMaxSupportPeriod = 64;
inline constexpr std::size_t kMaxEnumerableAgents = 20;

enum class SchedulerKind { global_clock, independent_clocks, support_sequence, markov, script };

struct WeightedSupport {
  UpdateSet set;
  double probability = 0.0;
};

/// One agent per tick, P(sigma_k = {j}) = p[j].
struct GlobalClock {
  std::vector<double> p;
};

/// Agent j joins sigma_k independently with probability p[j].
struct IndependentClocks {
  std::vector<double> p;
};

/// Reweights the declared probabilities of one tick given the history drawn
/// so far. Must return one strictly positive weight per declared support, so
/// the support set itself never depends on history.
using HistoryHook = std::function<std::vector<double>(
    std::size_t tick, std::span<const UpdateSet> history, std::span<const WeightedSupport> declared)>;

/// Periodic list of supports; tick k uses ticks[(k - 1) % period].
struct SupportSequence {
  std::vector<std::vector<WeightedSupport>> ticks;
  HistoryHook hook;
};

/// Markov switching over `states`. sigma_1 = states[initial]; sigma_{k+1} is
/// drawn from the column of M_k = constant + inv_k / k indexed by sigma_k.
struct MarkovSwitching {
  std::vector<UpdateSet> states;
  SquareMatrix constant;
  SquareMatrix inv_k;
  std::size_t initial = 0;

  /// M_k, validated column-stochastic.
  ColumnStochasticMatrix transition(std::size_t k) const;
  bool time_invariant() const;
};

/// Fixed list of sets, optionally repeated forever.
struct Script {
  std::vector<UpdateSet> sets;
  bool repeat = false;
};

class SchedulerSpec {
 public:
  using Params = std::variant<GlobalClock, IndependentClocks, SupportSequence, MarkovSwitching, Script>;

  /// Validates the parameters against n agents.
  SchedulerSpec(std::size_t n, Params params);

  static SchedulerSpec uniform_global_clock(std::size_t n);
  static SchedulerSpec independent_clocks(std::size_t n, double p);
  static SchedulerSpec synchronous(std::size_t n);

  std::size_t agents() const { return n_; }
  SchedulerKind kind() const;
  const Params& params() const { return params_; }

 private:
  std::size_t n_;
  Params params_;
};

const char* to_string(SchedulerKind kind);

/// Draws sigma_k for k = history.size() + 1.
UpdateSet draw(const SchedulerSpec& spec, std::span<const UpdateSet> history, CounterRng& rng);

/// Exact one-step distribution at tick k (one-based). Throws SchedulerError for
/// Markov specs, whose next set depends on the past.
std::vector<WeightedSupport> tick_distribution(const SchedulerSpec& spec, std::size_t k);

/// Ticks after which the declared supports repeat (1 for stationary specs).
std::size_t support_period(const SchedulerSpec& spec);

/// A scheduler instance: a spec plus its own RNG stream and history.
class Scheduler {
 public:
  Scheduler(const SchedulerSpec& spec, CounterRng rng) : spec_(&spec), rng_(rng) {}
  UpdateSet next();
  const std::vector<UpdateSet>& history() const { return history_; }

 private:
  const SchedulerSpec* spec_;
  CounterRng rng_;
  std::vector<UpdateSet> history_;
};

enum class Verdict { pass, fail, unknown };
const char* to_string(Verdict v);

struct ConditionVerdict {
  Verdict verdict = Verdict::unknown;
  std::string detail;
  bool passed() const { return verdict == Verdict::pass; }
};

/// Where the quasi-singleton property breaks: at tick k, chi intersected with
/// every support containing `node` leaves `intersection` instead of {node}.
struct QuasiSingletonWitness {
  std::size_t tick = 0;
  Node node = 0;
  NodeSet intersection;
};

/// A window of q_max ticks whose supports miss `missing`.
struct CoverageWitness {
  std::size_t start_tick = 0;
  std::size_t window = 0;
  NodeSet missing;
};

struct ConditionReport {
  ConditionVerdict rooted;                // a)
  ConditionVerdict positive_probability;  // b)
  ConditionVerdict history_independence;  // c)
  ConditionVerdict joint_coverage;        // d)
  ConditionVerdict quasi_singleton;       // e)

  double alpha = 0.0;
  std::optional<std::size_t> q;
  std::optional<CoverageWitness> coverage_witness;
  NodeSet chi;
  std::optional<QuasiSingletonWitness> quasi_singleton_witness;

  /// Simplified variants: a root with a self-loop plus b) and coverage; the
  /// independent case; one agent per tick with chi inside every support; and
  /// every agent selectable alone at every tick.
  ConditionVerdict variant_self_loop;
  ConditionVerdict variant_independent;
  ConditionVerdict variant_singletons;
  ConditionVerdict variant_all_singletons;

  bool overall() const {
    return rooted.passed() && positive_probability.passed() && history_independence.passed() &&
           joint_coverage.passed() && quasi_singleton.passed();
  }
};

inline constexpr std::size_t kDefaultQMax = 16;

ConditionReport check_conditions(const SchedulerSpec& spec, const StochasticMatrix& a,
                               std::size_t q_max = kDefaultQMax);

struct StronglyAperiodicCheck {
  double lhs = 0.0;  // E[A_sigma(i,i) A_sigma(i,j)]
  double rhs = 0.0;  // E[A_sigma(i,j)]
  bool holds = false;
};

/// Evaluates the strongly aperiodic inequality for the pair (i, j) at tick k by
/// enumerating the one-step distribution.
StronglyAperiodicCheck check_strongly_aperiodic(const SchedulerSpec& spec, const StochasticMatrix& a,
                                                Node i, Node j, std::size_t tick = 1);

}  // namespace adca
