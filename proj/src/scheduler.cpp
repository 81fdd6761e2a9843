#include "adca/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace adca {

namespace {

std::string format_set(const NodeSet& nodes) {
  std::ostringstream out;
  out << '{';
  for (std::size_t i = 0; i < nodes.size(); ++i) out << (i ? "," : "") << nodes[i] + 1;
  out << '}';
  return out.str();
}

void check_probability_vector(std::span<const double> p, std::size_t n, const char* what) {
  if (p.size() != n) {
    throw DimensionError(std::string(what) + " has " + std::to_string(p.size()) +
                         " probabilities for " + std::to_string(n) + " agents");
  }
  for (double v : p)
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
      throw SchedulerError(std::string(what) + " probability outside [0, 1]");
}

void check_distribution(std::span<const WeightedSupport> supports, std::size_t n, std::size_t tick) {
  if (supports.empty()) throw SchedulerError("tick " + std::to_string(tick) + " has no supports");
  double total = 0.0;
  for (std::size_t s = 0; s < supports.size(); ++s) {
    supports[s].set.check_range(n);
    const double p = supports[s].probability;
    if (!std::isfinite(p) || p < 0.0) {
      throw SchedulerError("tick " + std::to_string(tick) + " has a negative probability");
    }
    total += p;
    for (std::size_t t = 0; t < s; ++t)
      if (supports[t].set == supports[s].set)
        throw SchedulerError("tick " + std::to_string(tick) + " lists a support twice");
  }
  if (std::abs(total - 1.0) > kRowSumTolerance) {
    throw SchedulerError("tick " + std::to_string(tick) + " probabilities sum to " +
                         std::to_string(total));
  }
}

template <typename Weights>
std::size_t sample_index(const Weights& weights, CounterRng& rng) {
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cumulative += weights[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  return last_positive;
}

}  // namespace

ColumnStochasticMatrix MarkovSwitching::transition(std::size_t k) const {
  if (k == 0) throw SchedulerError("Markov transition index starts at 1");
  SquareMatrix m(constant.size());
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j)
      m(i, j) = constant(i, j) + inv_k(i, j) / static_cast<double>(k);
  return ColumnStochasticMatrix(std::move(m));
}

bool MarkovSwitching::time_invariant() const {
  for (std::size_t i = 0; i < inv_k.size(); ++i)
    for (std::size_t j = 0; j < inv_k.size(); ++j)
      if (inv_k(i, j) != 0.0) return false;
  return true;
}

SchedulerSpec::SchedulerSpec(std::size_t n, Params params) : n_(n), params_(std::move(params)) {
  if (n_ == 0) throw SchedulerError("scheduler needs at least one agent");
  std::visit(
      [n](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GlobalClock>) {
          check_probability_vector(p.p, n, "global clock");
          const double total = std::accumulate(p.p.begin(), p.p.end(), 0.0);
          if (std::abs(total - 1.0) > kRowSumTolerance)
            throw SchedulerError("global clock probabilities sum to " + std::to_string(total));
        } else if constexpr (std::is_same_v<T, IndependentClocks>) {
          check_probability_vector(p.p, n, "independent clocks");
        } else if constexpr (std::is_same_v<T, SupportSequence>) {
          if (p.ticks.empty() || p.ticks.size() > kMaxSupportPeriod) {
            throw SchedulerError("support sequence period must be in 1.." +
                                 std::to_string(kMaxSupportPeriod));
          }
          for (std::size_t t = 0; t < p.ticks.size(); ++t) check_distribution(p.ticks[t], n, t + 1);
        } else if constexpr (std::is_same_v<T, MarkovSwitching>) {
          const std::size_t s = p.states.size();
          if (s == 0) throw SchedulerError("Markov scheduler needs at least one state");
          for (std::size_t a = 0; a < s; ++a) {
            p.states[a].check_range(n);
            for (std::size_t b = 0; b < a; ++b)
              if (p.states[a] == p.states[b]) throw SchedulerError("Markov state listed twice");
          }
          if (p.constant.size() != s || p.inv_k.size() != s) {
            throw DimensionError("Markov transition matrix must be " + std::to_string(s) + "x" +
                                 std::to_string(s));
          }
          if (p.initial >= s) throw SchedulerError("Markov initial state out of range");
          // Entries are affine in 1/k, so k = 1 and the k -> infinity limit
          // bound every tick.
          p.transition(1);
          ColumnStochasticMatrix limit(p.constant);
          (void)limit;
        } else {
          if (p.sets.empty()) throw SchedulerError("script must list at least one update set");
          for (const auto& s : p.sets) s.check_range(n);
        }
      },
      params_);
}

SchedulerSpec SchedulerSpec::uniform_global_clock(std::size_t n) {
  return SchedulerSpec(n, GlobalClock{std::vector<double>(n, 1.0 / static_cast<double>(n))});
}

SchedulerSpec SchedulerSpec::independent_clocks(std::size_t n, double p) {
  return SchedulerSpec(n, IndependentClocks{std::vector<double>(n, p)});
}

SchedulerSpec SchedulerSpec::synchronous(std::size_t n) {
  return SchedulerSpec(n, Script{{UpdateSet::all(n)}, true});
}

SchedulerKind SchedulerSpec::kind() const {
  return static_cast<SchedulerKind>(params_.index());
}

const char* to_string(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::global_clock: return "global_clock";
    case SchedulerKind::independent_clocks: return "independent_clocks";
    case SchedulerKind::support_sequence: return "support_sequence";
    case SchedulerKind::markov: return "markov";
    case SchedulerKind::script: return "script";
  }
  return "unknown";
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::unknown: return "unknown";
  }
  return "unknown";
}

UpdateSet draw(const SchedulerSpec& spec, std::span<const UpdateSet> history, CounterRng& rng) {
  const std::size_t tick = history.size() + 1;
  return std::visit(
      [&](const auto& p) -> UpdateSet {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, GlobalClock>) {
          return UpdateSet{sample_index(p.p, rng)};
        } else if constexpr (std::is_same_v<T, IndependentClocks>) {
          std::vector<Node> members;
          for (Node j = 0; j < p.p.size(); ++j)
            if (rng.bernoulli(p.p[j])) members.push_back(j);
          return UpdateSet(std::move(members));
        } else if constexpr (std::is_same_v<T, SupportSequence>) {
          const auto& declared = p.ticks[(tick - 1) % p.ticks.size()];
          std::vector<double> weights(declared.size());
          if (p.hook) {
            weights = p.hook(tick, history, declared);
            if (weights.size() != declared.size())
              throw SchedulerError("history hook returned the wrong number of weights");
            for (double w : weights)
              if (!(w > 0.0)) throw SchedulerError("history hook must keep every support positive");
          } else {
            for (std::size_t s = 0; s < declared.size(); ++s) weights[s] = declared[s].probability;
          }
          const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
          for (double& w : weights) w /= total;
          return declared[sample_index(weights, rng)].set;
        } else if constexpr (std::is_same_v<T, MarkovSwitching>) {
          if (history.empty()) return p.states[p.initial];
          const auto it = std::find(p.states.begin(), p.states.end(), history.back());
          if (it == p.states.end()) {
            throw SchedulerError("history ends in a set that is not a Markov state");
          }
          const std::size_t from = static_cast<std::size_t>(it - p.states.begin());
          const ColumnStochasticMatrix m = p.transition(history.size());
          std::vector<double> column(m.size());
          for (std::size_t i = 0; i < m.size(); ++i) column[i] = m(i, from);
          return p.states[sample_index(column, rng)];
        } else {
          if (history.size() >= p.sets.size() && !p.repeat) {
            throw SchedulerError("script exhausted after " + std::to_string(p.sets.size()) + " ticks");
          }
          return p.sets[history.size() % p.sets.size()];
        }
      },
      spec.params());
}

UpdateSet Scheduler::next() {
  UpdateSet sigma = draw(*spec_, history_, rng_);
  history_.push_back(sigma);
  return sigma;
}

std::vector<WeightedSupport> tick_distribution(const SchedulerSpec& spec, std::size_t k) {
  if (k == 0) throw SchedulerError("ticks are numbered from 1");
  return std::visit(
      [&](const auto& p) -> std::vector<WeightedSupport> {
        using T = std::decay_t<decltype(p)>;
        std::vector<WeightedSupport> out;
        if constexpr (std::is_same_v<T, GlobalClock>) {
          for (Node j = 0; j < p.p.size(); ++j)
            if (p.p[j] > 0.0) out.push_back({UpdateSet{j}, p.p[j]});
        } else if constexpr (std::is_same_v<T, IndependentClocks>) {
          const std::size_t n = p.p.size();
          if (n > kMaxEnumerableAgents) {
            throw SchedulerError("independent clocks on more than " +
                                 std::to_string(kMaxEnumerableAgents) + " agents are not enumerated");
          }
          for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
            double prob = 1.0;
            std::vector<Node> members;
            for (Node j = 0; j < n; ++j) {
              const bool in = (mask >> j) & 1U;
              prob *= in ? p.p[j] : 1.0 - p.p[j];
              if (in) members.push_back(j);
            }
            if (prob > 0.0) out.push_back({UpdateSet(std::move(members)), prob});
          }
        } else if constexpr (std::is_same_v<T, SupportSequence>) {
          for (const auto& s : p.ticks[(k - 1) % p.ticks.size()])
            if (s.probability > 0.0) out.push_back(s);
        } else if constexpr (std::is_same_v<T, MarkovSwitching>) {
          throw SchedulerError("Markov schedulers have no history-free one-step distribution");
        } else {
          if (k > p.sets.size() && !p.repeat) throw SchedulerError("script exhausted");
          out.push_back({p.sets[(k - 1) % p.sets.size()], 1.0});
        }
        return out;
      },
      spec.params());
}

std::size_t support_period(const SchedulerSpec& spec) {
  if (const auto* s = std::get_if<SupportSequence>(&spec.params())) return s->ticks.size();
  if (const auto* s = std::get_if<Script>(&spec.params())) return s->sets.size();
  return 1;
}

namespace {

// Per-tick support summaries. Independent clocks are handled in closed form:
// every subset that contains the sure agents (p = 1) and avoids the
// impossible ones (p = 0) has positive probability.

NodeSet tick_union(const SchedulerSpec& spec, std::size_t k) {
  std::vector<bool> in(spec.agents(), false);
  if (const auto* c = std::get_if<IndependentClocks>(&spec.params())) {
    for (Node j = 0; j < c->p.size(); ++j) in[j] = c->p[j] > 0.0;
  } else {
    for (const auto& s : tick_distribution(spec, k))
      for (Node v : s.set.members()) in[v] = true;
  }
  NodeSet out;
  for (Node v = 0; v < in.size(); ++v)
    if (in[v]) out.push_back(v);
  return out;
}

/// Intersection of every positive-probability support that contains j; empty
/// when no support contains j.
NodeSet supports_intersection(const SchedulerSpec& spec, std::size_t k, Node j) {
  if (const auto* c = std::get_if<IndependentClocks>(&spec.params())) {
    if (!(c->p[j] > 0.0)) return {};
    NodeSet out;
    for (Node i = 0; i < c->p.size(); ++i)
      if (i == j || c->p[i] >= 1.0) out.push_back(i);
    return out;
  }
  std::optional<NodeSet> acc;
  for (const auto& s : tick_distribution(spec, k)) {
    if (!s.set.contains(j)) continue;
    if (!acc) {
      acc = s.set.members();
    } else {
      NodeSet merged;
      std::set_intersection(acc->begin(), acc->end(), s.set.members().begin(),
                            s.set.members().end(), std::back_inserter(merged));
      acc = std::move(merged);
    }
  }
  return acc.value_or(NodeSet{});
}

double tick_alpha(const SchedulerSpec& spec, std::size_t k) {
  if (const auto* c = std::get_if<IndependentClocks>(&spec.params())) {
    double alpha = 1.0;
    for (double p : c->p)
      if (p > 0.0 && p < 1.0) alpha *= std::min(p, 1.0 - p);
    return alpha;
  }
  double alpha = std::numeric_limits<double>::infinity();
  for (const auto& s : tick_distribution(spec, k)) alpha = std::min(alpha, s.probability);
  return alpha;
}

/// Infimum over k >= 1 of the positive entries of c + d / k.
double markov_alpha(const MarkovSwitching& m) {
  double alpha = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m.constant.size(); ++i) {
    for (std::size_t j = 0; j < m.constant.size(); ++j) {
      const double c = m.constant(i, j);
      const double d = m.inv_k(i, j);
      if (d == 0.0) {
        if (c > 0.0) alpha = std::min(alpha, c);
      } else if (d > 0.0) {
        // Decreasing towards c; positive throughout.
        alpha = std::min(alpha, c);
      } else {
        // Increasing towards c; the first positive value is the smallest.
        if (c <= 0.0) continue;
        const double first_k = std::floor(-d / c) + 1.0;
        alpha = std::min(alpha, c + d / std::max(first_k, 1.0));
      }
    }
  }
  return std::isfinite(alpha) ? alpha : 0.0;
}

ConditionVerdict verdict(bool ok, std::string detail) {
  return {ok ? Verdict::pass : Verdict::fail, std::move(detail)};
}

/// Coverage for Markov switching with a time-invariant M: from the current
/// state (or the deterministic first tick), the sets reachable within q ticks
/// must jointly cover V.
std::optional<std::size_t> markov_coverage_q(const MarkovSwitching& m, std::size_t n, std::size_t q_max) {
  const std::size_t s = m.states.size();
  const ColumnStochasticMatrix t = m.transition(1);
  std::vector<bool> reachable(s, false);
  {
    std::vector<std::size_t> stack{m.initial};
    reachable[m.initial] = true;
    while (!stack.empty()) {
      const std::size_t from = stack.back();
      stack.pop_back();
      for (std::size_t to = 0; to < s; ++to)
        if (t(to, from) > 0.0 && !reachable[to]) {
          reachable[to] = true;
          stack.push_back(to);
        }
    }
  }
  // Starting points: the first tick itself, and every reachable state as the
  // previous tick.
  std::vector<std::pair<std::vector<bool>, std::size_t>> starts;
  {
    std::vector<bool> first(s, false);
    first[m.initial] = true;
    starts.emplace_back(first, 0);
  }
  for (std::size_t from = 0; from < s; ++from) {
    if (!reachable[from]) continue;
    std::vector<bool> front(s, false);
    front[from] = true;
    starts.emplace_back(front, 1);
  }
  for (std::size_t q = 1; q <= q_max; ++q) {
    bool all = true;
    for (const auto& [seed, shift] : starts) {
      std::vector<bool> front = seed;
      std::vector<bool> covered(n, false);
      for (std::size_t w = 0; w < shift; ++w) {
        std::vector<bool> next(s, false);
        for (std::size_t from = 0; from < s; ++from)
          if (front[from])
            for (std::size_t to = 0; to < s; ++to)
              if (t(to, from) > 0.0) next[to] = true;
        front = next;
      }
      for (std::size_t w = 0; w < q; ++w) {
        for (std::size_t a = 0; a < s; ++a)
          if (front[a])
            for (Node v : m.states[a].members()) covered[v] = true;
        std::vector<bool> next(s, false);
        for (std::size_t from = 0; from < s; ++from)
          if (front[from])
            for (std::size_t to = 0; to < s; ++to)
              if (t(to, from) > 0.0) next[to] = true;
        front = next;
      }
      if (std::find(covered.begin(), covered.end(), false) != covered.end()) {
        all = false;
        break;
      }
    }
    if (all) return q;
  }
  return std::nullopt;
}

}  // namespace

ConditionReport check_conditions(const SchedulerSpec& spec, const StochasticMatrix& a, std::size_t q_max) {
  if (spec.agents() != a.size()) {
    throw DimensionError("scheduler has " + std::to_string(spec.agents()) + " agents, matrix has " +
                         std::to_string(a.size()));
  }
  const std::size_t n = a.size();
  ConditionReport report;

  const DirectedGraph g = build_graph(a);
  const RootReport root_report = roots(g);
  report.rooted = verdict(root_report.rooted, root_report.rooted
                                                  ? "roots " + format_set(root_report.roots)
                                                  : "G(A) has no root");
  bool root_self_loop = false;
  for (Node r : root_report.roots) root_self_loop = root_self_loop || a(r, r) > 0.0;

  if (const auto* markov = std::get_if<MarkovSwitching>(&spec.params())) {
    report.alpha = markov_alpha(*markov);
    report.positive_probability =
        verdict(report.alpha > 0.0, report.alpha > 0.0 ? "alpha = " + std::to_string(report.alpha)
                                                       : "positive transition probabilities approach 0");
    report.history_independence = {Verdict::unknown,
                                   "Markov supports depend on the previous state; not established"};
    report.joint_coverage = {Verdict::unknown, "supports are history dependent"};
    report.quasi_singleton = {Verdict::unknown, "supports are history dependent"};

    if (markov->time_invariant()) {
      const auto q = markov_coverage_q(*markov, n, q_max);
      report.variant_self_loop =
          verdict(root_report.rooted && root_self_loop && report.alpha > 0.0 && q.has_value(),
                  q ? "history-conditional coverage with q = " + std::to_string(*q)
                    : "no history-conditional coverage within q_max");
    } else {
      report.variant_self_loop = {Verdict::unknown, "time-varying transitions"};
    }
    report.variant_independent = {Verdict::fail, "Markov switching is not independent"};
    report.variant_singletons = {Verdict::unknown, "supports are history dependent"};
    report.variant_all_singletons = verdict(
        n == 1, n == 1 ? "single agent" : "the first tick is deterministic, so not every agent is possible");
    return report;
  }

  const std::size_t period = support_period(spec);

  // b)
  report.alpha = std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t <= period; ++t) report.alpha = std::min(report.alpha, tick_alpha(spec, t));
  report.positive_probability = verdict(report.alpha > 0.0, "alpha = " + std::to_string(report.alpha));

  // c)
  const auto* sequence = std::get_if<SupportSequence>(&spec.params());
  report.history_independence = {
      Verdict::pass, sequence && sequence->hook
                         ? "history hook only reweights the declared supports"
                         : "supports depend on the tick only"};

  // d)
  std::vector<NodeSet> unions(period);
  for (std::size_t t = 0; t < period; ++t) unions[t] = tick_union(spec, t + 1);
  const auto window_missing = [&](std::size_t start, std::size_t q) {
    std::vector<bool> covered(n, false);
    for (std::size_t w = 0; w < q; ++w)
      for (Node v : unions[(start + w) % period]) covered[v] = true;
    NodeSet missing;
    for (Node v = 0; v < n; ++v)
      if (!covered[v]) missing.push_back(v);
    return missing;
  };
  for (std::size_t q = 1; q <= q_max && !report.q; ++q) {
    bool ok = true;
    for (std::size_t start = 0; start < period && ok; ++start) ok = window_missing(start, q).empty();
    if (ok) report.q = q;
  }
  if (report.q) {
    report.joint_coverage = {Verdict::pass, "q = " + std::to_string(*report.q)};
  } else {
    for (std::size_t start = 0; start < period; ++start) {
      NodeSet missing = window_missing(start, q_max);
      if (!missing.empty()) {
        report.coverage_witness = CoverageWitness{start + 1, q_max, missing};
        report.joint_coverage = {Verdict::fail, "window of " + std::to_string(q_max) +
                                                    " ticks from tick " + std::to_string(start + 1) +
                                                    " never selects " + format_set(missing)};
        break;
      }
    }
  }

  // e) Within the root set every candidate component equals the root set, so
  // chi is unique when G(A) is rooted.
  bool chi_inside_every_tick = root_report.rooted;
  if (!root_report.rooted) {
    report.quasi_singleton = {Verdict::fail, "no strongly connected component of roots"};
  } else {
    report.chi = root_report.chi;
    for (std::size_t t = 1; t <= period && !report.quasi_singleton_witness; ++t) {
      for (Node j : report.chi) {
        const NodeSet all = supports_intersection(spec, t, j);
        NodeSet in_chi;
        std::set_intersection(all.begin(), all.end(), report.chi.begin(), report.chi.end(),
                              std::back_inserter(in_chi));
        if (in_chi != NodeSet{j}) {
          report.quasi_singleton_witness = QuasiSingletonWitness{t, j, in_chi};
          break;
        }
      }
    }
    if (report.quasi_singleton_witness) {
      const auto& w = *report.quasi_singleton_witness;
      report.quasi_singleton = {
          Verdict::fail, w.intersection.empty()
                             ? "at tick " + std::to_string(w.tick) + " no support contains node " +
                                   std::to_string(w.node + 1)
                             : "at tick " + std::to_string(w.tick) + " node " + std::to_string(w.node + 1) +
                                   " is always updated together with chi members " +
                                   format_set(w.intersection)};
    } else {
      report.quasi_singleton = {Verdict::pass, "chi = " + format_set(report.chi)};
    }
    for (std::size_t t = 1; t <= period && chi_inside_every_tick; ++t) {
      if (std::holds_alternative<IndependentClocks>(spec.params())) break;
      const auto dist = tick_distribution(spec, t);
      for (Node j : report.chi) {
        const bool alone = std::any_of(dist.begin(), dist.end(),
                                       [&](const WeightedSupport& s) { return s.set == UpdateSet{j}; });
        if (!alone) chi_inside_every_tick = false;
      }
    }
  }

  // Simplified variants.
  report.variant_self_loop =
      verdict(root_report.rooted && root_self_loop && report.alpha > 0.0 && report.q.has_value(),
              root_self_loop ? "a root carries a self-loop" : "no root carries a self-loop");

  const bool independent = !(sequence && sequence->hook);
  report.variant_independent =
      verdict(independent && report.rooted.passed() && report.positive_probability.passed() &&
                  report.joint_coverage.passed() && report.quasi_singleton.passed(),
              independent ? "independent ticks" : "history hook makes ticks dependent");

  bool singletons_only = !std::holds_alternative<IndependentClocks>(spec.params());
  for (std::size_t t = 1; t <= period && singletons_only; ++t)
    for (const auto& s : tick_distribution(spec, t))
      if (s.set.size() != 1) singletons_only = false;
  report.variant_singletons =
      verdict(singletons_only && report.rooted.passed() && report.positive_probability.passed() &&
                  report.joint_coverage.passed() && chi_inside_every_tick,
              singletons_only ? (chi_inside_every_tick ? "chi is selectable alone at every tick"
                                                       : "some chi node is not selectable at some tick")
                              : "some support is not a singleton");

  bool every_singleton = true;
  for (std::size_t t = 1; t <= period && every_singleton; ++t) {
    if (const auto* c = std::get_if<IndependentClocks>(&spec.params())) {
      for (Node j = 0; j < n && every_singleton; ++j) {
        bool ok = c->p[j] > 0.0;
        for (Node i = 0; i < n; ++i)
          if (i != j && c->p[i] >= 1.0) ok = false;
        every_singleton = ok;
      }
    } else {
      const auto dist = tick_distribution(spec, t);
      for (Node j = 0; j < n && every_singleton; ++j)
        every_singleton = std::any_of(dist.begin(), dist.end(),
                                      [&](const WeightedSupport& s) { return s.set == UpdateSet{j}; });
    }
  }
  report.variant_all_singletons =
      verdict(every_singleton && report.rooted.passed() && report.positive_probability.passed(),
              every_singleton ? "every agent can update alone at every tick"
                              : "some agent cannot update alone at some tick");
  return report;
}

StronglyAperiodicCheck check_strongly_aperiodic(const SchedulerSpec& spec, const StochasticMatrix& a,
                                                Node i, Node j, std::size_t tick) {
  if (spec.agents() != a.size()) throw DimensionError("scheduler and matrix sizes differ");
  if (i >= a.size() || j >= a.size()) throw DimensionError("agent index out of range");
  if (i == j) throw SchedulerError("the strongly aperiodic inequality is stated for i != j");

  // Row i of A_sigma is row i of A when i updates and e_i otherwise, so both
  // expectations only involve P(i in sigma).
  double p_update = 0.0;
  if (const auto* c = std::get_if<IndependentClocks>(&spec.params())) {
    p_update = c->p[i];
  } else {
    for (const auto& s : tick_distribution(spec, tick))
      if (s.set.contains(i)) p_update += s.probability;
  }
  StronglyAperiodicCheck out;
  out.lhs = p_update * a(i, i) * a(i, j);
  out.rhs = p_update * a(i, j);
  out.holds = out.rhs == 0.0 || out.lhs > 0.0;
  return out;
}

}  // namespace adca
