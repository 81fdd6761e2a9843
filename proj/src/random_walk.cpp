#include "adca/random_walk.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace adca {

std::size_t cycle_distance(const LabelledCycle& cycle, std::size_t from, std::size_t to) {
  const std::size_t l = cycle.length();
  if (from >= l || to >= l) throw GraphError("cycle position out of range");
  return (to + l - from) % l;
}

SquareMatrix lower_bound_matrix(std::size_t l, double gamma) {
  if (l < 2) throw std::invalid_argument("lower bound matrix needs a cycle of length >= 2");
  if (!(gamma > 0.0 && gamma <= 1.0 / 3.0)) throw std::invalid_argument("gamma must lie in (0, 1/3]");
  SquareMatrix w(l);
  w(0, 0) = 1.0;
  for (std::size_t d = 1; d < l; ++d) {
    w(d, d) = gamma;
    w(d + 1 < l ? d + 1 : 0, d) = gamma;
    w(d > 1 ? d - 1 : 0, d) = gamma;
  }
  return w;
}

ColumnStochasticMatrix admissible_completion(const SquareMatrix& bound) {
  SquareMatrix p = bound;
  for (std::size_t c = 0; c < p.size(); ++c) {
    double mass = 0.0;
    std::size_t support = 0;
    for (std::size_t r = 0; r < p.size(); ++r) {
      mass += p(r, c);
      support += p(r, c) > 0.0;
    }
    if (support == 0 || mass > 1.0 + kRowSumTolerance) {
      throw std::invalid_argument("column " + std::to_string(c + 1) + " cannot be completed");
    }
    const double share = (1.0 - mass) / static_cast<double>(support);
    for (std::size_t r = 0; r < p.size(); ++r)
      if (p(r, c) > 0.0) p(r, c) += share;
  }
  return ColumnStochasticMatrix(std::move(p));
}

WalkMoves WalkMoves::from_gamma(double gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0 / 3.0)) throw std::invalid_argument("gamma must lie in (0, 1/3]");
  const double joint = (1.0 - 2.0 * gamma) / 2.0;
  return {gamma, gamma, joint, joint};
}

void WalkMoves::validate(double gamma) const {
  const double total = second_steps + first_steps + both_stay + both_step;
  if (second_steps < 0.0 || first_steps < 0.0 || both_stay < 0.0 || both_step < 0.0 ||
      std::abs(total - 1.0) > kRowSumTolerance) {
    throw std::invalid_argument("walk move probabilities must be nonnegative and sum to 1");
  }
  if (second_steps < gamma || first_steps < gamma || both_stay + both_step < gamma) {
    throw std::invalid_argument("walk move probabilities violate the gamma lower bound");
  }
}

ColumnStochasticMatrix distance_chain_matrix(std::size_t l, const WalkMoves& moves) {
  if (l == 0) throw std::invalid_argument("empty cycle");
  SquareMatrix p(l);
  p(0, 0) = 1.0;
  for (std::size_t d = 1; d < l; ++d) {
    p(d, d) += moves.both_stay + moves.both_step;
    p((d + 1) % l, d) += moves.first_steps;
    p(d - 1, d) += moves.second_steps;
  }
  return ColumnStochasticMatrix(std::move(p));
}

double RateCertificate::bound(std::size_t k) const {
  return c0 * std::pow(beta, static_cast<double>(k));
}

RateCertificate product_convergence_rate(std::span<const ColumnStochasticMatrix> sequence,
                                         const SquareMatrix& bound) {
  const std::size_t l = bound.size();
  RateCertificate cert;
  if (sequence.empty()) return cert;

  SquareMatrix limit(l);
  for (std::size_t c = 0; c < l; ++c) limit(0, c) = 1.0;

  SquareMatrix product = SquareMatrix::identity(l);
  for (std::size_t k = 0; k < sequence.size(); ++k) {
    const SquareMatrix& p = sequence[k].entries();
    if (p.size() != l) throw DimensionError("P_k and W differ in size");
    for (std::size_t r = 0; r < l; ++r)
      for (std::size_t c = 0; c < l; ++c)
        if (p(r, c) < bound(r, c) - kRowSumTolerance) {
          throw std::invalid_argument("P_" + std::to_string(k + 1) + " is not bounded below by W");
        }
    if (!same_type(p, bound)) {
      throw std::invalid_argument("P_" + std::to_string(k + 1) + " is not of the same type as W");
    }
    product = p * product;
    cert.errors.push_back(max_abs_difference(product, limit));
  }

  std::vector<std::size_t> resolved;  // one-based k with error above noise
  for (std::size_t k = 0; k < cert.errors.size(); ++k)
    if (cert.errors[k] > kRateNoiseFloor) resolved.push_back(k + 1);
  if (resolved.empty()) return cert;  // already at the limit: c0 = beta = 0

  if (resolved.size() == 1) {
    // One informative sample: any beta in (0, 1) works; take the observed
    // one-step contraction against the trivial bound of 1.
    cert.beta = std::min(cert.errors[resolved.front() - 1], 0.5);
  } else {
    // Geometric mean rate over the second half of the informative samples.
    const std::size_t last = resolved.back();
    const std::size_t from = resolved[(resolved.size() - 1) / 2];
    cert.beta = std::pow(cert.errors[last - 1] / cert.errors[from - 1],
                         1.0 / static_cast<double>(last - from));
  }
  if (!(cert.beta < 1.0)) {
    throw std::runtime_error("products show no geometric convergence over the sampled horizon");
  }
  for (std::size_t k : resolved)
    cert.c0 = std::max(cert.c0, cert.errors[k - 1] / std::pow(cert.beta, static_cast<double>(k)));
  return cert;
}

DistanceChain::DistanceChain(std::size_t l, double gamma, std::vector<double> xi)
    : gamma_(gamma), xi_(std::move(xi)) {
  if (l == 0 || xi_.size() != l) throw DimensionError("distance distribution must have length l");
  const double total = std::accumulate(xi_.begin(), xi_.end(), 0.0);
  if (std::any_of(xi_.begin(), xi_.end(), [](double v) { return v < 0.0; }) ||
      std::abs(total - 1.0) > kRowSumTolerance) {
    throw ValidationError("distance distribution must be a probability vector");
  }
}

DistanceChain DistanceChain::starting_at(std::size_t l, double gamma, std::size_t distance) {
  std::vector<double> xi(l, 0.0);
  xi.at(distance) = 1.0;
  return DistanceChain(l, gamma, std::move(xi));
}

void DistanceChain::advance(const ColumnStochasticMatrix& p) {
  xi_ = p.entries() * std::span<const double>(xi_);
}

WalkTrajectory simulate_backward_walk(const LabelledCycle& cycle, std::size_t start_i,
                                      std::size_t start_j, const WalkMoves& moves,
                                      std::size_t k_max, CounterRng& rng, bool record) {
  if (start_i >= cycle.length() || start_j >= cycle.length()) {
    throw GraphError("walk start position out of range");
  }
  WalkTrajectory out;
  WalkState s{start_i, start_j};
  const double cut_second = moves.second_steps;
  const double cut_first = cut_second + moves.first_steps;
  const double cut_stay = cut_first + moves.both_stay;
  for (std::size_t k = 1; k <= k_max; ++k) {
    if (record) out.states.push_back(s);
    if (cycle.label(s.i) == cycle.label(s.j)) {
      out.hit_time = k;
      break;
    }
    const double u = rng.uniform();
    if (u < cut_second) {
      s.j = cycle.predecessor(s.j);
    } else if (u < cut_first) {
      s.i = cycle.predecessor(s.i);
    } else if (u >= cut_stay) {
      s.i = cycle.predecessor(s.i);
      s.j = cycle.predecessor(s.j);
    }
  }
  return out;
}

MatchCurve label_match_curve(const LabelledCycle& cycle, std::size_t start_i, std::size_t start_j,
                             double gamma, std::size_t k_max, std::size_t trials, std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("need at least one trial");
  const WalkMoves moves = WalkMoves::from_gamma(gamma);
  MatchCurve curve;

  std::vector<std::size_t> hits_at(k_max + 2, 0);
  for (std::size_t t = 0; t < trials; ++t) {
    CounterRng rng = CounterRng::for_stream(seed, t);
    const auto walk = simulate_backward_walk(cycle, start_i, start_j, moves, k_max, rng, false);
    if (walk.hit_time) ++hits_at[*walk.hit_time];
  }
  std::size_t cumulative = 0;
  for (std::size_t k = 1; k <= k_max; ++k) {
    cumulative += hits_at[k];
    curve.empirical.push_back(static_cast<double>(cumulative) / static_cast<double>(trials));
  }

  const std::size_t l = cycle.length();
  if (l < 2) {
    curve.bound.assign(k_max, 1.0);
    return curve;
  }
  // The label walk freezes at a label match, so P(hit by k) is at least the
  // probability that the unfrozen position walk has d = 0 after k - 1 moves.
  const ColumnStochasticMatrix chain = distance_chain_matrix(l, moves);
  const std::vector<ColumnStochasticMatrix> sequence(std::max<std::size_t>(k_max, 2) - 1, chain);
  curve.certificate = product_convergence_rate(sequence, lower_bound_matrix(l, gamma));
  for (std::size_t k = 1; k <= k_max; ++k)
    curve.bound.push_back(k == 1 ? 0.0 : std::max(0.0, 1.0 - curve.certificate.bound(k - 1)));
  return curve;
}

}  // namespace adca
