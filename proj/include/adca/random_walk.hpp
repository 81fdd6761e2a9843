#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "adca/graph.hpp"
#include "adca/matrix.hpp"
#include "adca/rng.hpp"

namespace adca {

/// Steps from position `from` to position `to` following the cycle edges.
std::size_t cycle_distance(const LabelledCycle& cycle, std::size_t from, std::size_t to);

/// Entrywise lower bound W on the transition matrix of the distance chain
/// d_k in {0, ..., l-1} (column-stochastic convention, state 0 absorbing).
/// Requires l >= 2 and gamma in (0, 1/3].
SquareMatrix lower_bound_matrix(std::size_t l, double gamma);

/// Column-stochastic completion of a bound: each column's missing mass is
/// spread evenly over that column's positive entries.
ColumnStochasticMatrix admissible_completion(const SquareMatrix& bound);

/// Move probabilities of the backward walk while the two labels differ. The
/// second and third kinds of move must each carry at least gamma; the joint
/// "both stay or both step" kind at least gamma in total.
struct WalkMoves {
  double second_steps = 0.0;  // (i, j) -> (i, j')
  double first_steps = 0.0;   // (i, j) -> (i', j)
  double both_stay = 0.0;     // (i, j) -> (i, j)
  double both_step = 0.0;     // (i, j) -> (i', j')

  /// gamma for each single move and (1 - 2 gamma) / 2 for each joint outcome,
  /// so both joint outcomes get at least gamma / 2 when gamma <= 1/3.
  static WalkMoves from_gamma(double gamma);
  void validate(double gamma) const;
};

/// Transition matrix of d_k = cycle_distance(i_k, j_k) for the position walk
/// driven by `moves` (column-stochastic, state 0 absorbing).
ColumnStochasticMatrix distance_chain_matrix(std::size_t l, const WalkMoves& moves);

/// ||P_k ... P_1 - e_1 1^T|| <= c0 beta^k over the sampled horizon, in the
/// max-absolute-entry norm.
struct RateCertificate {
  double c0 = 0.0;
  double beta = 0.0;
  std::vector<double> errors;  // errors[k - 1] for k = 1..K

  double bound(std::size_t k) const;
};

/// Errors below this are treated as rounding noise when fitting and checking.
inline constexpr double kRateNoiseFloor = 1e-12;

/// Requires every P_k >= bound entrywise and P_k ~ bound; throws otherwise.
RateCertificate product_convergence_rate(std::span<const ColumnStochasticMatrix> sequence,
                                         const SquareMatrix& bound);

/// Distribution xi(k) of the cycle distance, evolved by xi(k+1) = P_k xi(k).
class DistanceChain {
 public:
  DistanceChain(std::size_t l, double gamma, std::vector<double> xi);
  static DistanceChain starting_at(std::size_t l, double gamma, std::size_t distance);

  void advance(const ColumnStochasticMatrix& p);
  std::size_t length() const { return xi_.size(); }
  double gamma() const { return gamma_; }
  const std::vector<double>& distribution() const { return xi_; }
  double absorbed() const { return xi_.front(); }

 private:
  double gamma_;
  std::vector<double> xi_;
};

struct WalkState {
  std::size_t i = 0;
  std::size_t j = 0;
};

struct WalkTrajectory {
  std::vector<WalkState> states;  // states[k - 1] holds (i_k, j_k)
  /// First k with label(i_k) == label(j_k).
  std::optional<std::size_t> hit_time;
};

/// Backward walk on the cycle from (i_1, j_1) for at most k_max time indices.
/// Frozen from the first time the two labels agree.
WalkTrajectory simulate_backward_walk(const LabelledCycle& cycle, std::size_t start_i,
                                      std::size_t start_j, const WalkMoves& moves,
                                      std::size_t k_max, CounterRng& rng, bool record = true);

struct MatchCurve {
  std::vector<double> empirical;  // P(hit time <= k), index k - 1
  std::vector<double> bound;      // max(0, 1 - c0 beta^(k-1)), index k - 1
  RateCertificate certificate;
};

/// Monte Carlo label-match probabilities plus the distance-chain lower bound.
MatchCurve label_match_curve(const LabelledCycle& cycle, std::size_t start_i, std::size_t start_j,
                             double gamma, std::size_t k_max, std::size_t trials, std::uint64_t seed);

}  // namespace adca
