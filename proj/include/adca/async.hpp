#pragma once

#include <compare>
#include <initializer_list>
#include <optional>
#include <span>
#include <vector>

#include "adca/graph.hpp"
#include "adca/matrix.hpp"

namespace adca {

/// The agents updating at one tick. Stored sorted and duplicate-free, so a
/// singleton set and a single agent are the same value.
class UpdateSet {
 public:
  UpdateSet() = default;
  explicit UpdateSet(std::vector<Node> members);
  UpdateSet(std::initializer_list<Node> members) : UpdateSet(std::vector<Node>(members)) {}

  static UpdateSet all(std::size_t n);

  const std::vector<Node>& members() const { return members_; }
  bool contains(Node v) const;
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }

  /// Throws DimensionError when a member is not below n.
  void check_range(std::size_t n) const;

  friend auto operator<=>(const UpdateSet&, const UpdateSet&) = default;

 private:
  std::vector<Node> members_;
};

/// A_sigma: rows of A for members of sigma, elementary rows e_j elsewhere.
StochasticMatrix make_async_matrix(const StochasticMatrix& a, const UpdateSet& sigma);

struct TrajectoryState {
  /// Time index of `x`; the initial state is x(1).
  std::size_t k = 1;
  StateVector x;
  /// A_{sigma_{k-1:1}}; absent when accumulation is switched off.
  std::optional<StochasticMatrix> product;
  std::vector<UpdateSet> schedule;

  static TrajectoryState initial(StateVector x1, bool track_product = true);
};

/// In-place form of `step`. When `record_schedule` is false the drawn set is
/// not appended, which keeps long runs linear in memory.
void advance(TrajectoryState& state, const StochasticMatrix& a, const UpdateSet& sigma,
             bool record_schedule = true);

/// x' = A_sigma x, product' = A_sigma product, k' = k + 1.
TrajectoryState step(const TrajectoryState& state, const StochasticMatrix& a,
                     const UpdateSet& sigma);

TrajectoryState run_script(const StochasticMatrix& a, std::span<const UpdateSet> schedule,
                           StateVector x1);

}  // namespace adca
