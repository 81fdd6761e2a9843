#include "adca/async.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace adca {

UpdateSet::UpdateSet(std::vector<Node> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

UpdateSet UpdateSet::all(std::size_t n) {
  std::vector<Node> members(n);
  std::iota(members.begin(), members.end(), Node{0});
  return UpdateSet(std::move(members));
}

bool UpdateSet::contains(Node v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

void UpdateSet::check_range(std::size_t n) const {
  if (!members_.empty() && members_.back() >= n) {
    throw DimensionError("update set member " + std::to_string(members_.back() + 1) +
                         " outside 1.." + std::to_string(n));
  }
}

StochasticMatrix make_async_matrix(const StochasticMatrix& a, const UpdateSet& sigma) {
  sigma.check_range(a.size());
  SquareMatrix m = SquareMatrix::identity(a.size());
  for (Node j : sigma.members()) std::copy(a.row(j).begin(), a.row(j).end(), m.row(j).begin());
  return StochasticMatrix(std::move(m));
}

TrajectoryState TrajectoryState::initial(StateVector x1, bool track_product) {
  if (x1.empty()) throw DimensionError("initial state must be nonempty");
  TrajectoryState state;
  const std::size_t n = x1.size();
  state.x = std::move(x1);
  if (track_product) state.product = StochasticMatrix::identity(n);
  return state;
}

void advance(TrajectoryState& state, const StochasticMatrix& a, const UpdateSet& sigma,
             bool record_schedule) {
  const std::size_t n = a.size();
  if (state.x.size() != n) {
    throw DimensionError("state has " + std::to_string(state.x.size()) + " agents, matrix has " +
                         std::to_string(n));
  }
  sigma.check_range(n);

  // Only rows in sigma change, and each reads the pre-step values.
  StateVector next = state.x;
  for (Node j : sigma.members()) {
    const auto r = a.row(j);
    next[j] = std::inner_product(r.begin(), r.end(), state.x.begin(), 0.0);
  }
  state.x = std::move(next);

  if (state.product) {
    const SquareMatrix& old = state.product->entries();
    SquareMatrix updated = old;
    for (Node j : sigma.members()) {
      auto out = updated.row(j);
      std::fill(out.begin(), out.end(), 0.0);
      for (Node m = 0; m < n; ++m) {
        const double w = a(j, m);
        if (w == 0.0) continue;
        const auto src = old.row(m);
        for (std::size_t c = 0; c < n; ++c) out[c] += w * src[c];
      }
    }
    state.product = StochasticMatrix(std::move(updated), kProductTolerance);
  }
  if (record_schedule) state.schedule.push_back(sigma);
  ++state.k;
}

TrajectoryState step(const TrajectoryState& state, const StochasticMatrix& a,
                     const UpdateSet& sigma) {
  TrajectoryState next = state;
  advance(next, a, sigma);
  return next;
}

TrajectoryState run_script(const StochasticMatrix& a, std::span<const UpdateSet> schedule,
                           StateVector x1) {
  TrajectoryState state = TrajectoryState::initial(std::move(x1));
  for (const UpdateSet& sigma : schedule) advance(state, a, sigma);
  return state;
}

}  // namespace adca
