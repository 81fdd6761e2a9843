#include "adca/fixtures.hpp"

#include <cmath>

namespace adca::fixtures {

namespace {

SquareMatrix rows(std::vector<std::vector<double>> r) { return SquareMatrix::from_rows(r); }

std::vector<WeightedSupport> uniform_over(std::vector<UpdateSet> sets) {
  std::vector<WeightedSupport> out;
  for (auto& s : sets) out.push_back({std::move(s), 1.0 / static_cast<double>(sets.size())});
  return out;
}

}  // namespace

StochasticMatrix partial_update_matrix() {
  return StochasticMatrix::from_rows({{0, 1, 0}, {0.2, 0.8, 0}, {0, 0.7, 0.3}});
}
StochasticMatrix partial_update_single() {
  return StochasticMatrix::from_rows({{1, 0, 0}, {0.2, 0.8, 0}, {0, 0, 1}});
}
StochasticMatrix partial_update_pair() {
  return StochasticMatrix::from_rows({{0, 1, 0}, {0, 1, 0}, {0, 0.7, 0.3}});
}

StochasticMatrix rooted_cycle_matrix() {
  return StochasticMatrix::from_rows({{0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}, {0, 0, 1, 0}});
}

SchedulerSpec three_support_scheduler() {
  return SchedulerSpec(4, SupportSequence{{uniform_over({{0, 1, 3}, {0, 2, 3}, {1, 2}})}, {}});
}

StochasticMatrix six_agent_matrix() {
  return StochasticMatrix::from_rows({{0, 0, 0, 0.5, 0, 0.5},
                                      {0, 0, 0, 0, 0.5, 0.5},
                                      {0, 0, 0, 1, 0, 0},
                                      {0.5, 0, 0.5, 0, 0, 0},
                                      {0, 1, 0, 0, 0, 0},
                                      {0, 0, 1, 0, 0, 0}});
}

StochasticMatrix sia_counterexample_matrix() {
  return StochasticMatrix::from_rows({{0, 0, 0, 0, 1},
                                      {1, 0, 0, 0, 0},
                                      {0.5, 0.5, 0, 0, 0},
                                      {0, 0, 1, 0, 0},
                                      {0, 0, 0, 1, 0}});
}
std::vector<UpdateSet> sia_counterexample_schedule() { return {{4}, {3}, {0}, {1}, {2}}; }
SquareMatrix sia_counterexample_product() {
  return rows({{0, 0, 0, 1, 0}, {0, 0, 0, 1, 0}, {0, 0, 0, 1, 0}, {0, 0, 1, 0, 0}, {0, 0, 0, 1, 0}});
}

StochasticMatrix swap_matrix() { return StochasticMatrix::from_rows({{0, 1}, {1, 0}}); }
std::vector<UpdateSet> swap_schedule() { return {{1}, {0}}; }
SquareMatrix swap_product() { return rows({{1, 0}, {1, 0}}); }

StochasticMatrix vanishing_alpha_matrix() {
  return StochasticMatrix::from_rows({{0.5, 0.5, 0}, {0, 0, 1}, {1, 0, 0}});
}

SchedulerSpec vanishing_alpha_scheduler() {
  MarkovSwitching m;
  m.states = {{0}, {1}, {2}};
  m.constant = rows({{1, 0, 1}, {0, 0, 0}, {0, 1, 0}});
  m.inv_k = rows({{-1, 0, 0}, {1, 0, 0}, {0, 0, 0}});
  m.initial = 0;
  return SchedulerSpec(3, std::move(m));
}

SquareMatrix vanishing_alpha_power(unsigned k) {
  const double h = std::ldexp(1.0, -static_cast<int>(k));
  return rows({{h, 1.0 - h, 0}, {0, 1, 0}, {0, 0, 1}});
}

StochasticMatrix coverage_violation_matrix() {
  return StochasticMatrix::from_rows({{0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}});
}

SchedulerSpec coverage_violation_scheduler() {
  return SchedulerSpec(4, SupportSequence{{{{UpdateSet{0, 2}, 1.0}},
                                           {{UpdateSet{0}, 0.5}, {UpdateSet{2}, 0.5}},
                                           {{UpdateSet{1, 3}, 1.0}},
                                           {{UpdateSet{1}, 0.5}, {UpdateSet{3}, 0.5}}},
                                          {}});
}

SquareMatrix coverage_violation_product() {
  return rows({{0, 0, 0, 1}, {0, 0, 0, 1}, {0, 1, 0, 0}, {0, 1, 0, 0}});
}

StochasticMatrix period3_matrix() {
  return StochasticMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
}

SchedulerSpec period3_scheduler() {
  MarkovSwitching m;
  m.states = {{0}, {1}, {2}};
  m.constant = rows({{0.5, 0.5, 0}, {0, 0.5, 0.5}, {0.5, 0, 0.5}});
  m.inv_k = SquareMatrix(3);
  m.initial = 2;
  return SchedulerSpec(3, std::move(m));
}

SquareMatrix period3_product() { return rows({{0, 1, 0}, {1, 0, 0}, {0, 1, 0}}); }

LabelledCycle six_position_cycle() { return LabelledCycle({0, 1, 3, 2, 1, 3}); }

}  // namespace adca::fixtures
