#include <doctest.h>

#include <random>

#include "adca/async.hpp"
#include "adca/fixtures.hpp"
#include "adca/graph.hpp"
#include "oracles.hpp"

using namespace adca;

TEST_CASE("update sets are sorted and duplicate free") {
  CHECK(UpdateSet{3, 1, 3}.members() == std::vector<Node>{1, 3});
  CHECK(UpdateSet{2} == UpdateSet(std::vector<Node>{2, 2}));
  CHECK(UpdateSet::all(3) == UpdateSet{0, 1, 2});
  CHECK_THROWS_AS(UpdateSet{5}.check_range(3), DimensionError);
}

TEST_CASE("make_async_matrix examples") {
  const auto a = fixtures::partial_update_matrix();
  CHECK(make_async_matrix(a, UpdateSet{1}) == fixtures::partial_update_single());
  CHECK(make_async_matrix(a, UpdateSet{0, 2}) == fixtures::partial_update_pair());
  CHECK(make_async_matrix(a, UpdateSet{}) == StochasticMatrix::identity(3));
  CHECK(make_async_matrix(a, UpdateSet::all(3)) == a);
  CHECK_THROWS_AS(make_async_matrix(a, UpdateSet{3}), DimensionError);
}

TEST_CASE("step examples") {
  const auto a = fixtures::partial_update_matrix();
  const auto s0 = TrajectoryState::initial({1.0, 2.0, 3.0});
  const auto s1 = step(s0, a, UpdateSet{});
  CHECK(s1.k == 2);
  CHECK(s1.x == s0.x);
  CHECK(*s1.product == StochasticMatrix::identity(3));
  CHECK(s1.schedule == std::vector<UpdateSet>{UpdateSet{}});
  CHECK_THROWS_AS(step(TrajectoryState::initial({1.0, 2.0}), a, UpdateSet{0}), DimensionError);

  const auto swap = run_script(fixtures::swap_matrix(), fixtures::swap_schedule(), {0.25, -0.75});
  CHECK(swap.product->entries() == fixtures::swap_product());
  CHECK(swap.x == StateVector{0.25, 0.25});
  CHECK(swap.k == 3);

  const auto five = run_script(fixtures::sia_counterexample_matrix(), fixtures::sia_counterexample_schedule(),
                               {1, 2, 3, 4, 5});
  CHECK(five.product->entries() == fixtures::sia_counterexample_product());
  CHECK_FALSE(is_sia(*five.product));
}

TEST_CASE("run_script examples") {
  const auto a = fixtures::swap_matrix();
  const auto empty = run_script(a, {}, {1.0, 2.0});
  CHECK(empty.x == StateVector{1.0, 2.0});
  CHECK(*empty.product == StochasticMatrix::identity(2));

  std::vector<UpdateSet> periodic;
  for (int r = 0; r < 3; ++r) periodic.insert(periodic.end(), {UpdateSet{1}, UpdateSet{0}});
  auto state = TrajectoryState::initial({1.0, -1.0});
  advance(state, a, periodic[0]);
  advance(state, a, periodic[1]);
  CHECK(max_discrepancy(state.x) == 0.0);

  const auto c = fixtures::coverage_violation_matrix();
  std::vector<UpdateSet> alternating;
  for (int r = 0; r < 4; ++r) alternating.insert(alternating.end(), {UpdateSet{0, 2}, UpdateSet{1, 3}});
  const auto pairs = run_script(c, std::span(alternating).first(2), {1, 2, 3, 4});
  CHECK(pairs.product->entries() == fixtures::coverage_violation_product());
  CHECK_FALSE(is_sia(*pairs.product));
  const auto longer = run_script(c, alternating, {1, 2, 3, 4});
  CHECK(max_discrepancy(longer.x) > 0.5);
}

TEST_CASE("advance without recording keeps the schedule empty") {
  auto s = TrajectoryState::initial({1.0, 0.0, 0.0}, false);
  advance(s, fixtures::partial_update_matrix(), UpdateSet{0}, false);
  CHECK_FALSE(s.product.has_value());
  CHECK(s.schedule.empty());
  CHECK(s.x == StateVector{0.0, 0.0, 0.0});
}

TEST_CASE("property: trajectory invariants along random schedules") {
  std::mt19937_64 gen(31);
  std::uniform_int_distribution<std::size_t> size(2, 8);
  std::uniform_real_distribution<double> entry(-1.0, 1.0);
  std::bernoulli_distribution member(0.4);
  int checked = 0, bad = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = size(gen);
    const auto a = StochasticMatrix::from_rows(oracle::random_stochastic(gen, n, n));
    StateVector x1(n);
    for (double& v : x1) v = entry(gen);
    auto s = TrajectoryState::initial(x1);
    double last_lambda = ergodic_coefficient(*s.product);
    for (int k = 0; k < 50; ++k) {
      std::vector<Node> members;
      for (Node v = 0; v < n; ++v)
        if (member(gen)) members.push_back(v);
      const double before = max_discrepancy(s.x);
      advance(s, a, UpdateSet(members));
      const auto via_product = adca::apply(*s.product, x1);
      double gap = 0.0;
      for (std::size_t i = 0; i < n; ++i) gap = std::max(gap, std::abs(via_product[i] - s.x[i]));
      const double lambda = ergodic_coefficient(*s.product);
      bad += gap > 1e-9;
      bad += max_discrepancy(s.x) > before + 1e-12;
      bad += lambda > last_lambda + 1e-10;
      last_lambda = lambda;
      ++checked;
    }
  }
  CHECK(checked == 5000);
  CHECK(bad == 0);
}
