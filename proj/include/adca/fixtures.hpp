#pragma once

#include <vector>

#include "adca/async.hpp"
#include "adca/graph.hpp"
#include "adca/matrix.hpp"
#include "adca/scheduler.hpp"

/// Matrices, schedules and expected products from the worked examples. Node
/// indices are zero-based here; the JSON copies under data/ are one-based.
namespace adca::fixtures {

/// 3x3 matrix used to illustrate A_sigma, with its printed A_{2} and A_{1,3}.
StochasticMatrix partial_update_matrix();
StochasticMatrix partial_update_single();
StochasticMatrix partial_update_pair();

/// 4x4 matrix with roots {1,2,3} and the i.i.d. supports {1,2,4},{1,3,4},{2,3}
/// (equal weights).
StochasticMatrix rooted_cycle_matrix();
SchedulerSpec three_support_scheduler();

/// 6x6 rooted, non-SIA matrix; roots {1,3,4,6}.
StochasticMatrix six_agent_matrix();

/// SIA 5x5 matrix whose periodic schedule 5,4,1,2,3 does not give consensus.
StochasticMatrix sia_counterexample_matrix();
std::vector<UpdateSet> sia_counterexample_schedule();
SquareMatrix sia_counterexample_product();

/// 2x2 swap matrix: not SIA, yet A_1 A_2 is.
StochasticMatrix swap_matrix();
std::vector<UpdateSet> swap_schedule();
SquareMatrix swap_product();

/// Markov switching whose stay probability tends to 1, so alpha vanishes.
StochasticMatrix vanishing_alpha_matrix();
SchedulerSpec vanishing_alpha_scheduler();
/// Closed form of A_1^k for the matrix above.
SquareMatrix vanishing_alpha_power(unsigned k);

/// 4x4 circulant with period-4 supports violating the quasi-singleton property.
StochasticMatrix coverage_violation_matrix();
SchedulerSpec coverage_violation_scheduler();
SquareMatrix coverage_violation_product();

/// 3-cycle permutation driven by a history-dependent Markov chain.
StochasticMatrix period3_matrix();
SchedulerSpec period3_scheduler();
SquareMatrix period3_product();

/// Six-position cycle over four nodes; positions 2,5 share label 2 and 3,6
/// share label 4.
LabelledCycle six_position_cycle();

}  // namespace adca::fixtures
