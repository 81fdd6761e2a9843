#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "adca/async.hpp"
#include "adca/graph.hpp"
#include "adca/matrix.hpp"
#include "adca/montecarlo.hpp"
#include "adca/scheduler.hpp"

/// JSON readers and writers. Files use one-based node labels throughout.
namespace adca::io {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json(const std::filesystem::path& path);

/// {"n": N, "rows": [[...], ...]}
SquareMatrix square_matrix_from_json(const json& j);
StochasticMatrix matrix_from_json(const json& j);
StochasticMatrix load_matrix(const std::filesystem::path& path);
json to_json(const SquareMatrix& m);

/// {"kind": ..., "params": {...}}
SchedulerSpec scheduler_from_json(const json& j, std::size_t n);
SchedulerSpec load_scheduler(const std::filesystem::path& path, std::size_t n);

/// A bare array of sets, or {"sets": [...], "repeat": bool}.
std::vector<UpdateSet> schedule_from_json(const json& j, std::size_t n);

/// {"labels": [...]}
LabelledCycle cycle_from_json(const json& j);

/// A bare array, or {"x": [...]}.
StateVector vector_from_json(const json& j);

UpdateSet update_set_from_json(const json& j, std::size_t n);
json to_json(const UpdateSet& s);
json one_based(const NodeSet& s);

json to_json(const ConditionReport& r);
json to_json(const StronglyAperiodicCheck& c);
json to_json(const ExperimentResult& r);
json to_json(const ReplayReport& r);

}  // namespace adca::io
