#include "adca/io.hpp"

#include <cmath>
#include <fstream>

namespace adca::io {

namespace {

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field '") + name + "'");
  return j.at(name);
}

double number(const json& j, const std::string& where) {
  if (!j.is_number()) throw InputError(where + " must be a number");
  return j.get<double>();
}

std::size_t node_label(const json& j, std::size_t n) {
  if (!j.is_number_integer()) throw InputError("node labels must be integers");
  const auto v = j.get<long long>();
  if (v < 1 || static_cast<std::size_t>(v) > n) {
    throw InputError("node label " + std::to_string(v) + " outside 1.." + std::to_string(n));
  }
  return static_cast<std::size_t>(v - 1);
}

std::vector<double> probability_vector(const json& p, std::size_t n, const char* what) {
  if (p.is_number()) return std::vector<double>(n, p.get<double>());
  if (!p.is_array() || p.size() != n) {
    throw InputError(std::string(what) + " must be a number or an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (const auto& v : p) out.push_back(number(v, what));
  return out;
}

}  // namespace

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in " + path.string() + ": " + e.what());
  }
}

SquareMatrix square_matrix_from_json(const json& j) {
  const json& rows = j.is_array() ? j : field(j, "rows");
  if (!rows.is_array() || rows.empty()) throw InputError("'rows' must be a nonempty array");
  const std::size_t n = rows.size();
  if (j.is_object() && j.contains("n")) {
    const json& declared = j.at("n");
    if (!declared.is_number_integer() || declared.get<long long>() != static_cast<long long>(n)) {
      throw InputError("'n' does not match the number of rows (" + std::to_string(n) + ")");
    }
  }
  SquareMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = rows[i];
    if (!row.is_array() || row.size() != n) {
      throw InputError("row " + std::to_string(i + 1) + " must have " + std::to_string(n) + " entries");
    }
    for (std::size_t k = 0; k < n; ++k) m(i, k) = number(row[k], "row " + std::to_string(i + 1));
  }
  return m;
}

StochasticMatrix matrix_from_json(const json& j) {
  try {
    return StochasticMatrix(square_matrix_from_json(j));
  } catch (const ValidationError& e) {
    throw InputError(std::string("invalid stochastic matrix: ") + e.what());
  }
}

StochasticMatrix load_matrix(const std::filesystem::path& path) { return matrix_from_json(read_json(path)); }

json to_json(const SquareMatrix& m) { return json{{"n", m.size()}, {"rows", m.to_rows()}}; }

UpdateSet update_set_from_json(const json& j, std::size_t n) {
  if (j.is_number_integer()) return UpdateSet{node_label(j, n)};
  if (!j.is_array()) throw InputError("an update set must be an array of node labels");
  std::vector<Node> members;
  for (const auto& v : j) members.push_back(node_label(v, n));
  return UpdateSet(std::move(members));
}

json to_json(const UpdateSet& s) { return one_based(s.members()); }

json one_based(const NodeSet& s) {
  json out = json::array();
  for (Node v : s) out.push_back(v + 1);
  return out;
}

std::vector<UpdateSet> schedule_from_json(const json& j, std::size_t n) {
  const json& sets = j.is_array() ? j : field(j, "sets");
  if (!sets.is_array()) throw InputError("'sets' must be an array");
  std::vector<UpdateSet> out;
  for (const auto& s : sets) out.push_back(update_set_from_json(s, n));
  return out;
}

SchedulerSpec scheduler_from_json(const json& j, std::size_t n) {
  const json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) throw InputError("'kind' must be a string");
  const std::string kind = kind_field.get<std::string>();
  const json params = j.contains("params") ? j.at("params") : json::object();

  try {
    if (kind == "global_clock") {
      if (!params.contains("p")) return SchedulerSpec::uniform_global_clock(n);
      return SchedulerSpec(n, GlobalClock{probability_vector(params.at("p"), n, "'p'")});
    }
    if (kind == "independent_clocks") {
      return SchedulerSpec(n, IndependentClocks{probability_vector(field(params, "p"), n, "'p'")});
    }
    if (kind == "support_sequence") {
      SupportSequence seq;
      for (const auto& tick : field(params, "ticks")) {
        std::vector<WeightedSupport> supports;
        for (const auto& s : tick) {
          supports.push_back({update_set_from_json(field(s, "set"), n), number(field(s, "p"), "'p'")});
        }
        seq.ticks.push_back(std::move(supports));
      }
      return SchedulerSpec(n, std::move(seq));
    }
    if (kind == "markov") {
      MarkovSwitching m;
      if (params.contains("states")) {
        for (const auto& s : params.at("states")) m.states.push_back(update_set_from_json(s, n));
      } else {
        for (Node v = 0; v < n; ++v) m.states.push_back(UpdateSet{v});
      }
      const json& t = field(params, "transition");
      if (t.is_object() && t.contains("constant")) {
        m.constant = square_matrix_from_json(t.at("constant"));
        m.inv_k = t.contains("inv_k") ? square_matrix_from_json(t.at("inv_k")) : SquareMatrix(m.constant.size());
      } else {
        m.constant = square_matrix_from_json(t);
        m.inv_k = SquareMatrix(m.constant.size());
      }
      const json& init = params.contains("initial") ? params.at("initial") : json(1);
      if (!init.is_number_integer() || init.get<long long>() < 1 ||
          static_cast<std::size_t>(init.get<long long>()) > m.states.size()) {
        throw InputError("'initial' must be a state index in 1.." + std::to_string(m.states.size()));
      }
      m.initial = static_cast<std::size_t>(init.get<long long>() - 1);
      return SchedulerSpec(n, std::move(m));
    }
    if (kind == "script") {
      Script s{schedule_from_json(field(params, "sets"), n), params.value("repeat", false)};
      return SchedulerSpec(n, std::move(s));
    }
  } catch (const SchedulerError& e) {
    throw InputError(std::string("invalid scheduler: ") + e.what());
  } catch (const ValidationError& e) {
    throw InputError(std::string("invalid scheduler: ") + e.what());
  } catch (const DimensionError& e) {
    throw InputError(std::string("invalid scheduler: ") + e.what());
  } catch (const json::exception& e) {
    throw InputError(std::string("invalid scheduler: ") + e.what());
  }
  throw InputError("unknown scheduler kind '" + kind + "'");
}

SchedulerSpec load_scheduler(const std::filesystem::path& path, std::size_t n) {
  return scheduler_from_json(read_json(path), n);
}

LabelledCycle cycle_from_json(const json& j) {
  const json& labels = j.is_array() ? j : field(j, "labels");
  if (!labels.is_array() || labels.empty()) throw InputError("'labels' must be a nonempty array");
  std::vector<Node> out;
  for (const auto& v : labels) {
    if (!v.is_number_integer() || v.get<long long>() < 1) throw InputError("cycle labels must be positive integers");
    out.push_back(static_cast<Node>(v.get<long long>() - 1));
  }
  return LabelledCycle(std::move(out));
}

StateVector vector_from_json(const json& j) {
  const json& x = j.is_array() ? j : field(j, "x");
  if (!x.is_array() || x.empty()) throw InputError("state vector must be a nonempty array");
  StateVector out;
  for (const auto& v : x) out.push_back(number(v, "state entry"));
  return out;
}

namespace {

json verdict_json(const ConditionVerdict& v) { return {{"verdict", to_string(v.verdict)}, {"detail", v.detail}}; }

}  // namespace

json to_json(const ConditionReport& r) {
  json out{{"overall", r.overall()},
           {"a_rooted", verdict_json(r.rooted)},
           {"b_positive_probability", verdict_json(r.positive_probability)},
           {"c_history_independence", verdict_json(r.history_independence)},
           {"d_joint_coverage", verdict_json(r.joint_coverage)},
           {"e_quasi_singleton", verdict_json(r.quasi_singleton)},
           {"alpha", r.alpha},
           {"q", r.q ? json(*r.q) : json(nullptr)},
           {"chi", one_based(r.chi)}};
  if (r.coverage_witness) {
    out["coverage_witness"] = {{"start_tick", r.coverage_witness->start_tick},
                               {"window", r.coverage_witness->window},
                               {"missing", one_based(r.coverage_witness->missing)}};
  }
  if (r.quasi_singleton_witness) {
    out["quasi_singleton_witness"] = {{"tick", r.quasi_singleton_witness->tick},
                                      {"node", r.quasi_singleton_witness->node + 1},
                                      {"intersection", one_based(r.quasi_singleton_witness->intersection)}};
  }
  out["variants"] = {{"self_loop_root", verdict_json(r.variant_self_loop)},
                        {"independent", verdict_json(r.variant_independent)},
                        {"singletons", verdict_json(r.variant_singletons)},
                        {"all_singletons", verdict_json(r.variant_all_singletons)}};
  return out;
}

json to_json(const StronglyAperiodicCheck& c) { return {{"lhs", c.lhs}, {"rhs", c.rhs}, {"holds", c.holds}}; }

json to_json(const ExperimentResult& r) {
  const auto q = r.final_delta;
  return {{"trials", r.trials},
          {"horizon", r.horizon},
          {"epsilon", r.epsilon},
          {"consensus_fraction", r.consensus_fraction},
          {"final_delta",
           {{"min", q.min}, {"q25", q.q25}, {"median", q.median}, {"q75", q.q75}, {"max", q.max}}},
          {"coherence_violations", r.coherence_violations},
          {"monotonicity_violations", r.monotonicity_violations}};
}

json to_json(const ReplayReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return {{"case", r.case_id}, {"passed", r.passed()}, {"checks", checks}, {"details", r.details}};
}

}  // namespace adca::io
