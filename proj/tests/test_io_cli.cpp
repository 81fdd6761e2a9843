#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "adca/cli.hpp"
#include "adca/fixtures.hpp"
#include "adca/io.hpp"

using namespace adca;
namespace fs = std::filesystem;

namespace {

const fs::path kData = ADCA_DATA_DIR;

std::string data(const char* name) { return (kData / name).string(); }

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::dispatch(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name, const std::string& contents) {
  const fs::path dir = fs::temp_directory_path() / "adca_tests";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << contents;
  return p;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream cells_in(line);
    std::string cell;
    while (std::getline(cells_in, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("bundled matrices match the embedded fixtures") {
  CHECK(io::load_matrix(data("partial_update.json")) == fixtures::partial_update_matrix());
  CHECK(io::load_matrix(data("partial_update_sigma_2.json")) == fixtures::partial_update_single());
  CHECK(io::load_matrix(data("partial_update_sigma_13.json")) == fixtures::partial_update_pair());
  CHECK(io::load_matrix(data("rooted_cycle.json")) == fixtures::rooted_cycle_matrix());
  CHECK(io::load_matrix(data("six_agent.json")) == fixtures::six_agent_matrix());
  CHECK(io::load_matrix(data("sia_counterexample.json")) == fixtures::sia_counterexample_matrix());
  CHECK(io::load_matrix(data("sia_counterexample_product.json")).entries() ==
        fixtures::sia_counterexample_product());
  CHECK(io::load_matrix(data("swap.json")) == fixtures::swap_matrix());
  CHECK(io::load_matrix(data("swap_product.json")).entries() == fixtures::swap_product());
  CHECK(io::load_matrix(data("vanishing_alpha.json")) == fixtures::vanishing_alpha_matrix());
  CHECK(io::load_matrix(data("coverage_violation.json")) == fixtures::coverage_violation_matrix());
  CHECK(io::load_matrix(data("coverage_violation_product.json")).entries() ==
        fixtures::coverage_violation_product());
  CHECK(io::load_matrix(data("period3.json")) == fixtures::period3_matrix());
  CHECK(io::load_matrix(data("period3_product.json")).entries() == fixtures::period3_product());
  CHECK(io::cycle_from_json(io::read_json(data("six_position_cycle.json"))).labels() ==
        fixtures::six_position_cycle().labels());
  CHECK(io::schedule_from_json(io::read_json(data("sia_counterexample_schedule.json")), 5) ==
        fixtures::sia_counterexample_schedule());
  CHECK(io::schedule_from_json(io::read_json(data("swap_schedule.json")), 2) == fixtures::swap_schedule());
}

TEST_CASE("bundled schedulers match the embedded fixtures") {
  const auto cov = io::load_scheduler(data("coverage_violation_scheduler.json"), 4);
  const auto& a = std::get<SupportSequence>(cov.params()).ticks;
  const auto expected = fixtures::coverage_violation_scheduler();
  const auto& b = std::get<SupportSequence>(expected.params()).ticks;
  REQUIRE(a.size() == b.size());
  for (std::size_t t = 0; t < a.size(); ++t) {
    REQUIRE(a[t].size() == b[t].size());
    for (std::size_t s = 0; s < a[t].size(); ++s) {
      CHECK(a[t][s].set == b[t][s].set);
      CHECK(a[t][s].probability == b[t][s].probability);
    }
  }
  const auto va = io::load_scheduler(data("vanishing_alpha_scheduler.json"), 3);
  const auto& m1 = std::get<MarkovSwitching>(va.params());
  const auto va_expected = fixtures::vanishing_alpha_scheduler();
  const auto& m2 = std::get<MarkovSwitching>(va_expected.params());
  CHECK(m1.states == m2.states);
  CHECK(m1.constant == m2.constant);
  CHECK(m1.inv_k == m2.inv_k);
  CHECK(m1.initial == m2.initial);
  const auto p3 = io::load_scheduler(data("period3_scheduler.json"), 3);
  CHECK(std::get<MarkovSwitching>(p3.params()).initial == 2);
  CHECK(io::load_scheduler(data("rooted_cycle_scheduler.json"), 4).kind() == SchedulerKind::support_sequence);
  CHECK(io::load_scheduler(data("six_agent_independent.json"), 6).kind() == SchedulerKind::independent_clocks);
  CHECK(io::load_scheduler(data("six_agent_global_clock.json"), 6).kind() == SchedulerKind::global_clock);
}

TEST_CASE("matrix loader errors name the row") {
  using io::json;
  try {
    io::matrix_from_json(json::parse(R"({"n": 2, "rows": [[1, 0], [0.5, 0.6]]})"));
    FAIL("expected an error");
  } catch (const io::InputError& e) {
    CHECK(std::string(e.what()).find("row 2") != std::string::npos);
  }
  CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"({"n": 3, "rows": [[1, 0], [0, 1]]})")), io::InputError);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"({"n": 2, "rows": [[1, 0], [0]]})")), io::InputError);
  CHECK_THROWS_AS(io::matrix_from_json(json::parse(R"({"n": 2})")), io::InputError);
  CHECK_THROWS_AS(io::scheduler_from_json(json::parse(R"({"kind": "poisson"})"), 2), io::InputError);
  CHECK_THROWS_AS(io::scheduler_from_json(json::parse(R"({"kind": "script", "params": {"sets": [[3]]}})"), 2),
                  io::InputError);
}

TEST_CASE("cli analyze") {
  const auto r = run({"analyze", "--matrix", data("six_agent.json")});
  REQUIRE(r.code == 0);
  const auto j = io::json::parse(r.out);
  CHECK(j["sia"] == false);
  CHECK(j["scrambling"] == false);
  CHECK(j["rooted"] == true);
  CHECK(j["roots"] == io::json::array({1, 3, 4, 6}));
  CHECK(j["lambda"] == 1.0);
  CHECK(j["delta_min"] == 0.5);
  CHECK(j["cycle_length"].is_number_integer());
  for (const char* key : {"rooted", "roots", "scc", "sia", "scrambling", "lambda", "delta_min", "cycle_length"})
    CHECK(j.contains(key));
}

TEST_CASE("cli simulate") {
  const auto empty = run({"simulate", "--matrix", data("six_agent.json"), "--steps", "0"});
  CHECK(empty.code == 0);
  CHECK(empty.out == "k,delta,lambda_product\n");

  const auto a = run({"simulate", "--matrix", data("six_agent.json"), "--steps", "50", "--seed", "3"});
  const auto b = run({"simulate", "--matrix", data("six_agent.json"), "--steps", "50", "--seed", "3"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  const auto rows = parse_csv(a.out);
  CHECK(rows.size() == 51);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    REQUIRE(rows[i].size() == 3);
    CHECK(std::stoul(rows[i][0]) == i);
    CHECK(std::stod(rows[i][2]) <= 1.0);
  }

  const auto x0 = scratch("x0.json", "[1, -1]");
  const auto swap = run({"simulate", "--matrix", data("swap.json"), "--schedule", data("swap_schedule.json"),
                         "--x0", x0.string(), "--steps", "2", "--no-lambda"});
  CHECK(swap.code == 0);
  CHECK(swap.out == "k,delta\n1,0\n2,0\n");

  const auto bad_x0 = scratch("x0_bad.json", "[1, -1, 3]");
  CHECK(run({"simulate", "--matrix", data("swap.json"), "--x0", bad_x0.string(), "--steps", "2"}).code == 2);
  CHECK(run({"simulate", "--matrix", data("swap.json"), "--scheduler", "synchronous", "--steps", "3"}).code == 0);
}

TEST_CASE("cli mc writes CSV and a JSON summary") {
  const auto csv = fs::temp_directory_path() / "adca_tests" / "mc.csv";
  fs::create_directories(csv.parent_path());
  const auto r = run({"mc", "--matrix", data("six_agent.json"), "--scheduler", data("six_agent_independent.json"),
                      "--steps", "200", "--trials", "20", "--out", csv.string()});
  REQUIRE(r.code == 0);
  const auto summary = io::json::parse(r.out);
  CHECK(summary["trials"] == 20);
  CHECK(summary["coherence_violations"] == 0);
  std::ifstream in(csv);
  std::stringstream text;
  text << in.rdbuf();
  const auto rows = parse_csv(text.str());
  CHECK(rows[0] == std::vector<std::string>{"k", "p_delta_tail", "p_lambda_tail"});
  CHECK(rows.size() == 201);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double p = std::stod(rows[i][1]);
    CHECK((p >= 0.0 && p <= 1.0));
  }
}

TEST_CASE("cli verify-conditions") {
  const auto r = run({"verify-conditions", "--matrix", data("coverage_violation.json"), "--scheduler",
                      data("coverage_violation_scheduler.json")});
  REQUIRE(r.code == 0);
  const auto j = io::json::parse(r.out);
  CHECK(j["overall"] == false);
  CHECK(j["e_quasi_singleton"]["verdict"] == "fail");
  CHECK(j["quasi_singleton_witness"]["intersection"] == io::json::array({1, 3}));

  const auto s = run({"verify-conditions", "--matrix", data("rooted_cycle.json"), "--scheduler", "uniform",
                      "--pair", "1", "2"});
  const auto k = io::json::parse(s.out);
  CHECK(k["strongly_aperiodic"]["lhs"] == 0.0);
  CHECK(k["strongly_aperiodic"]["rhs"] == 0.25);
  CHECK(k["strongly_aperiodic"]["holds"] == false);
}

TEST_CASE("cli walk") {
  const auto r = run({"walk", "--cycle", data("six_position_cycle.json"), "--kmax", "100", "--trials", "2000"});
  REQUIRE(r.code == 0);
  const auto rows = parse_csv(r.out);
  CHECK(rows[0] == std::vector<std::string>{"k", "empirical_match_prob", "bound_1_minus_c0_beta_k"});
  CHECK(rows.size() == 101);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(std::stod(rows[i][1]) >= std::stod(rows[i][2]));

  const auto from_matrix = run({"walk", "--auto-from-matrix", data("six_agent.json"), "--kmax", "20", "--trials",
                                "100"});
  CHECK(from_matrix.code == 0);
  CHECK(run({"walk", "--kmax", "5"}).code == 2);
  CHECK(run({"walk", "--cycle", data("six_position_cycle.json"), "--gamma", "0.5"}).code == 2);
}

TEST_CASE("cli repro and exit codes") {
  const auto r = run({"repro", "example3"});
  CHECK(r.code == 0);
  CHECK(io::json::parse(r.out)["passed"] == true);
  CHECK(run({"repro", "missing"}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"analyze", "--matrix", "/nonexistent.json"}).code == 2);
  const auto broken = scratch("broken.json", "{\"n\": 2, \"rows\": [[1, 0], [0, 1]");
  const auto b = run({"analyze", "--matrix", broken.string()});
  CHECK(b.code == 2);
  CHECK(b.err.find("malformed JSON") != std::string::npos);
  const auto mismatch = run({"verify-conditions", "--matrix", data("swap.json"), "--scheduler",
                             data("coverage_violation_scheduler.json")});
  CHECK(mismatch.code == 2);
  CHECK(run({"analyze", "--help"}).code == 0);
}
