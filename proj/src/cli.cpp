#include "adca/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "adca/io.hpp"
#include "adca/montecarlo.hpp"
#include "adca/random_walk.hpp"

namespace adca::cli {

namespace {

using io::InputError;
using io::json;

/// Writes to --out when given, else to the command's stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw InputError("cannot write " + path);
      stream_ = &file_;
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

void write_number(std::ostream& os, double v) { os << std::setprecision(17) << v; }

/// File path, or one of: uniform, synchronous, independent:P.
SchedulerSpec scheduler_option(const std::string& value, std::size_t n) {
  if (std::filesystem::exists(value)) return io::load_scheduler(value, n);
  if (value == "uniform" || value == "global_clock") return SchedulerSpec::uniform_global_clock(n);
  if (value == "synchronous") return SchedulerSpec::synchronous(n);
  if (value.rfind("independent:", 0) == 0) {
    try {
      return SchedulerSpec::independent_clocks(n, std::stod(value.substr(12)));
    } catch (const std::logic_error&) {
      throw InputError("bad activation probability in '" + value + "'");
    }
  }
  throw InputError("scheduler '" + value + "' is neither a file nor uniform|synchronous|independent:P");
}

struct MatrixArgs {
  std::string matrix;
};

struct SimulateArgs {
  std::string matrix, schedule, scheduler, x0 = "random", out;
  std::size_t steps = 100;
  std::uint64_t seed = kDefaultSeed;
  bool no_lambda = false;
};

struct McArgs {
  std::string matrix, scheduler = "uniform", out, summary;
  std::size_t steps = 1000, trials = 200;
  double epsilon = kConsensusEpsilon;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
};

struct VerifyArgs {
  std::string matrix, scheduler = "uniform", out;
  std::size_t q_max = kDefaultQMax;
  std::vector<std::size_t> pair;
  std::size_t tick = 1;
};

struct WalkArgs {
  std::string cycle, from_matrix, out;
  double gamma = 0.2;
  std::size_t k_max = 200, trials = 10000;
  std::uint64_t seed = kDefaultSeed;
  std::vector<std::size_t> start;
};

struct ReproArgs {
  std::string case_id, out;
};

int run_analyze(const MatrixArgs& a, std::ostream& out) {
  const auto m = io::load_matrix(a.matrix);
  const auto g = build_graph(m);
  const auto r = roots(g);
  json scc = json::array();
  for (const auto& c : scc_decomposition(g)) scc.push_back(io::one_based(c));
  json cycle_length = nullptr;
  if (r.rooted) {
    try {
      cycle_length = build_labelled_cycle(g, r.chi).length();
    } catch (const GraphError&) {
    }
  }
  const json report{{"n", m.size()},
                    {"rooted", r.rooted},
                    {"roots", io::one_based(r.roots)},
                    {"chi", io::one_based(r.chi)},
                    {"scc", scc},
                    {"sia", is_sia(m)},
                    {"scrambling", is_scrambling(m)},
                    {"lambda", ergodic_coefficient(m)},
                    {"delta_min", m.delta()},
                    {"cycle_length", cycle_length}};
  out << report.dump(2) << '\n';
  return kExitOk;
}

int run_simulate(const SimulateArgs& a, std::ostream& out) {
  const auto m = io::load_matrix(a.matrix);
  const std::size_t n = m.size();
  std::optional<SchedulerSpec> spec;
  if (!a.schedule.empty()) {
    const json j = io::read_json(a.schedule);
    const bool repeat = j.is_object() && j.value("repeat", false);
    spec.emplace(n, Script{io::schedule_from_json(j, n), repeat});
  } else {
    spec = scheduler_option(a.scheduler.empty() ? "uniform" : a.scheduler, n);
  }
  ExperimentConfig cfg(m, *spec);
  cfg.trials = 1;
  cfg.horizon = a.steps;
  cfg.seed = a.seed;
  cfg.track_product = !a.no_lambda;
  if (a.x0 != "random") cfg.init.fixed = io::vector_from_json(io::read_json(a.x0));
  if (cfg.init.fixed && cfg.init.fixed->size() != n) {
    throw DimensionError("x0 has " + std::to_string(cfg.init.fixed->size()) + " entries, matrix has " +
                         std::to_string(n));
  }

  Sink sink(a.out, out);
  auto& os = sink.get();
  os << (cfg.track_product ? "k,delta,lambda_product\n" : "k,delta\n");
  if (a.steps == 0) return kExitOk;
  const auto record = run_trial(cfg, 0);
  for (std::size_t k = 1; k <= a.steps; ++k) {
    os << k << ',';
    write_number(os, record.delta[k]);
    if (cfg.track_product) {
      os << ',';
      write_number(os, record.lambda[k]);
    }
    os << '\n';
  }
  return kExitOk;
}

int run_mc(const McArgs& a, std::ostream& out) {
  const auto m = io::load_matrix(a.matrix);
  ExperimentConfig cfg(m, scheduler_option(a.scheduler, m.size()));
  cfg.trials = a.trials;
  cfg.horizon = a.steps;
  cfg.epsilon = a.epsilon;
  cfg.seed = a.seed;
  cfg.threads = a.threads;
  const auto result = run_experiment(cfg);

  {
    Sink sink(a.out, out);
    auto& os = sink.get();
    os << "k,p_delta_tail,p_lambda_tail\n";
    for (std::size_t k = 1; k <= result.horizon; ++k) {
      os << k << ',';
      write_number(os, result.p_delta_tail[k - 1]);
      os << ',';
      write_number(os, result.p_lambda_tail[k - 1]);
      os << '\n';
    }
  }
  json summary = io::to_json(result);
  summary["seed"] = a.seed;
  summary["note"] = "finite-horizon Monte Carlo estimate; consensus means Delta(x(K+1)) < epsilon";
  if (!a.summary.empty()) {
    Sink s(a.summary, out);
    s.get() << summary.dump(2) << '\n';
  } else if (!a.out.empty()) {
    out << summary.dump(2) << '\n';
  }
  return kExitOk;
}

int run_verify(const VerifyArgs& a, std::ostream& out) {
  const auto m = io::load_matrix(a.matrix);
  const auto spec = scheduler_option(a.scheduler, m.size());
  json report = io::to_json(check_conditions(spec, m, a.q_max));
  report["scheduler"] = to_string(spec.kind());
  if (!a.pair.empty()) {
    if (a.pair.size() != 2 || a.pair[0] < 1 || a.pair[1] < 1 || a.pair[0] > m.size() || a.pair[1] > m.size()) {
      throw InputError("--pair takes two node labels in 1.." + std::to_string(m.size()));
    }
    auto sa = io::to_json(check_strongly_aperiodic(spec, m, a.pair[0] - 1, a.pair[1] - 1, a.tick));
    sa["i"] = a.pair[0];
    sa["j"] = a.pair[1];
    sa["tick"] = a.tick;
    report["strongly_aperiodic"] = sa;
  }
  Sink sink(a.out, out);
  sink.get() << report.dump(2) << '\n';
  return kExitOk;
}

int run_walk(const WalkArgs& a, std::ostream& out) {
  LabelledCycle cycle;
  if (!a.cycle.empty()) {
    cycle = io::cycle_from_json(io::read_json(a.cycle));
  } else {
    const auto g = build_graph(io::load_matrix(a.from_matrix));
    const auto r = roots(g);
    if (!r.rooted) throw InputError("matrix graph is not rooted; no cycle to walk on");
    cycle = build_labelled_cycle(g, r.chi);
  }
  const std::size_t l = cycle.length();
  if (l < 2) throw InputError("the walk needs a cycle of length at least 2");
  std::size_t si = 0, sj = l / 2;
  if (!a.start.empty()) {
    if (a.start.size() != 2 || a.start[0] < 1 || a.start[1] < 1 || a.start[0] > l || a.start[1] > l) {
      throw InputError("--start takes two cycle positions in 1.." + std::to_string(l));
    }
    si = a.start[0] - 1;
    sj = a.start[1] - 1;
  }
  const auto curve = label_match_curve(cycle, si, sj, a.gamma, a.k_max, a.trials, a.seed);
  Sink sink(a.out, out);
  auto& os = sink.get();
  os << "k,empirical_match_prob,bound_1_minus_c0_beta_k\n";
  for (std::size_t k = 1; k <= a.k_max; ++k) {
    os << k << ',';
    write_number(os, curve.empirical[k - 1]);
    os << ',';
    write_number(os, curve.bound[k - 1]);
    os << '\n';
  }
  return kExitOk;
}

int run_repro(const ReproArgs& a, std::ostream& out) {
  std::vector<std::string> cases;
  if (a.case_id == "all") {
    cases = replay_cases();
  } else {
    const auto& known = replay_cases();
    if (std::find(known.begin(), known.end(), a.case_id) == known.end()) {
      throw InputError("unknown replay case '" + a.case_id + "'");
    }
    cases.push_back(a.case_id);
  }
  json reports = json::array();
  bool ok = true;
  for (const auto& c : cases) {
    const auto r = replay(c);
    ok = ok && r.passed();
    reports.push_back(io::to_json(r));
  }
  Sink sink(a.out, out);
  sink.get() << (cases.size() == 1 ? reports[0] : reports).dump(2) << '\n';
  return ok ? kExitOk : kExitReplayFailed;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Random asynchronous consensus iterations: analysis, simulation and replays", "adca"};
  app.require_subcommand(1);

  MatrixArgs analyze;
  auto* c_analyze = app.add_subcommand("analyze", "Graph and ergodicity report for a matrix");
  c_analyze->add_option("--matrix", analyze.matrix, "Matrix JSON file")->required();

  SimulateArgs sim;
  auto* c_sim = app.add_subcommand("simulate", "One trajectory; CSV of k, delta, lambda_product");
  c_sim->add_option("--matrix", sim.matrix, "Matrix JSON file")->required();
  auto* sched_file = c_sim->add_option("--schedule", sim.schedule, "JSON list of update sets");
  c_sim->add_option("--scheduler", sim.scheduler, "Scheduler JSON file or uniform|synchronous|independent:P")
      ->excludes(sched_file);
  c_sim->add_option("--steps", sim.steps, "Number of ticks K");
  c_sim->add_option("--x0", sim.x0, "Initial state JSON file, or 'random'");
  c_sim->add_option("--seed", sim.seed, "Master seed");
  c_sim->add_option("--out", sim.out, "CSV output path (default stdout)");
  c_sim->add_flag("--no-lambda", sim.no_lambda, "Skip product accumulation");

  McArgs mc;
  auto* c_mc = app.add_subcommand("mc", "Monte Carlo tail probabilities of Delta and lambda");
  c_mc->add_option("--matrix", mc.matrix, "Matrix JSON file")->required();
  c_mc->add_option("--scheduler", mc.scheduler, "Scheduler JSON file or uniform|synchronous|independent:P");
  c_mc->add_option("--steps", mc.steps, "Horizon K");
  c_mc->add_option("--trials", mc.trials, "Number of trials");
  c_mc->add_option("--epsilon", mc.epsilon, "Tail threshold");
  c_mc->add_option("--seed", mc.seed, "Master seed");
  c_mc->add_option("--threads", mc.threads, "Worker threads (0: automatic)");
  c_mc->add_option("--out", mc.out, "CSV output path");
  c_mc->add_option("--summary", mc.summary, "JSON summary path");

  VerifyArgs verify;
  auto* c_verify = app.add_subcommand("verify-conditions", "Check the convergence conditions for a scheduler");
  c_verify->add_option("--matrix", verify.matrix, "Matrix JSON file")->required();
  c_verify->add_option("--scheduler", verify.scheduler, "Scheduler JSON file or uniform|synchronous|independent:P");
  c_verify->add_option("--qmax", verify.q_max, "Largest coverage window searched");
  c_verify->add_option("--pair", verify.pair, "Also evaluate the strongly aperiodic check for nodes I J")
      ->expected(2);
  c_verify->add_option("--tick", verify.tick, "Tick used by the strongly aperiodic check");
  c_verify->add_option("--out", verify.out, "JSON output path");

  WalkArgs walk;
  auto* c_walk = app.add_subcommand("walk", "Backward walk on a labelled cycle; label-match curve");
  auto* cycle_opt = c_walk->add_option("--cycle", walk.cycle, "Cycle JSON file");
  auto* auto_opt = c_walk->add_option("--auto-from-matrix", walk.from_matrix, "Build the cycle from a matrix");
  cycle_opt->excludes(auto_opt);
  c_walk->add_option("--gamma", walk.gamma, "Move probability bound in (0, 1/3]");
  c_walk->add_option("--kmax", walk.k_max, "Largest time index");
  c_walk->add_option("--trials", walk.trials, "Number of walks");
  c_walk->add_option("--seed", walk.seed, "Master seed");
  c_walk->add_option("--start", walk.start, "Start positions I J")->expected(2);
  c_walk->add_option("--out", walk.out, "CSV output path");

  ReproArgs repro;
  auto* c_repro = app.add_subcommand("repro", "Run a canned replay case (or 'all')");
  c_repro->add_option("case", repro.case_id, "Case id")->required();
  c_repro->add_option("--out", repro.out, "JSON output path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (c_walk->parsed() && walk.cycle.empty() && walk.from_matrix.empty()) {
      throw InputError("walk needs --cycle or --auto-from-matrix");
    }
    if (c_analyze->parsed()) return run_analyze(analyze, out);
    if (c_sim->parsed()) return run_simulate(sim, out);
    if (c_mc->parsed()) return run_mc(mc, out);
    if (c_verify->parsed()) return run_verify(verify, out);
    if (c_walk->parsed()) return run_walk(walk, out);
    if (c_repro->parsed()) return run_repro(repro, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace adca::cli
