// fairmsr: constrained min-sum-radii clustering from the command line.
//
// Exit codes: 0 success, 1 IO/schema/parameter error, 2 no feasible
// clustering, 3 bench found a bound violation.

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "fairmsr/fairmsr.hpp"

namespace {

using namespace fairmsr;

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kInfeasible = 2;
constexpr int kBoundViolated = 3;

struct RunConfig {
  std::string in;
  std::string out;
  std::string solution;
  std::uint64_t seed = 0;
  std::optional<double> eps;
  std::string mode = "auto";
  std::size_t max_exact_n = 12;
  bool timing = false;
  bool one_center = false;
  // gen
  GenConfig gen;
  std::string ratio;
  std::string constraint = "exact_fairness";
  std::string b = "1/2";
  std::string geometry = "square";
  // bench
  std::string suite = "all";
  std::size_t count = 100;
};

std::size_t worker_count() {
  std::size_t threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FAIRMSR_THREADS")) {
    try {
      const auto cap = std::stoull(env);
      if (cap >= 1) threads = std::min<std::size_t>(threads, cap);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring FAIRMSR_THREADS=" << env << "\n";
    }
  }
  return threads;
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    write_text(path, text);
  }
}

std::vector<std::size_t> parse_ratio(const std::string& s) {
  std::vector<std::size_t> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw FormatError("ratio must look like 2:1, got \"" + s + "\"");
    }
  }
  return parts;
}

Rational parse_rational(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return {std::stoll(s), 1};
    return {std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1))};
  } catch (const std::exception&) {
    throw FormatError("expected a rational like 1/2, got \"" + s + "\"");
  }
}

int cmd_solve(const RunConfig& cfg) {
  Instance inst = read_instance(cfg.in);
  const auto mode = parse_assign_mode(cfg.mode);
  if (!mode) throw FormatError("unknown mode \"" + cfg.mode + "\"");
  SolveOptions options;
  options.epsilon = cfg.eps;
  options.mode = *mode;
  options.component_center = cfg.one_center ? ComponentCenter::one_center : ComponentCenter::largest_ball;
  options.threads = worker_count();

  const auto start = std::chrono::steady_clock::now();
  const auto result = solve(inst, options);
  Solution sol;
  sol.meta.profiles_tried = result.profiles_tried;
  sol.meta.tuples_tried = result.tuples_tried;
  sol.meta.seed = cfg.seed;
  if (cfg.timing) {
    sol.meta.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                              std::chrono::steady_clock::now() - start)
                              .count();
  }
  if (result.clustering) {
    sol.clustering = *result.clustering;
    sol.feasible = true;
  }
  emit(cfg.out, solution_to_string(sol));
  if (!sol.feasible) {
    std::cerr << "no feasible clustering found\n";
    return kInfeasible;
  }
  return kOk;
}

int cmd_exact(const RunConfig& cfg) {
  Instance inst = read_instance(cfg.in);
  if (cfg.eps) inst.epsilon = *cfg.eps;
  std::optional<ExactSolution> exact;
  try {
    ExactOptions exact_options;
    exact_options.max_n = cfg.max_exact_n;
    exact = exact_msr(inst, exact_options);
  } catch (const GuardExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  Solution sol;
  sol.meta.seed = cfg.seed;
  if (exact) {
    sol.clustering = exact->clustering;
    sol.feasible = true;
    sol.meta.tuples_tried = exact->partitions_enumerated;
  }
  emit(cfg.out, solution_to_string(sol));
  if (!sol.feasible) {
    std::cerr << "instance has no feasible clustering\n";
    return kInfeasible;
  }
  return kOk;
}

int cmd_validate(const RunConfig& cfg) {
  const Instance inst = read_instance(cfg.in);
  if (!cfg.solution.empty()) {
    try {
      check_solution(inst, read_solution(cfg.solution));
    } catch (const InvalidSolution& e) {
      std::cerr << "invalid solution: " << e.what() << "\n";
      return kError;
    }
  }
  std::cout << "ok\n";
  return kOk;
}

int cmd_gen(RunConfig cfg) {
  auto kind = parse_constraint_kind(cfg.constraint);
  if (!kind) throw FormatError("unknown constraint \"" + cfg.constraint + "\"");
  cfg.gen.constraint = *kind;
  cfg.gen.seed = cfg.seed;
  if (cfg.eps) cfg.gen.epsilon = *cfg.eps;
  if (!cfg.ratio.empty()) cfg.gen.ratio = parse_ratio(cfg.ratio);
  cfg.gen.b = parse_rational(cfg.b);
  if (cfg.geometry == "square") {
    cfg.gen.geometry = Geometry::square;
  } else if (cfg.geometry == "graph") {
    cfg.gen.geometry = Geometry::graph;
  } else {
    throw FormatError("geometry must be square or graph");
  }
  emit(cfg.out, instance_to_string(generate_instance(cfg.gen)));
  return kOk;
}

int cmd_bench(const RunConfig& cfg) {
  std::vector<SuiteKind> suites;
  if (cfg.suite == "all") {
    suites.assign(std::begin(kAllSuites), std::end(kAllSuites));
  } else {
    const auto s = parse_suite_kind(cfg.suite);
    if (!s) throw FormatError("unknown suite \"" + cfg.suite + "\"");
    suites.push_back(*s);
  }
  BenchOptions options;
  options.seed = cfg.seed;
  options.count = cfg.count;
  options.max_exact_n = cfg.max_exact_n;
  options.threads = worker_count();
  options.timing = cfg.timing;

  std::ostringstream csv;
  std::size_t violations = 0, skipped = 0, total = 0;
  double worst = 0.0;
  csv << kBenchHeader << "\n";
  for (SuiteKind s : suites) {
    for (const auto& row : run_suite(s, options)) {
      csv << format_bench_row(row) << "\n";
      ++total;
      if (row.skipped) {
        ++skipped;
        std::cerr << "notice: " << row.instance_id << " skipped, exceeds --max-exact-n\n";
        continue;
      }
      if (row.violates()) {
        ++violations;
        std::cerr << "violation: " << row.instance_id << " ratio " << row.ratio << " bound "
                  << row.bound << (row.feasible ? "" : " (infeasible output)") << "\n";
      }
      if (row.ratio / row.bound > worst) worst = row.ratio / row.bound;
    }
  }
  emit(cfg.out, csv.str());
  std::cerr << total << " instances, " << skipped << " skipped, " << violations
            << " violations, worst ratio/bound " << worst << "\n";
  return violations == 0 ? kOk : kBoundViolated;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Constrained min-sum-radii clustering"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.out, "output file (stdout if omitted)");
    sub->add_option("--seed", cfg.seed, "seed, recorded in the output");
  };

  auto* solve_cmd = app.add_subcommand("solve", "run the approximation algorithm");
  solve_cmd->add_option("--in", cfg.in, "instance JSON")->required();
  common(solve_cmd);
  solve_cmd->add_option("--eps", cfg.eps, "override the instance epsilon");
  solve_cmd->add_option("--mode", cfg.mode, "auto|components|one_one|lower_bound");
  solve_cmd->add_flag("--timing", cfg.timing, "record wall time in meta.elapsed_ms");
  solve_cmd->add_flag("--one-center", cfg.one_center,
                      "center each component at its best member instead of its largest ball");

  auto* exact_cmd = app.add_subcommand("exact", "solve exactly by enumerating partitions");
  exact_cmd->add_option("--in", cfg.in, "instance JSON")->required();
  common(exact_cmd);
  exact_cmd->add_option("--eps", cfg.eps, "ignored by the exact solver; accepted for symmetry");
  exact_cmd->add_option("--max-exact-n", cfg.max_exact_n, "refuse instances above this size");

  auto* validate_cmd = app.add_subcommand("validate", "check an instance and optionally a solution");
  validate_cmd->add_option("--in", cfg.in, "instance JSON")->required();
  validate_cmd->add_option("--solution", cfg.solution, "solution JSON to check against it");

  auto* gen_cmd = app.add_subcommand("gen", "generate a random instance");
  common(gen_cmd);
  gen_cmd->add_option("--n", cfg.gen.n, "number of points");
  gen_cmd->add_option("--k", cfg.gen.k, "number of clusters");
  gen_cmd->add_option("--colors", cfg.gen.colors, "number of colors");
  gen_cmd->add_option("--ratio", cfg.ratio, "relative color counts, e.g. 2:1");
  gen_cmd->add_option("--constraint", cfg.constraint,
                      "none|exact_fairness|exact_balance|ratio_balance|lu_fairness|lower_bound");
  gen_cmd->add_option("--b", cfg.b, "ratio_balance threshold, e.g. 1/2");
  gen_cmd->add_option("--ell", cfg.gen.ell, "lower_bound minimum cluster size");
  gen_cmd->add_option("--slack", cfg.gen.lu_slack, "lu_fairness slack in twelfths");
  gen_cmd->add_option("--geometry", cfg.geometry, "square|graph");
  gen_cmd->add_option("--eps", cfg.eps, "epsilon stored in the instance");

  auto* bench_cmd = app.add_subcommand("bench", "sweep seeded families against the exact solver");
  common(bench_cmd);
  bench_cmd->add_option("--suite", cfg.suite,
                        "all|exact_fairness|exact_balance|ratio_balance|lu_fairness|one_one|lower_bound");
  bench_cmd->add_option("--count", cfg.count, "instances per family");
  bench_cmd->add_option("--max-exact-n", cfg.max_exact_n, "skip instances above this size");
  bench_cmd->add_flag("--timing", cfg.timing, "record wall time in elapsed_ms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kError;
  }

  try {
    if (*solve_cmd) return cmd_solve(cfg);
    if (*exact_cmd) return cmd_exact(cfg);
    if (*validate_cmd) return cmd_validate(cfg);
    if (*gen_cmd) return cmd_gen(cfg);
    if (*bench_cmd) return cmd_bench(cfg);
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
