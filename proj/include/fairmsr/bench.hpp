#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include "fairmsr/constraints.hpp"
#include "fairmsr/generate.hpp"
#include "fairmsr/oracle.hpp"
#include "fairmsr/search.hpp"

namespace fairmsr {

struct BenchOptions {
  std::uint64_t seed = 0;
  std::size_t count = 100;
  std::size_t max_exact_n = 12;
  std::size_t threads = 1;
  bool timing = false;  // keep elapsed_ms at 0 unless asked, for byte-stable output
};

struct BenchRow {
  std::string instance_id;
  std::size_t n = 0;
  std::size_t k = 0;
  std::string constraint;
  double eps = 0.0;
  double opt = 0.0;
  double cost = 0.0;
  double ratio = 0.0;
  double bound = 0.0;
  std::int64_t elapsed_ms = 0;
  bool feasible = false;
  bool skipped = false;  // oracle guard exceeded

  bool violates() const { return !skipped && (!feasible || !(ratio <= bound)); }
};

// cost/OPT, with 0/0 read as 1.
inline double approximation_ratio(double cost, double opt) {
  if (opt > 0.0) return cost / opt;
  return cost == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
}

inline BenchRow bench_instance(const Instance& inst, SuiteKind suite, std::string id,
                               const BenchOptions& options) {
  BenchRow row;
  row.instance_id = std::move(id);
  row.n = inst.n();
  row.k = inst.k;
  row.constraint = std::string(to_string(suite));
  row.eps = inst.epsilon;
  row.bound = suite_bound(suite, inst.k, inst.epsilon);

  std::optional<ExactSolution> exact;
  try {
    ExactOptions exact_options;
    exact_options.max_n = options.max_exact_n;
    exact = exact_msr(inst, exact_options);
  } catch (const GuardExceeded&) {
    row.skipped = true;
    return row;
  }
  const auto start = std::chrono::steady_clock::now();
  SolveOptions solve_options;
  solve_options.threads = options.threads;
  const auto result = solve(inst, solve_options);
  if (options.timing) {
    row.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  }
  row.feasible = result.clustering && clustering_feasible(inst, *result.clustering);
  if (!exact) {
    // no feasible clustering exists; the solver must agree
    row.feasible = !result.clustering;
    row.ratio = 1.0;
    return row;
  }
  row.opt = exact->opt_cost;
  row.cost = result.clustering ? result.clustering->cost : 0.0;
  row.ratio = result.clustering ? approximation_ratio(row.cost, row.opt)
                                : std::numeric_limits<double>::infinity();
  return row;
}

inline std::vector<BenchRow> run_suite(SuiteKind suite, const BenchOptions& options) {
  std::vector<BenchRow> rows;
  for (std::size_t i = 0; i < options.count; ++i) {
    char id[64];
    std::snprintf(id, sizeof id, "%s-%03zu", std::string(to_string(suite)).c_str(), i);
    rows.push_back(bench_instance(suite_instance(suite, options.seed, i), suite, id, options));
  }
  return rows;
}

inline const char* kBenchHeader = "instance_id,n,k,constraint,eps,opt,cost,ratio,bound,elapsed_ms";

inline std::string format_bench_row(const BenchRow& r) {
  const auto num = [](double v) {
    if (std::isinf(v)) return std::string(v > 0 ? "inf" : "-inf");
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  if (r.skipped) {
    return r.instance_id + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," +
           r.constraint + "," + num(r.eps) + ",skipped,,,," + std::to_string(r.elapsed_ms);
  }
  return r.instance_id + "," + std::to_string(r.n) + "," + std::to_string(r.k) + "," + r.constraint +
         "," + num(r.eps) + "," + num(r.opt) + "," + num(r.cost) + "," + num(r.ratio) + "," +
         num(r.bound) + "," + std::to_string(r.elapsed_ms);
}

inline void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  out << kBenchHeader << "\n";
  for (const auto& r : rows) out << format_bench_row(r) << "\n";
}

}  // namespace fairmsr
