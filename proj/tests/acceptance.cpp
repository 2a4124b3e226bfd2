// Acceptance sweep. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "fairmsr/fairmsr.hpp"
#include "fixtures.hpp"

using namespace fairmsr;

namespace {

constexpr std::uint64_t kSeed = 20240611;
constexpr std::size_t kPerFamily = 100;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& o) {
  std::printf("%s criterion %d: %s (%s)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

struct Solved {
  SuiteKind suite;
  std::size_t index;
  Instance inst;
  ExactSolution exact;
};

// Bound sweeps over one or more families; keeps the oracle-solved instances
// for the structural criteria.
Outcome bound_sweep(const std::vector<SuiteKind>& suites, std::vector<Solved>& solved, double& seconds) {
  const auto start = std::chrono::steady_clock::now();
  std::size_t violations = 0, total = 0;
  double worst = 0.0;
  std::string first;
  for (SuiteKind s : suites) {
    for (std::size_t i = 0; i < kPerFamily; ++i) {
      const auto inst = suite_instance(s, kSeed, i);
      const auto exact = exact_msr(inst);
      const auto result = solve(inst);
      ++total;
      const double bound = suite_bound(s, inst.k, inst.epsilon);
      const bool feasible = result.clustering && clustering_feasible(inst, *result.clustering);
      const bool ok = exact && feasible && result.clustering->cost <= bound * exact->opt_cost;
      if (exact && result.clustering) {
        worst = std::max(worst, approximation_ratio(result.clustering->cost, exact->opt_cost) / bound);
      }
      if (!ok) {
        ++violations;
        if (first.empty()) first = std::string(to_string(s)) + "-" + std::to_string(i);
      }
      if (exact) solved.push_back({s, i, inst, *exact});
    }
  }
  seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Outcome o;
  o.pass = violations == 0;
  o.detail = std::to_string(total) + " instances, " + std::to_string(violations) +
             " violations, worst ratio/bound " + fmt("%.4f", worst);
  if (!first.empty()) o.detail += ", first failure " + first;
  return o;
}

Outcome completion_sweep() {
  std::size_t violations = 0;
  double worst = 0.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto cc = completion_case(splitmix64(kSeed + i));
    const auto in = cc.input();
    const double fft = fft_completion(in).value;
    const double opt = exact_completion(in);
    if (!(fft <= 2.0 * opt)) ++violations;
    if (opt > 0) worst = std::max(worst, fft / opt);
  }
  return {violations == 0, "200 instances, " + std::to_string(violations) + " violations, worst fft/opt " +
                               fmt("%.4f", worst)};
}

Outcome profile_coverage(const std::vector<Solved>& solved) {
  std::size_t misses = 0;
  for (const auto& s : solved) {
    const auto& r = s.exact.radius_profile;
    const double eps = s.inst.epsilon;
    const double k = static_cast<double>(s.inst.k);
    bool found = false;
    for_each_profile(s.inst, eps, [&](const RadiusProfile& p) {
      if (found) return;
      for (std::size_t j = 0; j < s.inst.k; ++j) {
        if (p.radii[j] < r[j] || p.radii[j] > (1 + eps) * std::max(r[j], eps / k * r[0])) return;
      }
      found = true;
    });
    if (!found) ++misses;
  }
  return {misses == 0, std::to_string(solved.size()) + " instances, " + std::to_string(misses) + " without a covering profile"};
}

struct GuessStats {
  std::size_t instances_without_cover = 0;
  std::size_t correct_covers = 0;
  std::size_t infeasible_correct = 0;
  std::size_t accepted_covers = 0;
  std::size_t bound_breaks = 0;
};

// Walks every (profile, tuple) cover of every solved instance once, checking
// the existence of a correct guess, feasibility of its components, and the
// components cost bound on every cover the components rule accepts.
GuessStats guess_sweep(const std::vector<Solved>& solved) {
  GuessStats st;
  for (const auto& s : solved) {
    const auto& inst = s.inst;
    const double limit = 3.0 * (1.0 + inst.epsilon) * s.exact.opt_cost;
    const double factor = 2.0 - 1.0 / static_cast<double>(inst.k);
    bool found = false;
    for (const auto& profile : enumerate_profiles(inst, inst.epsilon)) {
      for_each_cover(inst.dist, profile, [&](const GuessTuple&, const CandidateCover& cover) {
        const auto c = components_assignment(inst.dist, cover);
        if (c) {
          ++st.accepted_covers;
          if (!(c->cost <= factor * cover.total_radius())) ++st.bound_breaks;
        }
        if (cover.total_radius() <= limit && covers_all_optimal(inst.dist, cover, s.exact.clusters)) {
          found = true;
          ++st.correct_covers;
          if (!c || !clustering_feasible(inst, *c)) ++st.infeasible_correct;
        }
      });
    }
    if (!found) ++st.instances_without_cover;
  }
  return st;
}

Outcome adjusted_distance_fixture() {
  const auto d = test::completion_fixture();
  const std::vector<PointId> fixed{1, 2};
  const std::vector<double> radii{1.0, 0.5};
  const CompletionInput in{d, 3, fixed, radii};
  const double a = adjusted_distance(in, 0, 1), b = adjusted_distance(in, 0, 2), c = adjusted_distance(in, 0, 3);
  const double detour = b + d(2, 3);
  const bool ok = std::abs(a - 0.5) <= 1e-12 && std::abs(b - 0.5) <= 1e-12 &&
                  std::abs(c - std::sqrt(2.0)) <= 1e-12 && std::abs(detour - 1.0) <= 1e-12 && detour < c;
  return {ok, "d'(p,c1)=" + fmt("%.12g", a) + " d'(p,c2)=" + fmt("%.12g", b) + " d'(p,c3)=" + fmt("%.12g", c) +
                  " detour=" + fmt("%.12g", detour)};
}

// Two disjoint feasible clusters of a random instance, merged, must stay
// feasible.
Outcome merge_trials() {
  const std::vector<SuiteKind> kinds{SuiteKind::exact_fairness, SuiteKind::exact_balance,
                                     SuiteKind::ratio_balance, SuiteKind::lu_fairness,
                                     SuiteKind::lower_bound};
  Rng rng(kSeed);
  std::size_t failures_seen = 0;
  std::string detail;
  for (SuiteKind kind : kinds) {
    std::size_t done = 0;
    for (std::size_t idx = 0; done < 1000; ++idx) {
      const auto inst = suite_instance(kind, kSeed ^ 0x5eed, idx);
      const std::size_t n = inst.n();
      const auto global = global_histogram(inst);
      std::vector<std::uint32_t> feasible_sets;
      for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        ColorHistogram h(inst.num_colors());
        for (PointId p = 0; p < n; ++p)
          if (mask >> p & 1) h.add(inst.colors[p]);
        if (cluster_feasible(inst.constraint, h, global)) feasible_sets.push_back(mask);
      }
      for (int attempt = 0; attempt < 20 && done < 1000; ++attempt) {
        const auto a = rng.pick(feasible_sets), b = rng.pick(feasible_sets);
        if (a & b) continue;
        // clusters a and b, everything else in a third cluster
        std::vector<PointId> assignment(n);
        const auto lowest = [](std::uint32_t m) { return static_cast<PointId>(__builtin_ctz(m)); };
        const std::uint32_t rest = ((1u << n) - 1) & ~(a | b);
        std::vector<PointId> centers{lowest(a), lowest(b)};
        if (rest) centers.push_back(lowest(rest));
        for (PointId p = 0; p < n; ++p) {
          assignment[p] = (a >> p & 1) ? lowest(a) : (b >> p & 1) ? lowest(b) : lowest(rest);
        }
        const auto clustering = make_clustering(inst.dist, centers, assignment);
        const auto members = (a | b);
        const PointId pick = [&] {
          std::vector<PointId> m;
          for (PointId p = 0; p < n; ++p)
            if (members >> p & 1) m.push_back(p);
          return rng.pick(m);
        }();
        const auto merged = merge_clusters(inst, clustering, lowest(a), lowest(b), pick);
        ColorHistogram h(inst.num_colors());
        for (PointId p = 0; p < n; ++p)
          if (merged.assignment[p] == pick) h.add(inst.colors[p]);
        if (h.total != static_cast<std::size_t>(__builtin_popcount(members)) ||
            !cluster_feasible(inst.constraint, h, global)) {
          ++failures_seen;
        }
        ++done;
      }
    }
    detail += std::string(to_string(kind)) + " 1000 ";
  }
  return {failures_seen == 0, detail + "trials, " + std::to_string(failures_seen) + " failures"};
}

int run(const std::string& cmd) {
  const int status = std::system((cmd + " 2>/dev/null").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome determinism() {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "fairmsr_acceptance";
  fs::create_directories(dir);
  const std::string cli = FAIRMSR_CLI;
  const auto inst = (dir / "inst.json").string();
  if (run(cli + " gen --n 8 --k 3 --colors 2 --ratio 1:3 --constraint exact_fairness --seed 5 --out " + inst) != 0) {
    return {false, "gen failed"};
  }
  std::size_t compared = 0;
  bool same = true;
  for (const std::string flags : {"", " --mode components", " --one-center"}) {
    const auto a = (dir / "sol_a.json").string(), b = (dir / "sol_b.json").string();
    const int ea = run(cli + " solve --in " + inst + flags + " --seed 9 --out " + a);
    const int eb = run("FAIRMSR_THREADS=3 " + cli + " solve --in " + inst + flags + " --seed 9 --out " + b);
    same = same && ea == 0 && eb == 0 && slurp(a) == slurp(b) && !slurp(a).empty();
    ++compared;
  }
  const auto ca = (dir / "bench_a.csv").string(), cb = (dir / "bench_b.csv").string();
  const int ba = run(cli + " bench --count 5 --seed 4 --out " + ca);
  const int bb = run(cli + " bench --count 5 --seed 4 --out " + cb);
  same = same && ba == 0 && bb == 0 && slurp(ca) == slurp(cb) && !slurp(ca).empty();
  ++compared;
  return {same, std::to_string(compared) + " output pairs compared byte for byte"};
}

}  // namespace

int main() {
  std::vector<Solved> solved;
  double general_seconds = 0, pairing_seconds = 0, lower_seconds = 0;

  auto general = bound_sweep({SuiteKind::exact_fairness, SuiteKind::exact_balance, SuiteKind::ratio_balance,
                              SuiteKind::lu_fairness},
                             solved, general_seconds);
  general.pass = general.pass && general_seconds < 300;
  general.detail += ", " + fmt("%.1f", general_seconds) + " s";
  report(1, "general bound 6-3/k+eps", general);

  report(2, "1:1 bound 3(1+eps)", bound_sweep({SuiteKind::one_one}, solved, pairing_seconds));
  report(3, "lower-bound mode 3(1+eps)", bound_sweep({SuiteKind::lower_bound}, solved, lower_seconds));
  report(4, "completion 2-approximation", completion_sweep());
  report(5, "profile coverage", profile_coverage(solved));

  const auto st = guess_sweep(solved);
  report(6, "correct-guess existence",
         {st.instances_without_cover == 0,
          std::to_string(solved.size()) + " instances, " + std::to_string(st.instances_without_cover) +
              " without a correct cover within 3(1+eps) OPT"});
  report(7, "component feasibility and cost",
         {st.infeasible_correct == 0 && st.bound_breaks == 0,
          std::to_string(st.correct_covers) + " correct covers, " + std::to_string(st.infeasible_correct) +
              " infeasible; " + std::to_string(st.accepted_covers) + " accepted covers, " +
              std::to_string(st.bound_breaks) + " above (2-1/k) sum r"});
  report(8, "adjusted distance fixture", adjusted_distance_fixture());
  report(9, "mergeability", merge_trials());
  report(10, "determinism", determinism());

  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
