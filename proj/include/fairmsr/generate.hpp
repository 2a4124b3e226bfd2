#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fairmsr/constraints.hpp"
#include "fairmsr/instance.hpp"
#include "fairmsr/kcenter.hpp"

namespace fairmsr {

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// mt19937_64 with the distributions written out, so that a seed produces the
// same stream under every standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform in [lo, hi], by rejection.
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) return next();
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
    std::uint64_t x;
    do x = next();
    while (x >= limit);
    return lo + x % span;
  }

  std::size_t index(std::size_t size) { return static_cast<std::size_t>(between(0, size - 1)); }

  template <class T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[index(i)]);
  }

  template <class T>
  const T& pick(const std::vector<T>& v) {
    return v[index(v.size())];
  }

 private:
  std::mt19937_64 engine_;
};

enum class Geometry { square, graph };

inline std::string_view to_string(Geometry g) { return g == Geometry::square ? "square" : "graph"; }

// Uniform points in the unit square.
inline std::vector<std::vector<double>> random_square_points(Rng& rng, std::size_t n) {
  std::vector<std::vector<double>> pts(n);
  for (auto& p : pts) {
    const double x = rng.uniform();
    p = {x, rng.uniform()};
  }
  return pts;
}

// Shortest-path closure of a random graph with integer weights 1..10. A
// random Hamiltonian path keeps it connected; every other pair is joined with
// probability 1/2.
inline DistanceMatrix random_graph_metric(Rng& rng, std::size_t n) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0.0;
  const auto join = [&](std::size_t a, std::size_t b) {
    const double w = static_cast<double>(rng.between(1, 10));
    d[a][b] = d[b][a] = std::min(d[a][b], w);
  };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  for (std::size_t i = 1; i < n; ++i) join(order[i - 1], order[i]);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (rng.between(0, 1) == 1) join(a, b);
    }
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) d[a][b] = std::min(d[a][b], d[a][m] + d[m][b]);
    }
  }
  return DistanceMatrix::from_rows(d);
}

inline void set_geometry(Instance& inst, Rng& rng, std::size_t n, Geometry g) {
  if (g == Geometry::square) {
    inst.points = random_square_points(rng, n);
    inst.dist = DistanceMatrix::from_points(*inst.points);
  } else {
    inst.points.reset();
    inst.dist = random_graph_metric(rng, n);
  }
}

// A shuffled color vector with the given count per color.
inline std::vector<std::size_t> colors_from_counts(Rng& rng, const std::vector<std::size_t>& counts) {
  std::vector<std::size_t> colors;
  for (std::size_t c = 0; c < counts.size(); ++c) colors.insert(colors.end(), counts[c], c);
  rng.shuffle(colors);
  return colors;
}

// l_i = floor(12 p_i - s)/12 and u_i = ceil(12 p_i + s)/12 around the global
// proportions p_i, clipped to [0, 1].
inline void lu_bounds_around_global(ConstraintSpec& spec, const std::vector<std::size_t>& counts,
                                    std::int64_t slack) {
  const auto n = static_cast<std::int64_t>(std::accumulate(counts.begin(), counts.end(), std::size_t{0}));
  constexpr std::int64_t kDen = 12;
  spec.lower.clear();
  spec.upper.clear();
  for (std::size_t c : counts) {
    const auto scaled = static_cast<std::int64_t>(c) * kDen;  // 12·p_i = scaled / n
    const std::int64_t lo = scaled / n - slack;
    const std::int64_t hi = (scaled + n - 1) / n + slack;
    spec.lower.push_back({std::max<std::int64_t>(lo, 0), kDen});
    spec.upper.push_back({std::min(hi, kDen), kDen});
  }
}

struct GenConfig {
  std::size_t n = 8;
  std::size_t k = 2;
  std::size_t colors = 2;
  std::vector<std::size_t> ratio;  // relative color counts; empty means equal
  ConstraintKind constraint = ConstraintKind::exact_fairness;
  Rational b{1, 2};
  std::size_t ell = 2;
  std::int64_t lu_slack = 1;
  Geometry geometry = Geometry::square;
  double epsilon = 0.5;
  std::uint64_t seed = 0;
};

// Builds one instance from explicit parameters. Throws FormatError when the
// parameters cannot describe a feasible instance.
inline Instance generate_instance(const GenConfig& cfg) {
  if (cfg.n == 0) throw FormatError("n must be positive");
  if (cfg.k < 1 || cfg.k > cfg.n) throw FormatError("k must satisfy 1 <= k <= n");
  auto ratio = cfg.ratio;
  if (ratio.empty()) ratio.assign(std::max<std::size_t>(cfg.colors, 1), 1);
  if (ratio.size() != cfg.colors) {
    throw FormatError("ratio has " + std::to_string(ratio.size()) + " parts for " +
                      std::to_string(cfg.colors) + " colors");
  }
  if (std::find(ratio.begin(), ratio.end(), 0) != ratio.end()) {
    throw FormatError("every ratio part must be positive");
  }
  const std::size_t unit = std::accumulate(ratio.begin(), ratio.end(), std::size_t{0});
  if (cfg.n % unit != 0) {
    throw FormatError("n=" + std::to_string(cfg.n) + " is not divisible by the ratio total " +
                      std::to_string(unit));
  }
  std::vector<std::size_t> counts;
  for (std::size_t r : ratio) counts.push_back(r * (cfg.n / unit));

  Rng rng(cfg.seed);
  Instance inst;
  set_geometry(inst, rng, cfg.n, cfg.geometry);
  inst.colors = colors_from_counts(rng, counts);
  inst.k = cfg.k;
  inst.epsilon = cfg.epsilon;
  inst.constraint.kind = cfg.constraint;
  switch (cfg.constraint) {
    case ConstraintKind::ratio_balance: inst.constraint.balance = cfg.b; break;
    case ConstraintKind::lu_fairness: lu_bounds_around_global(inst.constraint, counts, cfg.lu_slack); break;
    case ConstraintKind::lower_bound: inst.constraint.ell = cfg.ell; break;
    default: break;
  }
  validate_instance(inst);
  if (!all_points_feasible(inst)) {
    throw FormatError("the generated instance is infeasible: the whole point set violates " +
                      std::string(to_string(cfg.constraint)));
  }
  return inst;
}

// Instance families of the acceptance sweep.
enum class SuiteKind { exact_fairness, exact_balance, ratio_balance, lu_fairness, one_one, lower_bound };

inline constexpr SuiteKind kAllSuites[] = {SuiteKind::exact_fairness, SuiteKind::exact_balance,
                                           SuiteKind::ratio_balance,  SuiteKind::lu_fairness,
                                           SuiteKind::one_one,        SuiteKind::lower_bound};

inline std::string_view to_string(SuiteKind s) {
  switch (s) {
    case SuiteKind::exact_fairness: return "exact_fairness";
    case SuiteKind::exact_balance: return "exact_balance";
    case SuiteKind::ratio_balance: return "ratio_balance";
    case SuiteKind::lu_fairness: return "lu_fairness";
    case SuiteKind::one_one: return "one_one";
    case SuiteKind::lower_bound: return "lower_bound";
  }
  return "exact_fairness";
}

inline std::optional<SuiteKind> parse_suite_kind(std::string_view s) {
  for (auto kind : kAllSuites) {
    if (to_string(kind) == s) return kind;
  }
  return std::nullopt;
}

// Guarantee checked by the sweep: 3(1+eps) where a pairing or flow
// assignment applies, 6 - 3/k + eps otherwise.
inline double suite_bound(SuiteKind s, std::size_t k, double eps) {
  if (s == SuiteKind::one_one || s == SuiteKind::lower_bound) return 3.0 * (1.0 + eps);
  return 6.0 - 3.0 / static_cast<double>(k) + eps;
}

inline std::uint64_t suite_seed(std::uint64_t base, SuiteKind s, std::size_t index) {
  return splitmix64(splitmix64(base ^ (static_cast<std::uint64_t>(s) + 1) * 0x9E3779B97F4A7C15ull) +
                    index);
}

// The index-th member of a family: n <= 8, k in {2,3}, eps = 0.5, unit-square
// and graph metrics alternating with the index.
inline Instance suite_instance(SuiteKind s, std::uint64_t base_seed, std::size_t index) {
  Rng rng(suite_seed(base_seed, s, index));
  Instance inst;
  inst.epsilon = 0.5;
  inst.k = 2 + rng.index(2);
  const Geometry geometry = index % 2 == 0 ? Geometry::square : Geometry::graph;
  std::vector<std::size_t> counts;
  switch (s) {
    case SuiteKind::exact_fairness: {
      // unequal or more than two colors, two copies of the pattern
      const std::vector<std::vector<std::size_t>> patterns{{2, 1}, {1, 1, 1}, {2, 1, 1}, {3, 1}, {1, 1, 1, 1}};
      for (std::size_t c : rng.pick(patterns)) counts.push_back(2 * c);
      inst.constraint.kind = ConstraintKind::exact_fairness;
      break;
    }
    case SuiteKind::exact_balance: {
      const std::vector<std::vector<std::size_t>> shapes{{2, 2}, {3, 3}, {4, 4}, {2, 2, 2}, {2, 2, 2, 2}};
      counts = rng.pick(shapes);
      inst.constraint.kind = ConstraintKind::exact_balance;
      break;
    }
    case SuiteKind::ratio_balance: {
      const std::vector<Rational> bs{{1, 2}, {1, 3}, {2, 3}, {1, 1}};
      const Rational b = rng.pick(bs);
      // global counts must meet the balance for the instance to be feasible
      std::vector<std::vector<std::size_t>> options;
      for (std::size_t n = 4; n <= 8; ++n) {
        for (std::size_t c0 = 1; c0 < n; ++c0) {
          const std::size_t lo = std::min(c0, n - c0), hi = std::max(c0, n - c0);
          if (static_cast<std::int64_t>(lo) * b.den >= b.num * static_cast<std::int64_t>(hi)) {
            options.push_back({c0, n - c0});
          }
        }
      }
      counts = rng.pick(options);
      inst.constraint.kind = ConstraintKind::ratio_balance;
      inst.constraint.balance = b;
      break;
    }
    case SuiteKind::lu_fairness: {
      const std::size_t m = 2 + rng.index(2);
      const std::size_t n = 5 + rng.index(4);
      counts.assign(m, 1);
      for (std::size_t i = m; i < n; ++i) ++counts[rng.index(m)];
      inst.constraint.kind = ConstraintKind::lu_fairness;
      lu_bounds_around_global(inst.constraint, counts, static_cast<std::int64_t>(rng.index(3)));
      break;
    }
    case SuiteKind::one_one: {
      const std::size_t half = 2 + rng.index(3);
      counts = {half, half};
      inst.constraint.kind = ConstraintKind::exact_fairness;
      break;
    }
    case SuiteKind::lower_bound: {
      const std::size_t n = 2 * inst.k + rng.index(8 - 2 * inst.k + 1);
      const std::size_t c0 = 1 + rng.index(n - 1);
      counts = {c0, n - c0};
      inst.constraint.kind = ConstraintKind::lower_bound;
      inst.constraint.ell = 2;
      break;
    }
  }
  const std::size_t n = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  inst.k = std::min(inst.k, n);
  set_geometry(inst, rng, n, geometry);
  inst.colors = colors_from_counts(rng, counts);
  return inst;
}

// A random k-center completion problem: n <= 8, k <= 3, at most two fixed
// centers at distinct points with radii uniform in [0, diameter].
struct CompletionCase {
  DistanceMatrix dist;
  std::size_t k = 1;
  std::vector<PointId> fixed_centers;
  std::vector<double> fixed_radii;

  CompletionInput input() const { return {dist, k, fixed_centers, fixed_radii}; }
};

inline CompletionCase completion_case(std::uint64_t seed) {
  Rng rng(seed);
  CompletionCase out;
  const std::size_t n = 2 + rng.index(7);
  out.dist = rng.between(0, 1) == 0 ? DistanceMatrix::from_points(random_square_points(rng, n))
                                    : random_graph_metric(rng, n);
  out.k = 1 + rng.index(std::min<std::size_t>(3, n));
  const std::size_t ell = rng.index(std::min<std::size_t>(2, out.k) + 1);
  std::vector<PointId> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  rng.shuffle(ids);
  const double diameter = out.dist.max_entry();
  for (std::size_t i = 0; i < ell; ++i) {
    out.fixed_centers.push_back(ids[i]);
    out.fixed_radii.push_back(rng.uniform(0.0, diameter));
  }
  return out;
}

}  // namespace fairmsr
