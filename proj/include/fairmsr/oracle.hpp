#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "fairmsr/constraints.hpp"
#include "fairmsr/instance.hpp"
#include "fairmsr/kcenter.hpp"

namespace fairmsr {

// Thrown when a brute-force routine is asked to exceed its size guard.
class GuardExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ExactSolution {
  Clustering clustering;
  double opt_cost = 0.0;
  // Clusters and their centers by decreasing radius (ties: smaller center).
  std::vector<std::vector<PointId>> clusters;
  std::vector<PointId> centers;
  // Radii by decreasing value, padded with zeros to length k.
  std::vector<double> radius_profile;
  std::size_t partitions_enumerated = 0;
};

struct ExactOptions {
  std::size_t max_n = 12;
  bool prune = true;  // branch and bound; disable to visit every partition
};

namespace detail {

// Minimum total radius over distinct centers, one per block, where
// block_radius[b][c] is the radius of block b around point c.
inline std::vector<PointId> distinct_centers(const std::vector<std::vector<double>>& block_radius) {
  const std::size_t blocks = block_radius.size();
  const std::size_t n = blocks == 0 ? 0 : block_radius.front().size();
  std::vector<PointId> pick(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    pick[b] = static_cast<PointId>(
        std::min_element(block_radius[b].begin(), block_radius[b].end()) - block_radius[b].begin());
  }
  auto sorted = pick;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end()) return pick;

  // Conflict: exact assignment by DP over (point, set of served blocks).
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const std::size_t full = std::size_t{1} << blocks;
  std::vector<std::vector<double>> dp(n + 1, std::vector<double>(full, kInf));
  std::vector<std::vector<int>> choice(n + 1, std::vector<int>(full, -1));
  dp[0][0] = 0.0;
  for (PointId p = 0; p < n; ++p) {
    for (std::size_t mask = 0; mask < full; ++mask) {
      if (dp[p][mask] == kInf) continue;
      if (dp[p][mask] < dp[p + 1][mask]) {
        dp[p + 1][mask] = dp[p][mask];
        choice[p + 1][mask] = -1;
      }
      for (std::size_t b = 0; b < blocks; ++b) {
        if (mask & (std::size_t{1} << b)) continue;
        const std::size_t next = mask | (std::size_t{1} << b);
        const double v = dp[p][mask] + block_radius[b][p];
        if (v < dp[p + 1][next]) {
          dp[p + 1][next] = v;
          choice[p + 1][next] = static_cast<int>(b);
        }
      }
    }
  }
  std::size_t mask = full - 1;
  for (std::size_t p = n; p > 0; --p) {
    const int b = choice[p][mask];
    if (b >= 0) {
      pick[static_cast<std::size_t>(b)] = p - 1;
      mask &= ~(std::size_t{1} << b);
    }
  }
  return pick;
}

}  // namespace detail

// Exact constrained k-MSR by enumerating set partitions into at most k blocks
// as restricted-growth strings in lexicographic order. A block may be served
// by any point as center, centers pairwise distinct. Returns nullopt when no
// partition is feasible. Ties keep the lexicographically first partition.
inline std::optional<ExactSolution> exact_msr(const Instance& inst, const ExactOptions& options = {}) {
  const std::size_t n = inst.n();
  const std::size_t k = inst.k;
  if (n > options.max_n) {
    throw GuardExceeded("exact_msr refuses n=" + std::to_string(n) + " (guard " +
                        std::to_string(options.max_n) + ")");
  }
  const auto global = global_histogram(inst);

  std::vector<std::size_t> label(n, 0);
  // block_radius[level][b][c]: radius of block b around c after placing points < level
  std::vector<std::vector<std::vector<double>>> radius_at(n + 1);
  radius_at[0] = {};

  std::optional<Clustering> best;
  double best_cost = std::numeric_limits<double>::infinity();
  std::size_t visited = 0;

  const auto lower_bound = [](const std::vector<std::vector<double>>& blocks) {
    double total = 0.0;
    for (const auto& row : blocks) total += *std::min_element(row.begin(), row.end());
    return total;
  };

  const auto evaluate = [&](const std::vector<std::vector<double>>& blocks) {
    ++visited;
    const std::size_t b = blocks.size();
    std::vector<ColorHistogram> hist(b, ColorHistogram(inst.num_colors()));
    for (PointId p = 0; p < n; ++p) hist[label[p]].add(inst.colors[p]);
    for (const auto& h : hist) {
      if (!cluster_feasible(inst.constraint, h, global)) return;
    }
    const auto centers = detail::distinct_centers(blocks);
    std::vector<PointId> assignment(n);
    for (PointId p = 0; p < n; ++p) assignment[p] = centers[label[p]];
    auto clustering = make_clustering(inst.dist, centers, std::move(assignment));
    if (clustering.cost < best_cost) {
      best_cost = clustering.cost;
      best = std::move(clustering);
    }
  };

  const auto place = [&](auto&& self, PointId p, std::size_t used) -> void {
    const auto& blocks = radius_at[p];
    if (options.prune && best && lower_bound(blocks) > best_cost + 1e-9 * std::max(1.0, best_cost)) {
      return;
    }
    if (p == n) {
      evaluate(blocks);
      return;
    }
    const std::size_t limit = std::min(used + 1, k);
    for (std::size_t b = 0; b < limit; ++b) {
      label[p] = b;
      auto next = blocks;
      if (b == used) next.emplace_back(n, 0.0);
      for (PointId c = 0; c < n; ++c) next[b][c] = std::max(next[b][c], inst.d(p, c));
      radius_at[p + 1] = std::move(next);
      self(self, p + 1, b == used ? used + 1 : used);
    }
  };
  place(place, 0, 0);

  if (!best) return std::nullopt;
  ExactSolution out;
  out.partitions_enumerated = visited;
  out.opt_cost = best->cost;
  auto members = cluster_members(*best);
  std::vector<std::size_t> order(best->centers.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (best->radii[a] != best->radii[b]) return best->radii[a] > best->radii[b];
    return best->centers[a] < best->centers[b];
  });
  for (std::size_t i : order) {
    out.clusters.push_back(members[i]);
    out.centers.push_back(best->centers[i]);
    out.radius_profile.push_back(best->radii[i]);
  }
  out.radius_profile.resize(k, 0.0);
  out.clustering = std::move(*best);
  return out;
}

namespace detail {

// d' written out case by case: a distance to a fixed center c_i loses r_i, a
// distance between two fixed centers loses both radii, anything else is d.
// Kept separate from AdjustedDistance so the two can check each other; a
// point listed as several fixed centers uses its first slot.
inline double literal_dprime(const CompletionInput& in, PointId x, PointId y) {
  if (x == y) return 0.0;
  const auto slot = [&](PointId p) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < in.fixed_centers.size(); ++i) {
      if (in.fixed_centers[i] == p) return i;
    }
    return std::nullopt;
  };
  const auto sx = slot(x);
  const auto sy = slot(y);
  const double d = in.dist(x, y);
  if (sx && sy) return std::max(d - (in.fixed_radii[*sx] + in.fixed_radii[*sy]), 0.0);
  if (sy) return std::max(d - in.fixed_radii[*sy], 0.0);
  if (sx) return std::max(d - in.fixed_radii[*sx], 0.0);
  return d;
}

}  // namespace detail

// Optimal value of a k-center completion instance by trying every set of
// k - ℓ extension centers.
inline double exact_completion(const CompletionInput& in, std::size_t max_n = 10,
                               std::size_t max_free = 3) {
  const std::size_t n = in.dist.size();
  const std::size_t ell = in.fixed_centers.size();
  if (n > max_n) throw GuardExceeded("exact_completion refuses n=" + std::to_string(n));
  if (in.k < ell || in.k > n) throw ContractViolation("exact_completion needs ℓ <= k <= n");
  const std::size_t free = in.k - ell;
  if (free > max_free) throw GuardExceeded("exact_completion refuses k-ℓ=" + std::to_string(free));

  const auto dprime = [&](PointId x, PointId y) { return detail::literal_dprime(in, x, y); };
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> to_fixed(n, kInf);
  for (PointId p = 0; p < n; ++p) {
    for (PointId c : in.fixed_centers) to_fixed[p] = std::min(to_fixed[p], dprime(p, c));
  }

  double best = kInf;
  std::vector<PointId> chosen;
  const auto search = [&](auto&& self, PointId from) -> void {
    if (chosen.size() == free) {
      double value = 0.0;
      for (PointId p = 0; p < n; ++p) {
        double nearest = to_fixed[p];
        for (PointId c : chosen) nearest = std::min(nearest, dprime(p, c));
        value = std::max(value, nearest);
      }
      best = std::min(best, value);
      return;
    }
    for (PointId c = from; c < n; ++c) {
      chosen.push_back(c);
      self(self, c + 1);
      chosen.pop_back();
    }
  };
  search(search, 0);
  return best;
}

// Maximum matching size of a bipartite graph given as a left x right
// adjacency matrix, by exhaustive search.
inline std::size_t exact_matching(const std::vector<std::vector<bool>>& adjacency,
                                  std::size_t max_side = 6) {
  const std::size_t left = adjacency.size();
  const std::size_t right = left == 0 ? 0 : adjacency.front().size();
  if (left > max_side || right > max_side) throw GuardExceeded("exact_matching side too large");
  std::vector<bool> taken(right, false);
  const auto search = [&](auto&& self, std::size_t u) -> std::size_t {
    if (u == left) return 0;
    std::size_t best = self(self, u + 1);  // leave u unmatched
    for (std::size_t v = 0; v < right; ++v) {
      if (!adjacency[u][v] || taken[v]) continue;
      taken[v] = true;
      best = std::max(best, 1 + self(self, u + 1));
      taken[v] = false;
    }
    return best;
  };
  return search(search, 0);
}

}  // namespace fairmsr
