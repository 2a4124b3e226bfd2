#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <vector>

#include "fairmsr/instance.hpp"

namespace fairmsr {

struct ColorHistogram {
  std::vector<std::size_t> counts;
  std::size_t total = 0;

  ColorHistogram() = default;
  explicit ColorHistogram(std::size_t num_colors) : counts(num_colors, 0) {}

  void add(std::size_t color) {
    if (color >= counts.size()) counts.resize(color + 1, 0);
    ++counts[color];
    ++total;
  }

  ColorHistogram& operator+=(const ColorHistogram& other) {
    if (other.counts.size() > counts.size()) counts.resize(other.counts.size(), 0);
    for (std::size_t c = 0; c < other.counts.size(); ++c) counts[c] += other.counts[c];
    total += other.total;
    return *this;
  }

  std::size_t count(std::size_t color) const {
    return color < counts.size() ? counts[color] : 0;
  }
};

inline ColorHistogram histogram_of(const Instance& inst, std::span<const PointId> members) {
  ColorHistogram h(inst.num_colors());
  for (PointId p : members) h.add(inst.colors[p]);
  return h;
}

inline ColorHistogram global_histogram(const Instance& inst) {
  ColorHistogram h(inst.num_colors());
  for (std::size_t c : inst.colors) h.add(c);
  return h;
}

// Whether one cluster satisfies the constraint. All ratio tests are done by
// integer cross-multiplication. Empty clusters are vacuously feasible.
inline bool cluster_feasible(const ConstraintSpec& spec, const ColorHistogram& hist,
                             const ColorHistogram& global) {
  if (hist.total == 0) return true;
  const std::size_t m = std::max(hist.counts.size(), global.counts.size());
  using i64 = std::int64_t;
  switch (spec.kind) {
    case ConstraintKind::none:
      return true;

    case ConstraintKind::exact_fairness:
      // |C ∩ Γj| / |C| == |Γj| / |P|
      for (std::size_t j = 0; j < m; ++j) {
        if (hist.count(j) * global.total != global.count(j) * hist.total) return false;
      }
      return true;

    case ConstraintKind::ratio_balance: {
      const auto a = static_cast<i64>(hist.count(0));
      const auto b = static_cast<i64>(hist.count(1));
      // min(a/b, b/a) >= num/den, with x/0 read as +inf
      return std::min(a, b) * spec.balance.den >= spec.balance.num * std::max(a, b);
    }

    case ConstraintKind::exact_balance:
      for (std::size_t j = 1; j < m; ++j) {
        if (hist.count(j) != hist.count(0)) return false;
      }
      return true;

    case ConstraintKind::lu_fairness: {
      const auto total = static_cast<i64>(hist.total);
      for (std::size_t j = 0; j < m; ++j) {
        const auto c = static_cast<i64>(hist.count(j));
        const Rational lo = j < spec.lower.size() ? spec.lower[j] : Rational{0, 1};
        const Rational hi = j < spec.upper.size() ? spec.upper[j] : Rational{1, 1};
        if (lo.num * total > c * lo.den) return false;
        if (c * hi.den > hi.num * total) return false;
      }
      return true;
    }

    case ConstraintKind::lower_bound:
      return hist.total >= spec.ell;
  }
  return false;
}

// Every nonempty cluster of the clustering passes cluster_feasible.
inline bool clustering_feasible(const ConstraintSpec& spec, const Instance& inst,
                                const Clustering& clustering) {
  if (spec.kind == ConstraintKind::none) return true;
  const auto global = global_histogram(inst);
  for (const auto& members : cluster_members(clustering)) {
    if (!cluster_feasible(spec, histogram_of(inst, members), global)) return false;
  }
  return true;
}

inline bool clustering_feasible(const Instance& inst, const Clustering& clustering) {
  return clustering_feasible(inst.constraint, inst, clustering);
}

// The single cluster holding every point. It is feasible whenever any
// feasible clustering exists, because merging all clusters of that
// clustering yields it.
inline bool all_points_feasible(const Instance& inst) {
  const auto global = global_histogram(inst);
  return cluster_feasible(inst.constraint, global, global);
}

// Unions the clusters of centers `a` and `b` under `new_center`, which must be
// `a`, `b` or a member of either cluster, and must not lead a third cluster.
inline Clustering merge_clusters(const Instance& inst, const Clustering& clustering, PointId a,
                                 PointId b, PointId new_center) {
  const auto& centers = clustering.centers;
  const auto listed = [&](PointId c) {
    return std::find(centers.begin(), centers.end(), c) != centers.end();
  };
  if (a == b || !listed(a) || !listed(b)) {
    throw ContractViolation("merge_clusters needs two distinct listed centers");
  }
  const auto& assignment = clustering.assignment;
  if (new_center >= assignment.size() ||
      (new_center != a && new_center != b && assignment[new_center] != a &&
       assignment[new_center] != b)) {
    throw ContractViolation("new center must belong to one of the merged clusters");
  }
  if (new_center != a && new_center != b && listed(new_center)) {
    throw ContractViolation("new center already leads another cluster");
  }
  std::vector<PointId> new_centers;
  bool placed = false;
  for (PointId c : centers) {
    if (c == a || c == b) {
      if (!placed) new_centers.push_back(new_center);
      placed = true;
    } else {
      new_centers.push_back(c);
    }
  }
  auto new_assignment = assignment;
  for (auto& c : new_assignment) {
    if (c == a || c == b) c = new_center;
  }
  return make_clustering(inst.dist, new_centers, std::move(new_assignment));
}

}  // namespace fairmsr
