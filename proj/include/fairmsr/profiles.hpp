#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fairmsr/constraints.hpp"
#include "fairmsr/instance.hpp"
#include "fairmsr/kcenter.hpp"

namespace fairmsr {

// Thrown when the all-points cluster is infeasible, which means no feasible
// clustering exists under a mergeable constraint.
class NoAnchorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Non-increasing guesses for the k optimal radii.
struct RadiusProfile {
  std::vector<double> radii;

  friend bool operator==(const RadiusProfile&, const RadiusProfile&) = default;
};

// Bounds on the largest optimal radius. When `may_be_zero` is set the
// optimum may also be exactly 0 and `lo` only bounds it when it is positive.
struct RadiusInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool may_be_zero = false;
};

// lo: half the unconstrained farthest-first value, a lower bound on every
// constrained k-center optimum and hence on the largest optimal radius.
// hi: radius of the best single cluster, which is feasible and so bounds the
// optimal sum of radii. If the farthest-first value is 0, lo falls back to
// half the smallest positive distance, below which no nonzero radius exists.
inline RadiusInterval radius_interval(const Instance& inst) {
  if (!all_points_feasible(inst)) {
    throw NoAnchorError("the single all-points cluster violates the constraint");
  }
  const std::size_t n = inst.n();
  double hi = std::numeric_limits<double>::infinity();
  for (PointId c = 0; c < n; ++c) {
    double r = 0.0;
    for (PointId p = 0; p < n; ++p) r = std::max(r, inst.d(p, c));
    hi = std::min(hi, r);
  }
  RadiusInterval out;
  out.hi = hi;
  const double fg = gonzalez(inst.dist, inst.k).value;
  if (fg > 0.0) {
    out.lo = fg / 2.0;
    return out;
  }
  double min_positive = std::numeric_limits<double>::infinity();
  for (PointId a = 0; a < n; ++a) {
    for (PointId b = a + 1; b < n; ++b) {
      if (inst.d(a, b) > 0.0) min_positive = std::min(min_positive, inst.d(a, b));
    }
  }
  if (hi == 0.0) {
    out.lo = 0.0;  // every point coincides
  } else {
    out.lo = std::min(min_positive / 2.0, hi);
    out.may_be_zero = true;
  }
  return out;
}

// Number of geometric steps of ratio (1+eps) needed to climb from 1 to
// `ratio`, rounded up with a guard against the log underestimating.
inline std::size_t geometric_steps(double ratio, double eps) {
  if (ratio <= 1.0) return 0;
  auto j = static_cast<std::size_t>(std::ceil(std::log(ratio) / std::log1p(eps)));
  while (std::pow(1.0 + eps, static_cast<double>(j)) < ratio) ++j;
  return j;
}

// Candidates for the largest radius: lo*(1+eps)^j for j = 0..J with
// J = ceil(log_{1+eps}(hi/lo)), plus hi itself (and 0 when the optimum may
// vanish). Ascending, duplicates removed.
inline std::vector<double> candidate_largest(const RadiusInterval& interval, double eps) {
  if (!(eps > 0.0)) throw ContractViolation("eps must be positive");
  std::vector<double> out;
  if (interval.may_be_zero || interval.hi == 0.0) out.push_back(0.0);
  if (interval.hi > 0.0) {
    const double lo = interval.lo > 0.0 ? interval.lo : interval.hi;
    const std::size_t steps = geometric_steps(interval.hi / lo, eps);
    for (std::size_t j = 0; j <= steps; ++j) {
      out.push_back(lo * std::pow(1.0 + eps, static_cast<double>(j)));
    }
    out.push_back(interval.hi);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Values allowed for r̃_2..r̃_k once r̃_1 = `largest` is fixed:
// {0} ∪ {(eps/k)·largest·(1+eps)^j : j = 0..ceil(log_{1+eps}(k/eps))}, with
// entries above `largest` clamped to it. Ascending, duplicates removed.
inline std::vector<double> smaller_radius_grid(double largest, std::size_t k, double eps) {
  std::vector<double> out{0.0};
  if (largest > 0.0) {
    const double floor = eps / static_cast<double>(k) * largest;
    const std::size_t steps = geometric_steps(static_cast<double>(k) / eps, eps);
    for (std::size_t j = 0; j <= steps; ++j) {
      out.push_back(std::min(largest, floor * std::pow(1.0 + eps, static_cast<double>(j))));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Calls `visit` on every candidate profile: for each r̃_1 from
// candidate_largest (ascending), every non-increasing tail drawn from
// smaller_radius_grid, tails in lexicographic order of descending values.
inline void for_each_profile(const Instance& inst, double eps,
                             const std::function<void(const RadiusProfile&)>& visit) {
  const std::size_t k = inst.k;
  RadiusProfile profile;
  profile.radii.assign(k, 0.0);
  for (double largest : candidate_largest(radius_interval(inst), eps)) {
    auto grid = smaller_radius_grid(largest, k, eps);
    std::reverse(grid.begin(), grid.end());
    profile.radii[0] = largest;
    // slot i takes grid[idx[i]], idx non-decreasing keeps radii non-increasing
    std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t slot, std::size_t from) {
      if (slot == k) {
        visit(profile);
        return;
      }
      for (std::size_t g = from; g < grid.size(); ++g) {
        profile.radii[slot] = grid[g];
        fill(slot + 1, g);
      }
    };
    fill(1, 0);
  }
}

inline std::vector<RadiusProfile> enumerate_profiles(const Instance& inst, double eps) {
  std::vector<RadiusProfile> out;
  for_each_profile(inst, eps, [&](const RadiusProfile& p) { out.push_back(p); });
  return out;
}

}  // namespace fairmsr
