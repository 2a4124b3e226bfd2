#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <thread>
#include <vector>

#include "fairmsr/assign.hpp"
#include "fairmsr/constraints.hpp"
#include "fairmsr/cover.hpp"
#include "fairmsr/instance.hpp"
#include "fairmsr/kcenter.hpp"
#include "fairmsr/profiles.hpp"

namespace fairmsr {

// One guess per iteration, 0-based: in iteration i the entry a[i] names a
// position of the completion solution. a[i] < i enlarges the existing slot
// a[i]; a[i] >= i opens a ball at the a[i]-th completion center.
using GuessTuple = std::vector<std::size_t>;

inline constexpr PointId kPlaceholderCenter = 0;

namespace detail {

// Applies iteration `i` of the guessing scheme to a partial cover.
inline void apply_guess(CandidateCover& cover, const CompletionOutput* completion, std::size_t i,
                        std::size_t guess, double profile_radius) {
  if (guess < i) {
    cover.radii[guess] += 3.0 * profile_radius;
    cover.opened[guess] = true;
    cover.centers.push_back(kPlaceholderCenter);
    cover.radii.push_back(0.0);
    cover.opened.push_back(false);
  } else {
    cover.centers.push_back(completion->centers[guess]);
    cover.radii.push_back(3.0 * profile_radius);
    cover.opened.push_back(true);
  }
}

inline CompletionOutput complete(const DistanceMatrix& dist, std::size_t k,
                                 const CandidateCover& partial) {
  return fft_completion(CompletionInput{dist, k, partial.centers, partial.radii});
}

}  // namespace detail

// Builds k candidate balls for a radius profile and a guess tuple. Each
// iteration solves the k-center completion problem seeded with the slots
// built so far and then either enlarges an existing slot by 3·r̃_i (leaving a
// zero-radius placeholder at point 0) or opens a ball of radius 3·r̃_i.
inline CandidateCover centers_and_radii(const DistanceMatrix& dist, const RadiusProfile& profile,
                                        const GuessTuple& a) {
  const std::size_t k = profile.radii.size();
  if (a.size() != k) throw ContractViolation("guess tuple length differs from k");
  CandidateCover cover;
  for (std::size_t i = 0; i < k; ++i) {
    if (a[i] >= k) throw ContractViolation("guess out of range");
    std::optional<CompletionOutput> completion;
    if (a[i] >= i) completion = detail::complete(dist, k, cover);
    detail::apply_guess(cover, completion ? &*completion : nullptr, i, a[i], profile.radii[i]);
  }
  return cover;
}

// Both containment statements between an optimal clustering and a cover:
// every optimal cluster lies inside some opened ball, and every opened ball
// of positive radius contains a whole optimal cluster.
inline bool covers_all_optimal(const DistanceMatrix& dist, const CandidateCover& cover,
                               const std::vector<std::vector<PointId>>& optimal_clusters) {
  const auto balls = opened_balls(cover);
  const auto inside = [&](const Ball& ball, const std::vector<PointId>& cluster) {
    return std::all_of(cluster.begin(), cluster.end(),
                       [&](PointId p) { return ball.contains(dist, p); });
  };
  for (const auto& cluster : optimal_clusters) {
    if (cluster.empty()) continue;
    if (std::none_of(balls.begin(), balls.end(),
                     [&](const Ball& b) { return inside(b, cluster); })) {
      return false;
    }
  }
  for (const Ball& ball : balls) {
    if (ball.radius <= 0.0) continue;
    if (std::none_of(optimal_clusters.begin(), optimal_clusters.end(), [&](const auto& c) {
          return !c.empty() && inside(ball, c);
        })) {
      return false;
    }
  }
  return true;
}

// Visits every (tuple, cover) pair for one profile in lexicographic tuple
// order. Completions are shared between tuples with a common prefix, so the
// covers equal centers_and_radii(dist, profile, tuple).
inline void for_each_cover(const DistanceMatrix& dist, const RadiusProfile& profile,
                           const std::function<void(const GuessTuple&, const CandidateCover&)>& visit) {
  const std::size_t k = profile.radii.size();
  GuessTuple tuple(k, 0);
  const auto descend = [&](auto&& self, std::size_t i, const CandidateCover& partial) -> void {
    if (i == k) {
      visit(tuple, partial);
      return;
    }
    const auto completion = detail::complete(dist, k, partial);
    for (std::size_t g = 0; g < k; ++g) {
      tuple[i] = g;
      CandidateCover next = partial;
      detail::apply_guess(next, &completion, i, g, profile.radii[i]);
      self(self, i + 1, next);
    }
  };
  descend(descend, 0, CandidateCover{});
}

// The tuple that guesses correctly against a known solution: in iteration i,
// a[i] is the smallest position whose center equals α(c_i) for the center
// c_i of the i-th largest cluster. Missing clusters (fewer than k) enlarge
// slot 0. `centers` must be ordered by decreasing cluster radius.
inline GuessTuple correct_guess(const DistanceMatrix& dist, const RadiusProfile& profile,
                                const std::vector<PointId>& centers) {
  const std::size_t k = profile.radii.size();
  GuessTuple a(k, 0);
  CandidateCover cover;
  for (std::size_t i = 0; i < k; ++i) {
    const auto completion = detail::complete(dist, k, cover);
    if (i < centers.size()) {
      const PointId target = completion.centers[completion.alpha[centers[i]]];
      const auto it = std::find(completion.centers.begin(), completion.centers.end(), target);
      a[i] = static_cast<std::size_t>(it - completion.centers.begin());
    } else {
      a[i] = 0;
    }
    detail::apply_guess(cover, &completion, i, a[i], profile.radii[i]);
  }
  return a;
}

struct SolveOptions {
  std::optional<double> epsilon;  // defaults to the instance's epsilon
  AssignMode mode = AssignMode::automatic;
  ComponentCenter component_center = ComponentCenter::largest_ball;
  std::size_t threads = 1;
};

struct SolveResult {
  std::optional<Clustering> clustering;
  AssignMode mode = AssignMode::components;
  std::size_t profiles_tried = 0;
  std::size_t tuples_tried = 0;
};

// Tries every radius profile against every guess tuple and keeps the
// cheapest feasible clustering. Ties go to the earliest (profile, tuple) in
// enumeration order, also when profiles are spread over several threads.
inline SolveResult solve(const Instance& inst, const SolveOptions& options = {}) {
  const double eps = options.epsilon.value_or(inst.epsilon);
  if (!(eps > 0.0)) throw ContractViolation("epsilon must be positive");
  SolveResult result;
  result.mode = resolve_mode(inst, options.mode);

  std::vector<RadiusProfile> profiles;
  try {
    profiles = enumerate_profiles(inst, eps);
  } catch (const NoAnchorError&) {
    return result;
  }
  const std::size_t k = inst.k;
  std::size_t tuples_per_profile = 1;
  for (std::size_t i = 0; i < k; ++i) tuples_per_profile *= k;

  struct Best {
    std::optional<Clustering> clustering;
    std::size_t index = std::numeric_limits<std::size_t>::max();
    std::size_t visited = 0;
    bool better_than(const Best& other) const {
      if (!clustering) return false;
      if (!other.clustering) return true;
      if (clustering->cost != other.clustering->cost) return clustering->cost < other.clustering->cost;
      return index < other.index;
    }
  };

  const auto run_profile = [&](std::size_t pi, Best& best) {
    std::size_t ti = 0;
    for_each_cover(inst.dist, profiles[pi], [&](const GuessTuple&, const CandidateCover& cover) {
      const std::size_t index = pi * tuples_per_profile + ti++;
      ++best.visited;
      auto clustering = assign_cover(inst, cover, result.mode, options.component_center);
      if (!clustering || !clustering_feasible(inst, *clustering)) return;
      if (!best.clustering || clustering->cost < best.clustering->cost) {
        best.clustering = std::move(clustering);
        best.index = index;
      }
    });
  };

  const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(profiles.size(), 1));
  std::vector<Best> partial(workers);
  if (workers == 1) {
    for (std::size_t pi = 0; pi < profiles.size(); ++pi) run_profile(pi, partial[0]);
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t pi = w; pi < profiles.size(); pi += workers) run_profile(pi, partial[w]);
      });
    }
  }

  Best best;
  for (auto& b : partial) {
    result.tuples_tried += b.visited;
    if (b.better_than(best)) best = std::move(b);
  }
  result.clustering = std::move(best.clustering);
  result.profiles_tried = profiles.size();
  return result;
}

}  // namespace fairmsr
