#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string_view>
#include <vector>

#include "fairmsr/constraints.hpp"
#include "fairmsr/cover.hpp"
#include "fairmsr/flow.hpp"
#include "fairmsr/instance.hpp"

namespace fairmsr {

enum class AssignMode { automatic, components, one_one, lower_bound };

inline std::string_view to_string(AssignMode mode) {
  switch (mode) {
    case AssignMode::automatic: return "auto";
    case AssignMode::components: return "components";
    case AssignMode::one_one: return "one_one";
    case AssignMode::lower_bound: return "lower_bound";
  }
  return "auto";
}

inline std::optional<AssignMode> parse_assign_mode(std::string_view s) {
  for (auto m : {AssignMode::automatic, AssignMode::components, AssignMode::one_one,
                 AssignMode::lower_bound}) {
    if (to_string(m) == s) return m;
  }
  return std::nullopt;
}

// How components_assignment picks the center of a component.
enum class ComponentCenter {
  largest_ball,  // center of the component's largest ball
  one_center,    // member minimizing the radius of the component
};

// Two colors with equal counts under exact fairness.
inline bool is_one_one(const Instance& inst) {
  if (inst.constraint.kind != ConstraintKind::exact_fairness || inst.num_colors() != 2) return false;
  const auto h = global_histogram(inst);
  return h.count(0) == h.count(1);
}

inline AssignMode resolve_mode(const Instance& inst, AssignMode requested) {
  if (requested != AssignMode::automatic) return requested;
  if (inst.constraint.kind == ConstraintKind::lower_bound) return AssignMode::lower_bound;
  if (is_one_one(inst)) return AssignMode::one_one;
  return AssignMode::components;
}

// Edges join each opened center to every other point of its ball.
struct AccessGraph {
  std::vector<std::vector<PointId>> adjacency;
  std::vector<bool> covered;  // point lies in at least one opened ball

  std::size_t size() const { return adjacency.size(); }

  bool all_covered() const {
    return std::all_of(covered.begin(), covered.end(), [](bool b) { return b; });
  }

  // Component id per point, ids numbered by smallest member.
  std::vector<std::size_t> components() const {
    const std::size_t n = size();
    constexpr auto kUnset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> comp(n, kUnset);
    std::size_t next_id = 0;
    std::vector<PointId> stack;
    for (PointId start = 0; start < n; ++start) {
      if (comp[start] != kUnset) continue;
      comp[start] = next_id;
      stack.push_back(start);
      while (!stack.empty()) {
        const PointId u = stack.back();
        stack.pop_back();
        for (PointId v : adjacency[u]) {
          if (comp[v] == kUnset) {
            comp[v] = next_id;
            stack.push_back(v);
          }
        }
      }
      ++next_id;
    }
    return comp;
  }
};

inline AccessGraph build_access_graph(const DistanceMatrix& dist, const CandidateCover& cover) {
  const std::size_t n = dist.size();
  AccessGraph g;
  g.adjacency.resize(n);
  g.covered.assign(n, false);
  for (const Ball& ball : opened_balls(cover)) {
    for (PointId p = 0; p < n; ++p) {
      if (!ball.contains(dist, p)) continue;
      g.covered[p] = true;
      if (p == ball.center) continue;
      g.adjacency[ball.center].push_back(p);
      g.adjacency[p].push_back(ball.center);
    }
  }
  for (auto& nbrs : g.adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  }
  return g;
}

// One cluster per connected component of the access graph. Rejects covers
// that leave a point outside every opened ball.
inline std::optional<Clustering> components_assignment(
    const DistanceMatrix& dist, const CandidateCover& cover,
    ComponentCenter rule = ComponentCenter::largest_ball) {
  const auto graph = build_access_graph(dist, cover);
  if (!graph.all_covered()) return std::nullopt;
  const auto comp = graph.components();
  const std::size_t n = dist.size();
  const std::size_t num_comp = n == 0 ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;

  std::vector<PointId> center_of(num_comp, 0);
  if (rule == ComponentCenter::largest_ball) {
    std::vector<double> best(num_comp, -1.0);
    for (const Ball& ball : opened_balls(cover)) {
      const std::size_t z = comp[ball.center];
      if (ball.radius > best[z] || (ball.radius == best[z] && ball.center < center_of[z])) {
        best[z] = ball.radius;
        center_of[z] = ball.center;
      }
    }
  } else {
    std::vector<double> best(num_comp, -1.0);
    for (PointId c = 0; c < n; ++c) {
      double r = 0.0;
      for (PointId p = 0; p < n; ++p) {
        if (comp[p] == comp[c]) r = std::max(r, dist(p, c));
      }
      const std::size_t z = comp[c];
      if (best[z] < 0.0 || r < best[z]) {
        best[z] = r;
        center_of[z] = c;
      }
    }
  }

  std::vector<PointId> assignment(n);
  for (PointId p = 0; p < n; ++p) assignment[p] = center_of[comp[p]];
  return make_clustering(dist, center_of, std::move(assignment));
}

// 1:1 fairness: perfect matching between the two colors where a pair may be
// matched iff some opened ball contains both points; each pair goes to the
// first such ball. Rejects when no perfect matching exists.
inline std::optional<Clustering> one_one_assignment(const Instance& inst,
                                                    const CandidateCover& cover) {
  if (!is_one_one(inst)) {
    throw ContractViolation("one_one assignment needs exact fairness with two equal color classes");
  }
  const std::size_t n = inst.n();
  const auto balls = opened_balls(cover);
  std::vector<PointId> first, second;
  for (PointId p = 0; p < n; ++p) (inst.colors[p] == 0 ? first : second).push_back(p);

  // nodes: source, first color, second color, sink
  const std::size_t source = 0;
  const std::size_t sink = 1 + n;
  FlowNetwork net(n + 2, source, sink);
  struct PairEdge {
    std::size_t edge;
    PointId a, b;
    PointId witness;
  };
  std::vector<PairEdge> pairs;
  for (PointId a : first) net.add_edge(source, 1 + a, 1);
  for (PointId b : second) net.add_edge(1 + b, sink, 1);
  for (PointId a : first) {
    for (PointId b : second) {
      for (const Ball& ball : balls) {
        if (ball.contains(inst.dist, a) && ball.contains(inst.dist, b)) {
          pairs.push_back({net.add_edge(1 + a, 1 + b, 1), a, b, ball.center});
          break;
        }
      }
    }
  }
  const auto flow = max_flow(net);
  if (static_cast<std::size_t>(flow.value) != first.size()) return std::nullopt;

  std::vector<PointId> assignment(n);
  std::vector<bool> used(n, false);
  for (const auto& pe : pairs) {
    if (flow.edge_flow[pe.edge] == 0) continue;
    assignment[pe.a] = pe.witness;
    assignment[pe.b] = pe.witness;
    used[pe.witness] = true;
  }
  std::vector<PointId> centers;
  for (const Ball& ball : balls) {
    if (used[ball.center]) centers.push_back(ball.center);
  }
  return make_clustering(inst.dist, centers, std::move(assignment));
}

// Uniform lower bound `ell`: route `ell` points into every opened ball by
// max-flow, then send the leftover points to the first ball containing them.
// Rejects on uncovered points or when the flow cannot saturate every ball.
inline std::optional<Clustering> lower_bound_assignment(const Instance& inst,
                                                        const CandidateCover& cover,
                                                        std::size_t ell) {
  const std::size_t n = inst.n();
  const auto balls = opened_balls(cover);
  const std::size_t kb = balls.size();
  if (ell * kb > n) return std::nullopt;

  std::vector<std::ptrdiff_t> home(n, -1);  // first ball containing p
  for (std::size_t b = 0; b < kb; ++b) {
    for (PointId p = 0; p < n; ++p) {
      if (home[p] < 0 && balls[b].contains(inst.dist, p)) home[p] = static_cast<std::ptrdiff_t>(b);
    }
  }
  if (std::any_of(home.begin(), home.end(), [](std::ptrdiff_t h) { return h < 0; })) {
    return std::nullopt;
  }

  // nodes: source, balls, points, sink
  const std::size_t source = 0;
  const std::size_t sink = 1 + kb + n;
  FlowNetwork net(kb + n + 2, source, sink);
  struct Route {
    std::size_t edge;
    std::size_t ball;
    PointId point;
  };
  std::vector<Route> routes;
  for (std::size_t b = 0; b < kb; ++b) {
    net.add_edge(source, 1 + b, static_cast<std::int64_t>(ell));
    for (PointId p = 0; p < n; ++p) {
      if (balls[b].contains(inst.dist, p)) routes.push_back({net.add_edge(1 + b, 1 + kb + p, 1), b, p});
    }
  }
  for (PointId p = 0; p < n; ++p) net.add_edge(1 + kb + p, sink, 1);

  const auto flow = max_flow(net);
  if (static_cast<std::size_t>(flow.value) != kb * ell) return std::nullopt;

  std::vector<PointId> assignment(n);
  for (PointId p = 0; p < n; ++p) assignment[p] = balls[static_cast<std::size_t>(home[p])].center;
  for (const auto& r : routes) {
    if (flow.edge_flow[r.edge] > 0) assignment[r.point] = balls[r.ball].center;
  }
  std::vector<PointId> centers;
  for (const Ball& ball : balls) centers.push_back(ball.center);
  return make_clustering(inst.dist, centers, std::move(assignment));
}

// Runs the strategy for `mode` (already resolved, not automatic).
inline std::optional<Clustering> assign_cover(const Instance& inst, const CandidateCover& cover,
                                              AssignMode mode,
                                              ComponentCenter rule = ComponentCenter::largest_ball) {
  switch (mode) {
    case AssignMode::automatic:
      return assign_cover(inst, cover, resolve_mode(inst, mode), rule);
    case AssignMode::components:
      return components_assignment(inst.dist, cover, rule);
    case AssignMode::one_one:
      return one_one_assignment(inst, cover);
    case AssignMode::lower_bound:
      if (inst.constraint.kind != ConstraintKind::lower_bound) {
        throw ContractViolation("lower_bound assignment needs a lower_bound constraint");
      }
      return lower_bound_assignment(inst, cover, inst.constraint.ell);
  }
  return std::nullopt;
}

}  // namespace fairmsr
