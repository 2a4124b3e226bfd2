#pragma once

#include <vector>

#include "fairmsr/fairmsr.hpp"

namespace fairmsr::test {

inline Instance make_points_instance(std::vector<std::vector<double>> pts, std::vector<std::size_t> colors,
                                     std::size_t k, ConstraintSpec spec = {}, double eps = 0.5) {
  Instance inst;
  inst.dist = DistanceMatrix::from_points(pts);
  inst.points = std::move(pts);
  inst.colors = std::move(colors);
  inst.k = k;
  inst.epsilon = eps;
  inst.constraint = std::move(spec);
  return inst;
}

inline ConstraintSpec exact_fairness() { return {.kind = ConstraintKind::exact_fairness}; }

// Line {0, 1, 2, 10}, colors alternating, exact fairness, k = 2.
inline Instance line4() {
  return make_points_instance({{0}, {1}, {2}, {10}}, {0, 1, 0, 1}, 2, exact_fairness());
}

inline double stirling2(std::size_t n, std::size_t k) {
  if (n == 0 && k == 0) return 1;
  if (n == 0 || k == 0) return 0;
  return static_cast<double>(k) * stirling2(n - 1, k) + stirling2(n - 1, k - 1);
}

}  // namespace fairmsr::test
