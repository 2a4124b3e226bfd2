// Solves a small fair clustering instance and compares it with the exact
// optimum.
#include <iostream>

#include "fairmsr/fairmsr.hpp"

int main(int argc, char** argv) {
  using namespace fairmsr;
  Instance inst;
  if (argc > 1) {
    inst = read_instance(argv[1]);
  } else {
    // points on a line, alternating colors, every cluster must be half/half
    inst.dist = DistanceMatrix::from_points({{0}, {1}, {2}, {10}});
    inst.points = std::vector<std::vector<double>>{{0}, {1}, {2}, {10}};
    inst.colors = {0, 1, 0, 1};
    inst.k = 2;
    inst.epsilon = 0.5;
    inst.constraint.kind = ConstraintKind::exact_fairness;
  }

  const auto result = solve(inst);
  if (!result.clustering) {
    std::cout << "infeasible\n";
    return 2;
  }
  const auto& c = *result.clustering;
  std::cout << "mode " << to_string(result.mode) << ", " << result.profiles_tried << " profiles, "
            << result.tuples_tried << " covers\n";
  for (std::size_t i = 0; i < c.centers.size(); ++i) {
    std::cout << "  center " << c.centers[i] << " radius " << c.radii[i] << " members";
    for (PointId p = 0; p < inst.n(); ++p) {
      if (c.assignment[p] == c.centers[i]) std::cout << ' ' << p;
    }
    std::cout << "\n";
  }
  std::cout << "cost " << c.cost;
  if (inst.n() <= 10) {
    if (const auto exact = exact_msr(inst)) std::cout << ", optimum " << exact->opt_cost;
  }
  std::cout << "\n";
}
