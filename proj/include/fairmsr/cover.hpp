#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "fairmsr/instance.hpp"

namespace fairmsr {

// Output of one guessing run: k slots of (center, radius). A slot is opened
// when it was created as a new ball or later enlarged; the remaining slots
// are zero-radius placeholders and take no part in assignment.
struct CandidateCover {
  std::vector<PointId> centers;
  std::vector<double> radii;
  std::vector<bool> opened;

  double total_radius() const { return std::accumulate(radii.begin(), radii.end(), 0.0); }

  friend bool operator==(const CandidateCover&, const CandidateCover&) = default;
};

struct Ball {
  PointId center;
  double radius;

  bool contains(const DistanceMatrix& dist, PointId p) const { return dist(center, p) <= radius; }
};

// Opened slots as balls, one per distinct center point (largest radius kept),
// in order of first appearance.
inline std::vector<Ball> opened_balls(const CandidateCover& cover) {
  std::vector<Ball> balls;
  for (std::size_t i = 0; i < cover.centers.size(); ++i) {
    if (!cover.opened[i]) continue;
    auto it = std::find_if(balls.begin(), balls.end(),
                           [&](const Ball& b) { return b.center == cover.centers[i]; });
    if (it == balls.end()) {
      balls.push_back({cover.centers[i], cover.radii[i]});
    } else {
      it->radius = std::max(it->radius, cover.radii[i]);
    }
  }
  return balls;
}

}  // namespace fairmsr
