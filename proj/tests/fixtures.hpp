#pragma once

#include <cmath>
#include <vector>

#include "fairmsr/fairmsr.hpp"

namespace fairmsr::test {

// Completion instance where d' breaks the triangle inequality: p = 0,
// fixed centers 1 (radius 1) and 2 (radius 0.5), free point 3.
inline DistanceMatrix completion_fixture() {
  const double s2 = std::sqrt(2.0);
  return DistanceMatrix::from_rows({
      {0.0, 1.5, 1.0, s2},
      {1.5, 0.0, 2.0, 2.2},
      {1.0, 2.0, 0.0, 0.5},
      {s2, 2.2, 0.5, 0.0},
  });
}

// Nine points of a worked guessing run; index 0 is where farthest-first
// traversal starts. Points 1, 6 and 8 are blue (color 1).
inline std::vector<std::vector<double>> trace_points() {
  return {{-1.0, -0.6}, {3.9, 0.3}, {2.4, -2.8}, {3.0, 0.0}, {2.8, 0.6},
          {-0.7, 0.0},  {-1.2, 0.3}, {2.5, -2.5}, {2.75, -2.25}};
}

inline std::vector<std::size_t> trace_colors() { return {0, 1, 0, 0, 0, 0, 1, 0, 1}; }

// Access graph example: three overlapping balls plus a separate one, blue
// to orange 2:1. Centers are points 0, 7, 9, 12.
inline std::vector<std::vector<double>> access_points() {
  const std::vector<double> c1{0, -0.3}, c2{2, 0}, c3{3.8, -0.7}, c4{7, -1.4};
  const auto at = [](const std::vector<double>& c, double dx, double dy) {
    return std::vector<double>{c[0] + dx, c[1] + dy};
  };
  return {c1,
          at(c1, 0.1, 0.6), at(c1, 1.2, 0.4), at(c1, -0.5, 0.3), at(c1, -0.3, -0.5),
          at(c1, -1, 0), at(c1, -0.4, 1),
          c2, at(c2, 0.8, -0.2),
          c3, at(c3, 0.8, -0.2), at(c3, 0.4, -0.9),
          c4, at(c4, 0.3, 0.2), at(c4, 0, -0.4)};
}

inline std::vector<std::size_t> access_colors() {
  std::vector<std::size_t> colors(15, 1);
  for (std::size_t orange : {0, 2, 6, 10, 12}) colors[orange] = 0;
  return colors;
}

inline CandidateCover access_cover() {
  return {{0, 7, 9, 12}, {1.5, 1.0, 1.2, 0.8}, {true, true, true, true}};
}

// Two-color 1:1 example for the pairing network. Orange (0): c1, o2, o4, c3,
// o5; blue (1): b1, b3, c2, b4, b5. Centers are points 0, 7, 3.
inline std::vector<std::vector<double>> pairing_points() {
  return {{0, -0.3},  {-0.4, 0.7}, {1.2, 0.1},  {3.8, -0.7}, {4.6, -0.5},
          {-1, -0.3}, {-0.3, -1.3}, {2, 0},     {2.8, -0.2}, {4.2, -1.6}};
}

inline std::vector<std::size_t> pairing_colors() { return {0, 0, 0, 0, 0, 1, 1, 1, 1, 1}; }

inline CandidateCover pairing_cover() { return {{0, 7, 3}, {1.5, 1.0, 1.2}, {true, true, true}}; }

}  // namespace fairmsr::test
