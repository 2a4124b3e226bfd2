#include <gtest/gtest.h>

#include <algorithm>

#include "helpers.hpp"

using namespace fairmsr;

namespace {

// Some profile dominates the sorted optimal radii within (1+eps) per entry,
// measured against max(r_j, (eps/k) r_1).
bool covered_by_profiles(const Instance& inst, const std::vector<double>& opt_radii, double eps) {
  const double k = static_cast<double>(inst.k);
  bool found = false;
  for_each_profile(inst, eps, [&](const RadiusProfile& p) {
    if (found) return;
    for (std::size_t j = 0; j < inst.k; ++j) {
      const double target = std::max(opt_radii[j], eps / k * opt_radii[0]);
      if (p.radii[j] < opt_radii[j] || p.radii[j] > (1 + eps) * target) return;
    }
    found = true;
  });
  return found;
}

}  // namespace

TEST(GeometricSteps, Boundaries) {
  EXPECT_EQ(geometric_steps(1.0, 0.5), 0u);
  EXPECT_EQ(geometric_steps(0.5, 0.5), 0u);
  EXPECT_EQ(geometric_steps(1.5, 0.5), 1u);
  EXPECT_EQ(geometric_steps(2.25, 0.5), 2u);
  EXPECT_EQ(geometric_steps(2.26, 0.5), 3u);
  for (double ratio : {1.01, 3.0, 17.0, 1e6}) {
    const auto j = geometric_steps(ratio, 0.1);
    EXPECT_GE(std::pow(1.1, j), ratio);
    EXPECT_LT(std::pow(1.1, j - 1), ratio);
  }
}

TEST(CandidateLargest, SpansTheInterval) {
  const auto c = candidate_largest({1.0, 5.0, false}, 0.5);
  EXPECT_EQ(c.front(), 1.0);
  EXPECT_EQ(c.back(), 5.0625);  // 1.5^4 >= 5
  EXPECT_TRUE(std::is_sorted(c.begin(), c.end()));
  EXPECT_NE(std::find(c.begin(), c.end(), 5.0), c.end());
  for (std::size_t i = 1; i + 1 < c.size(); ++i) EXPECT_LE(c[i + 1], c[i] * 1.5 + 1e-12);
}

TEST(CandidateLargest, ZeroCases) {
  EXPECT_EQ(candidate_largest({0.0, 0.0, false}, 0.5), std::vector<double>{0.0});
  const auto c = candidate_largest({0.5, 1.0, true}, 0.5);
  EXPECT_EQ(c.front(), 0.0);
  EXPECT_EQ(c[1], 0.5);
  EXPECT_THROW(candidate_largest({1, 2, false}, 0.0), ContractViolation);
}

TEST(SmallerRadiusGrid, FloorAndClamp) {
  const auto g = smaller_radius_grid(6.0, 3, 0.5);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g[1], 1.0);  // eps/k * 6
  EXPECT_EQ(g.back(), 6.0);
  EXPECT_TRUE(std::is_sorted(g.begin(), g.end()));
  EXPECT_EQ(smaller_radius_grid(0.0, 3, 0.5), std::vector<double>{0.0});
}

TEST(RadiusInterval, BracketsTheLargestOptimalRadius) {
  for (auto suite : kAllSuites) {
    for (std::size_t i = 0; i < 30; ++i) {
      const auto inst = suite_instance(suite, 1, i);
      const auto exact = exact_msr(inst);
      ASSERT_TRUE(exact);
      const auto iv = radius_interval(inst);
      const double r1 = exact->radius_profile[0];
      EXPECT_LE(r1, iv.hi);
      EXPECT_TRUE(iv.lo <= r1 || (iv.may_be_zero && r1 == 0.0));
    }
  }
}

TEST(RadiusInterval, InfeasibleWholeSet) {
  auto inst = test::line4();
  inst.constraint = {.kind = ConstraintKind::lower_bound, .ell = 5};
  EXPECT_THROW(radius_interval(inst), NoAnchorError);
}

TEST(RadiusInterval, CoincidentPoints) {
  auto inst = test::make_points_instance({{0}, {0}, {3}, {3}}, {0, 1, 0, 1}, 2, test::exact_fairness());
  const auto iv = radius_interval(inst);
  EXPECT_TRUE(iv.may_be_zero);
  EXPECT_EQ(iv.lo, 1.5);
  const auto c = candidate_largest(iv, 0.5);
  EXPECT_EQ(c.front(), 0.0);
}

TEST(Profiles, NonIncreasingAndDistinct) {
  const auto inst = suite_instance(SuiteKind::exact_balance, 3, 4);
  const auto profiles = enumerate_profiles(inst, 0.5);
  ASSERT_FALSE(profiles.empty());
  for (const auto& p : profiles) {
    ASSERT_EQ(p.radii.size(), inst.k);
    EXPECT_TRUE(std::is_sorted(p.radii.rbegin(), p.radii.rend()));
  }
  auto sorted = profiles;
  std::sort(sorted.begin(), sorted.end(), [](auto& a, auto& b) { return a.radii < b.radii; });
  EXPECT_EQ(std::adjacent_find(sorted.begin(), sorted.end()), sorted.end());
}

TEST(Profiles, CountIsLargestTimesMultisets) {
  const auto inst = suite_instance(SuiteKind::exact_fairness, 8, 2);
  const double eps = 0.5;
  std::size_t expected = 0;
  for (double r : candidate_largest(radius_interval(inst), eps)) {
    const std::size_t g = smaller_radius_grid(r, inst.k, eps).size();
    // multisets of size k-1 from g values
    std::size_t m = 1;
    for (std::size_t i = 0; i + 1 < inst.k; ++i) m = m * (g + i) / (i + 1);
    expected += m;
  }
  EXPECT_EQ(enumerate_profiles(inst, eps).size(), expected);
}

TEST(Profiles, CoverOptimalRadii) {
  for (auto suite : kAllSuites) {
    for (std::size_t i = 0; i < 40; ++i) {
      const auto inst = suite_instance(suite, 77, i);
      const auto exact = exact_msr(inst);
      ASSERT_TRUE(exact);
      for (double eps : {0.5, 0.25}) {
        EXPECT_TRUE(covered_by_profiles(inst, exact->radius_profile, eps))
            << to_string(suite) << " " << i << " eps " << eps;
      }
    }
  }
}
