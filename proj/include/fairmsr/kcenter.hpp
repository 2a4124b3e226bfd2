#pragma once

#include <algorithm>
#include <limits>
#include <span>
#include <vector>

#include "fairmsr/instance.hpp"

namespace fairmsr {

// A k-center completion problem: complete `fixed_centers` (with their
// radii) to k centers. The referenced data must outlive the input.
struct CompletionInput {
  const DistanceMatrix& dist;
  std::size_t k;
  std::span<const PointId> fixed_centers;
  std::span<const double> fixed_radii;
};

struct CompletionOutput {
  std::vector<PointId> centers;      // first ℓ entries are the fixed centers
  std::vector<std::size_t> alpha;    // point -> position in `centers`
  double value = 0.0;                // max_p d'(p, centers[alpha[p]])
};

// Distance with the radii of fixed centers discounted:
//   d'(x, y) = max(d(x, y) - R(x) - R(y), 0),  d'(x, x) = 0,
// where R(p) is the radius of the fixed center located at p (0 for other
// points). This covers all three cases of the completion objective and is
// symmetric. If a point carries several fixed slots the largest radius wins.
class AdjustedDistance {
 public:
  AdjustedDistance(const DistanceMatrix& dist, std::span<const PointId> fixed_centers,
                   std::span<const double> fixed_radii)
      : dist_(&dist), discount_(dist.size(), 0.0) {
    if (fixed_centers.size() != fixed_radii.size()) {
      throw ContractViolation("fixed centers and radii differ in length");
    }
    for (std::size_t i = 0; i < fixed_centers.size(); ++i) {
      if (fixed_centers[i] >= dist.size()) throw ContractViolation("fixed center out of range");
      if (!(fixed_radii[i] >= 0.0)) throw ContractViolation("fixed radius must be nonnegative");
      discount_[fixed_centers[i]] = std::max(discount_[fixed_centers[i]], fixed_radii[i]);
    }
  }

  explicit AdjustedDistance(const CompletionInput& in)
      : AdjustedDistance(in.dist, in.fixed_centers, in.fixed_radii) {}

  double operator()(PointId x, PointId y) const {
    if (x == y) return 0.0;
    // one subtraction of the summed discounts keeps d' bitwise symmetric
    return std::max((*dist_)(x, y) - (discount_[x] + discount_[y]), 0.0);
  }

 private:
  const DistanceMatrix* dist_;
  std::vector<double> discount_;
};

inline double adjusted_distance(const CompletionInput& in, PointId x, PointId y) {
  return AdjustedDistance(in)(x, y);
}

// Farthest-first traversal started from the fixed centers under d'. Each new
// center maximizes the d'-distance to its nearest chosen center; ties go to
// the smallest point index. With no fixed centers the traversal starts at
// point 0 (classic Gonzalez).
inline CompletionOutput fft_completion(const CompletionInput& in) {
  const std::size_t n = in.dist.size();
  const std::size_t ell = in.fixed_centers.size();
  if (in.k > n) throw ContractViolation("k-center completion needs k <= n");
  if (ell > in.k) throw ContractViolation("more fixed centers than k");

  const AdjustedDistance dprime(in);
  CompletionOutput out;
  out.centers.assign(in.fixed_centers.begin(), in.fixed_centers.end());
  out.centers.reserve(in.k);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> nearest(n, kInf);
  const auto absorb = [&](PointId c) {
    for (PointId p = 0; p < n; ++p) nearest[p] = std::min(nearest[p], dprime(p, c));
  };
  for (PointId c : out.centers) absorb(c);

  if (out.centers.empty() && in.k > 0) {
    out.centers.push_back(0);
    absorb(0);
  }
  while (out.centers.size() < in.k) {
    PointId far = 0;
    for (PointId p = 1; p < n; ++p) {
      if (nearest[p] > nearest[far]) far = p;
    }
    out.centers.push_back(far);
    absorb(far);
  }

  out.alpha.assign(n, 0);
  out.value = 0.0;
  for (PointId p = 0; p < n; ++p) {
    double best = kInf;
    for (std::size_t s = 0; s < out.centers.size(); ++s) {
      const double v = dprime(p, out.centers[s]);
      if (v < best) {
        best = v;
        out.alpha[p] = s;
      }
    }
    out.value = std::max(out.value, best);
  }
  return out;
}

// Unconstrained farthest-first traversal from point 0.
inline CompletionOutput gonzalez(const DistanceMatrix& dist, std::size_t k) {
  return fft_completion(CompletionInput{dist, k, {}, {}});
}

}  // namespace fairmsr
