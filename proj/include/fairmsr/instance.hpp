#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fairmsr {

using PointId = std::size_t;

// Malformed input: bad shapes, schema violations, broken invariants.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The distance matrix is not a metric.
class MetricError : public FormatError {
 public:
  using FormatError::FormatError;
};

// A clustering that does not describe a total assignment onto its centers.
class InvalidSolution : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Absolute slack used when checking the triangle inequality, so that
// matrices computed from coordinates are not rejected over rounding.
inline constexpr double kMetricSlack = 1e-9;

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  friend bool operator==(const Rational&, const Rational&) = default;
};

enum class ConstraintKind {
  none,
  exact_fairness,
  ratio_balance,
  exact_balance,
  lu_fairness,
  lower_bound,
};

inline std::string_view to_string(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::none: return "none";
    case ConstraintKind::exact_fairness: return "exact_fairness";
    case ConstraintKind::ratio_balance: return "ratio_balance";
    case ConstraintKind::exact_balance: return "exact_balance";
    case ConstraintKind::lu_fairness: return "lu_fairness";
    case ConstraintKind::lower_bound: return "lower_bound";
  }
  return "none";
}

inline std::optional<ConstraintKind> parse_constraint_kind(std::string_view s) {
  for (auto kind : {ConstraintKind::none, ConstraintKind::exact_fairness,
                    ConstraintKind::ratio_balance, ConstraintKind::exact_balance,
                    ConstraintKind::lu_fairness, ConstraintKind::lower_bound}) {
    if (to_string(kind) == s) return kind;
  }
  return std::nullopt;
}

// Only the fields belonging to `kind` are meaningful; the others keep their
// defaults so that equality stays structural.
struct ConstraintSpec {
  ConstraintKind kind = ConstraintKind::none;
  Rational balance{};            // ratio_balance: b in [0,1]
  std::vector<Rational> lower;   // lu_fairness: one bound per color
  std::vector<Rational> upper;
  std::size_t ell = 0;           // lower_bound: minimum cluster size

  friend bool operator==(const ConstraintSpec&, const ConstraintSpec&) = default;
};

// Dense symmetric n x n matrix stored row-major.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  explicit DistanceMatrix(std::size_t n) : n_(n), values_(n * n, 0.0) {}

  static DistanceMatrix from_rows(const std::vector<std::vector<double>>& rows) {
    DistanceMatrix m(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) {
        throw FormatError("distance matrix is not square: row " + std::to_string(i) +
                          " has " + std::to_string(rows[i].size()) + " entries, expected " +
                          std::to_string(rows.size()));
      }
      std::copy(rows[i].begin(), rows[i].end(), m.values_.begin() + i * m.n_);
    }
    return m;
  }

  // Euclidean distances between coordinate vectors of equal dimension.
  static DistanceMatrix from_points(const std::vector<std::vector<double>>& points) {
    DistanceMatrix m(points.size());
    const std::size_t dim = points.empty() ? 0 : points.front().size();
    for (const auto& p : points) {
      if (p.size() != dim) throw FormatError("points have inconsistent dimensions");
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
      for (std::size_t j = i + 1; j < points.size(); ++j) {
        double sq = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
          const double diff = points[i][c] - points[j][c];
          sq += diff * diff;
        }
        const double d = std::sqrt(sq);
        m.set(i, j, d);
        m.set(j, i, d);
      }
    }
    return m;
  }

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return values_[i * n_ + j]; }
  void set(std::size_t i, std::size_t j, double v) { values_[i * n_ + j] = v; }

  std::vector<std::vector<double>> rows() const {
    std::vector<std::vector<double>> out(n_);
    for (std::size_t i = 0; i < n_; ++i) {
      out[i].assign(values_.begin() + i * n_, values_.begin() + (i + 1) * n_);
    }
    return out;
  }

  double max_entry() const {
    return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
  }

  friend bool operator==(const DistanceMatrix&, const DistanceMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<double> values_;
};

struct MetricViolation {
  enum class Kind { negative, nonzero_diagonal, asymmetric, triangle };
  Kind kind;
  // For triangle violations d(i,j) > d(i,h) + d(h,j); otherwise h == i.
  std::size_t i = 0;
  std::size_t h = 0;
  std::size_t j = 0;

  std::string describe() const {
    const auto idx = [](std::size_t v) { return std::to_string(v); };
    switch (kind) {
      case Kind::negative:
        return "negative distance d(" + idx(i) + "," + idx(j) + ")";
      case Kind::nonzero_diagonal:
        return "nonzero diagonal entry d(" + idx(i) + "," + idx(i) + ")";
      case Kind::asymmetric:
        return "asymmetric entries d(" + idx(i) + "," + idx(j) + ") != d(" + idx(j) + "," +
               idx(i) + ")";
      case Kind::triangle:
        return "triangle inequality violated: d(" + idx(i) + "," + idx(j) + ") > d(" + idx(i) +
               "," + idx(h) + ") + d(" + idx(h) + "," + idx(j) + ")";
    }
    return "metric violation";
  }
};

// First violation of nonnegativity, zero diagonal, symmetry or the triangle
// inequality, scanning in that order; nullopt for a metric.
inline std::optional<MetricViolation> validate_metric(const DistanceMatrix& d,
                                                      double slack = kMetricSlack) {
  using Kind = MetricViolation::Kind;
  const std::size_t n = d.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (!(d(i, j) >= 0.0)) return MetricViolation{Kind::negative, i, i, j};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) return MetricViolation{Kind::nonzero_diagonal, i, i, i};
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (d(i, j) != d(j, i)) return MetricViolation{Kind::asymmetric, i, i, j};
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t h = 0; h < n; ++h) {
      for (std::size_t j = 0; j < n; ++j) {
        if (d(i, j) > d(i, h) + d(h, j) + slack) return MetricViolation{Kind::triangle, i, h, j};
      }
    }
  }
  return std::nullopt;
}

struct Instance {
  DistanceMatrix dist;
  std::vector<std::size_t> colors;
  std::size_t k = 1;
  double epsilon = 0.5;
  ConstraintSpec constraint;
  // Coordinates the matrix was derived from, kept so files round-trip.
  std::optional<std::vector<std::vector<double>>> points;

  std::size_t n() const { return dist.size(); }
  double d(PointId a, PointId b) const { return dist(a, b); }

  // Size of the color universe {0..m-1}.
  std::size_t num_colors() const {
    return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  }

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Throws FormatError (or MetricError) if the instance breaks an invariant.
inline void validate_instance(const Instance& inst) {
  const std::size_t n = inst.n();
  if (n == 0) throw FormatError("instance has no points");
  if (inst.colors.size() != n) {
    throw FormatError("expected " + std::to_string(n) + " colors, got " +
                      std::to_string(inst.colors.size()));
  }
  if (inst.k < 1 || inst.k > n) {
    throw FormatError("k must satisfy 1 <= k <= n, got k=" + std::to_string(inst.k));
  }
  if (!(inst.epsilon > 0.0) || !std::isfinite(inst.epsilon)) {
    throw FormatError("epsilon must be a positive finite number");
  }
  const auto& c = inst.constraint;
  const std::size_t m = inst.num_colors();
  const auto check_rational = [](const Rational& r, const char* what) {
    if (r.den <= 0) throw FormatError(std::string(what) + " must have a positive denominator");
    if (r.num < 0) throw FormatError(std::string(what) + " must be nonnegative");
  };
  switch (c.kind) {
    case ConstraintKind::none:
    case ConstraintKind::exact_fairness:
    case ConstraintKind::exact_balance:
      break;
    case ConstraintKind::ratio_balance:
      if (m != 2) {
        throw FormatError("ratio_balance requires exactly 2 colors, instance has " +
                          std::to_string(m));
      }
      check_rational(c.balance, "b");
      if (c.balance.num > c.balance.den) throw FormatError("b must lie in [0,1]");
      break;
    case ConstraintKind::lu_fairness:
      if (c.lower.size() != m || c.upper.size() != m) {
        throw FormatError("lu_fairness needs one (l,u) pair per color: " + std::to_string(m) +
                          " colors, " + std::to_string(c.lower.size()) + " l, " +
                          std::to_string(c.upper.size()) + " u");
      }
      for (std::size_t i = 0; i < m; ++i) {
        check_rational(c.lower[i], "l");
        check_rational(c.upper[i], "u");
        // l_i <= u_i by cross-multiplication
        if (c.lower[i].num * c.upper[i].den > c.upper[i].num * c.lower[i].den) {
          throw FormatError("lu_fairness requires l <= u for color " + std::to_string(i));
        }
      }
      break;
    case ConstraintKind::lower_bound:
      if (c.ell < 1) throw FormatError("lower_bound requires ell >= 1");
      break;
  }
  if (auto v = validate_metric(inst.dist)) throw MetricError(v->describe());
}

// Centers are point ids; assignment maps every point to the point id of its
// center. Centers need not belong to their own cluster.
struct Clustering {
  std::vector<PointId> centers;
  std::vector<PointId> assignment;
  std::vector<double> radii;
  double cost = 0.0;

  friend bool operator==(const Clustering&, const Clustering&) = default;
};

namespace detail {

// Sum in ascending order so that equal radius multisets give equal costs.
inline double sum_radii(std::vector<double> radii) {
  std::sort(radii.begin(), radii.end());
  double total = 0.0;
  for (double r : radii) total += r;
  return total;
}

// Per-center radius in the order of `centers`; -1 marks an empty cluster.
inline std::vector<double> cluster_radii(const DistanceMatrix& dist,
                                         const std::vector<PointId>& centers,
                                         const std::vector<PointId>& assignment) {
  const std::size_t n = dist.size();
  if (assignment.size() != n) {
    throw InvalidSolution("assignment covers " + std::to_string(assignment.size()) +
                          " points, instance has " + std::to_string(n));
  }
  std::vector<std::ptrdiff_t> slot(n, -1);
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (centers[i] >= n) throw InvalidSolution("center " + std::to_string(centers[i]) + " out of range");
    if (slot[centers[i]] != -1) {
      throw InvalidSolution("center " + std::to_string(centers[i]) + " listed twice");
    }
    slot[centers[i]] = static_cast<std::ptrdiff_t>(i);
  }
  std::vector<double> radii(centers.size(), -1.0);
  for (PointId p = 0; p < n; ++p) {
    const PointId c = assignment[p];
    if (c >= n || slot[c] == -1) {
      throw InvalidSolution("point " + std::to_string(p) + " assigned to unlisted center " +
                            std::to_string(c));
    }
    auto& r = radii[static_cast<std::size_t>(slot[c])];
    r = std::max(r, dist(p, c));
  }
  return radii;
}

}  // namespace detail

// Builds a normalized clustering: empty centers are dropped, radii and cost
// are recomputed from the distances.
inline Clustering make_clustering(const DistanceMatrix& dist, const std::vector<PointId>& centers,
                                  std::vector<PointId> assignment) {
  const auto radii = detail::cluster_radii(dist, centers, assignment);
  Clustering out;
  for (std::size_t i = 0; i < centers.size(); ++i) {
    if (radii[i] < 0.0) continue;
    out.centers.push_back(centers[i]);
    out.radii.push_back(radii[i]);
  }
  out.assignment = std::move(assignment);
  out.cost = detail::sum_radii(out.radii);
  return out;
}

// Sum of cluster radii, recomputed from scratch. Empty clusters contribute 0.
inline double msr_cost(const Instance& inst, const Clustering& clustering) {
  auto radii = detail::cluster_radii(inst.dist, clustering.centers, clustering.assignment);
  std::erase_if(radii, [](double r) { return r < 0.0; });
  return detail::sum_radii(std::move(radii));
}

// Members of each cluster, aligned with clustering.centers.
inline std::vector<std::vector<PointId>> cluster_members(const Clustering& clustering) {
  std::vector<std::vector<PointId>> members(clustering.centers.size());
  for (PointId p = 0; p < clustering.assignment.size(); ++p) {
    const auto it =
        std::find(clustering.centers.begin(), clustering.centers.end(), clustering.assignment[p]);
    if (it == clustering.centers.end()) {
      throw InvalidSolution("point " + std::to_string(p) + " assigned to unlisted center");
    }
    members[static_cast<std::size_t>(it - clustering.centers.begin())].push_back(p);
  }
  return members;
}

}  // namespace fairmsr
