#pragma once

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fairmsr/constraints.hpp"
#include "fairmsr/instance.hpp"

namespace fairmsr {

using Json = nlohmann::json;  // std::map-backed, so keys serialize sorted

struct SolutionMeta {
  std::size_t profiles_tried = 0;
  std::size_t tuples_tried = 0;
  std::int64_t elapsed_ms = 0;
  std::uint64_t seed = 0;

  friend bool operator==(const SolutionMeta&, const SolutionMeta&) = default;
};

// A solve result as stored on disk. An infeasible result keeps an empty
// clustering with cost 0.
struct Solution {
  Clustering clustering;
  bool feasible = false;
  SolutionMeta meta;

  friend bool operator==(const Solution&, const Solution&) = default;
};

namespace detail {

inline Json rational_to_json(const Rational& r) { return Json::array({r.num, r.den}); }

inline Rational rational_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer()) {
    throw FormatError("rational must be [num, den] with integer entries, got " + j.dump());
  }
  return Rational{j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
}

inline std::size_t index_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
    throw FormatError(std::string(what) + " must be a nonnegative integer, got " + j.dump());
  }
  return j.get<std::size_t>();
}

inline std::vector<std::vector<double>> matrix_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw FormatError(std::string(what) + " must be an array of arrays");
  std::vector<std::vector<double>> rows;
  for (const auto& row : j) {
    if (!row.is_array()) throw FormatError(std::string(what) + " must be an array of arrays");
    auto& out = rows.emplace_back();
    for (const auto& v : row) {
      if (!v.is_number()) throw FormatError(std::string(what) + " entries must be numbers");
      out.push_back(v.get<double>());
    }
  }
  return rows;
}

inline const Json& field(const Json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Json parse_file(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace detail

// Canonical text form: sorted keys, two-space indent, trailing newline.
inline std::string dump_canonical(const Json& j) { return j.dump(2) + "\n"; }

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw FormatError("cannot write " + path);
  out << text;
  if (!out) throw FormatError("write failed: " + path);
}

inline Json constraint_to_json(const ConstraintSpec& c) {
  Json j = {{"kind", std::string(to_string(c.kind))}};
  switch (c.kind) {
    case ConstraintKind::ratio_balance:
      j["b"] = detail::rational_to_json(c.balance);
      break;
    case ConstraintKind::lu_fairness: {
      Json l = Json::array(), u = Json::array();
      for (const auto& r : c.lower) l.push_back(detail::rational_to_json(r));
      for (const auto& r : c.upper) u.push_back(detail::rational_to_json(r));
      j["l"] = l;
      j["u"] = u;
      break;
    }
    case ConstraintKind::lower_bound:
      j["ell"] = c.ell;
      break;
    default:
      break;
  }
  return j;
}

inline ConstraintSpec constraint_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("constraint must be an object");
  const auto& kind = detail::field(j, "kind");
  if (!kind.is_string()) throw FormatError("constraint kind must be a string");
  const auto parsed = parse_constraint_kind(kind.get<std::string>());
  if (!parsed) throw FormatError("unknown constraint kind \"" + kind.get<std::string>() + "\"");
  ConstraintSpec c;
  c.kind = *parsed;
  switch (c.kind) {
    case ConstraintKind::ratio_balance:
      c.balance = detail::rational_from_json(detail::field(j, "b"));
      break;
    case ConstraintKind::lu_fairness:
      for (const char* key : {"l", "u"}) {
        const auto& arr = detail::field(j, key);
        if (!arr.is_array()) throw FormatError(std::string(key) + " must be an array of rationals");
        auto& dst = key[0] == 'l' ? c.lower : c.upper;
        for (const auto& r : arr) dst.push_back(detail::rational_from_json(r));
      }
      break;
    case ConstraintKind::lower_bound:
      c.ell = detail::index_from_json(detail::field(j, "ell"), "ell");
      break;
    default:
      break;
  }
  return c;
}

inline Json instance_to_json(const Instance& inst) {
  Json j;
  j["n"] = inst.n();
  if (inst.points) {
    j["points"] = *inst.points;
    j["distance_matrix"] = nullptr;
  } else {
    j["points"] = nullptr;
    j["distance_matrix"] = inst.dist.rows();
  }
  j["colors"] = inst.colors;
  j["k"] = inst.k;
  j["epsilon"] = inst.epsilon;
  j["constraint"] = constraint_to_json(inst.constraint);
  return j;
}

// Parses and validates; throws FormatError or MetricError.
inline Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("instance must be a JSON object");
  Instance inst;
  const auto& matrix = detail::field(j, "distance_matrix");
  const auto& points = detail::field(j, "points");
  if (matrix.is_null() == points.is_null()) {
    throw FormatError("exactly one of distance_matrix and points must be non-null");
  }
  if (!points.is_null()) {
    inst.points = detail::matrix_from_json(points, "points");
    inst.dist = DistanceMatrix::from_points(*inst.points);
  } else {
    inst.dist = DistanceMatrix::from_rows(detail::matrix_from_json(matrix, "distance_matrix"));
  }
  const std::size_t n = detail::index_from_json(detail::field(j, "n"), "n");
  if (n != inst.n()) {
    throw FormatError("n=" + std::to_string(n) + " but the geometry has " +
                      std::to_string(inst.n()) + " points");
  }
  const auto& colors = detail::field(j, "colors");
  if (!colors.is_array()) throw FormatError("colors must be an array");
  for (const auto& c : colors) inst.colors.push_back(detail::index_from_json(c, "color"));
  inst.k = detail::index_from_json(detail::field(j, "k"), "k");
  const auto& eps = detail::field(j, "epsilon");
  if (!eps.is_number()) throw FormatError("epsilon must be a number");
  inst.epsilon = eps.get<double>();
  inst.constraint = constraint_from_json(detail::field(j, "constraint"));
  validate_instance(inst);
  return inst;
}

inline std::string instance_to_string(const Instance& inst) {
  return dump_canonical(instance_to_json(inst));
}

inline Instance read_instance(const std::string& path) {
  return instance_from_json(detail::parse_file(path));
}

inline void write_instance(const std::string& path, const Instance& inst) {
  write_text(path, instance_to_string(inst));
}

inline Json solution_to_json(const Solution& s) {
  Json j;
  j["centers"] = s.clustering.centers;
  j["assignment"] = s.clustering.assignment;
  j["radii"] = s.clustering.radii;
  j["cost"] = s.clustering.cost;
  j["feasible"] = s.feasible;
  j["meta"] = {{"profiles_tried", s.meta.profiles_tried},
               {"tuples_tried", s.meta.tuples_tried},
               {"elapsed_ms", s.meta.elapsed_ms},
               {"seed", s.meta.seed}};
  return j;
}

inline Solution solution_from_json(const Json& j) {
  if (!j.is_object()) throw FormatError("solution must be a JSON object");
  Solution s;
  const auto ids = [&](const char* key) {
    const auto& arr = detail::field(j, key);
    if (!arr.is_array()) throw FormatError(std::string(key) + " must be an array");
    std::vector<PointId> out;
    for (const auto& v : arr) out.push_back(detail::index_from_json(v, key));
    return out;
  };
  s.clustering.centers = ids("centers");
  s.clustering.assignment = ids("assignment");
  const auto& radii = detail::field(j, "radii");
  if (!radii.is_array()) throw FormatError("radii must be an array");
  for (const auto& r : radii) {
    if (!r.is_number()) throw FormatError("radii entries must be numbers");
    s.clustering.radii.push_back(r.get<double>());
  }
  const auto& cost = detail::field(j, "cost");
  if (!cost.is_number()) throw FormatError("cost must be a number");
  s.clustering.cost = cost.get<double>();
  const auto& feasible = detail::field(j, "feasible");
  if (!feasible.is_boolean()) throw FormatError("feasible must be a boolean");
  s.feasible = feasible.get<bool>();
  const auto& meta = detail::field(j, "meta");
  if (!meta.is_object()) throw FormatError("meta must be an object");
  s.meta.profiles_tried = detail::index_from_json(detail::field(meta, "profiles_tried"), "profiles_tried");
  s.meta.tuples_tried = detail::index_from_json(detail::field(meta, "tuples_tried"), "tuples_tried");
  const auto& elapsed = detail::field(meta, "elapsed_ms");
  if (!elapsed.is_number_integer()) throw FormatError("elapsed_ms must be an integer");
  s.meta.elapsed_ms = elapsed.get<std::int64_t>();
  const auto& seed = detail::field(meta, "seed");
  if (!seed.is_number_integer()) throw FormatError("seed must be an integer");
  s.meta.seed = seed.get<std::uint64_t>();
  return s;
}

inline std::string solution_to_string(const Solution& s) { return dump_canonical(solution_to_json(s)); }

inline Solution read_solution(const std::string& path) {
  return solution_from_json(detail::parse_file(path));
}

inline void write_solution(const std::string& path, const Solution& s) {
  write_text(path, solution_to_string(s));
}

// Checks a stored solution against its instance: lengths, center references,
// radii and cost recomputed from scratch, and the feasible flag. Throws
// InvalidSolution on the first mismatch.
inline void check_solution(const Instance& inst, const Solution& s) {
  const auto& c = s.clustering;
  if (!s.feasible) {
    if (!c.centers.empty() || !c.assignment.empty()) {
      throw InvalidSolution("infeasible solution must carry an empty clustering");
    }
    return;
  }
  if (c.assignment.size() != inst.n()) {
    throw InvalidSolution("assignment has " + std::to_string(c.assignment.size()) +
                          " entries for " + std::to_string(inst.n()) + " points");
  }
  for (PointId p : c.centers) {
    if (p >= inst.n()) throw InvalidSolution("center " + std::to_string(p) + " is not a point");
  }
  const auto rebuilt = make_clustering(inst.dist, c.centers, c.assignment);
  if (rebuilt.centers != c.centers) throw InvalidSolution("center list has unused centers");
  if (rebuilt.radii != c.radii) throw InvalidSolution("stored radii differ from recomputed radii");
  if (rebuilt.cost != c.cost) throw InvalidSolution("stored cost differs from recomputed cost");
  if (!clustering_feasible(inst, c)) throw InvalidSolution("clustering violates the constraint");
}

}  // namespace fairmsr
