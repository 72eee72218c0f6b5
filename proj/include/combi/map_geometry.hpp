#pragma once

// Map geometries: a combinatorial map with an angle at every vertex, the
// elliptic/euclidean/hyperbolic vertex trichotomy, and boundaries obtained by
// removing faces.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "combi/comb_map.hpp"

namespace combi::geom {

using Rational = boost::rational<std::int64_t>;

inline constexpr double kDefaultAngleTolerance = 1e-9;

/// -1, 0 or 1 as a is below, equal to or above b. Boost 1.74's mixed
/// rational/integer comparisons recurse forever under C++20's rewritten
/// operator candidates, so ordering goes through here and equality is only
/// ever taken between two Rationals.
int compare(const Rational& a, const Rational& b);

/// A positive angle, either an exact rational multiple of pi or a real number
/// of radians compared with a relative tolerance on rho*mu / 2pi - 1.
class Angle {
 public:
  static Angle pi_times(Rational r);
  static Angle radians(double value, double tolerance = kDefaultAngleTolerance);

  bool exact() const noexcept { return exact_; }
  /// The multiple of pi; only meaningful when exact().
  const Rational& pi_fraction() const noexcept { return fraction_; }
  double value() const;  // radians
  double tolerance() const noexcept { return tolerance_; }

  /// "p/q pi" for exact angles, the radian value otherwise.
  std::string to_string() const;

 private:
  bool exact_ = true;
  Rational fraction_{0};
  double radians_ = 0.0;
  double tolerance_ = 0.0;
};

enum class VertexKind { Elliptic, Euclidean, Hyperbolic };
std::string to_string(VertexKind k);

struct VertexClass {
  VertexKind kind;
  /// Inexact angle within tolerance of the euclidean value.
  bool near_euclidean = false;
};

class MapGeometry {
 public:
  /// `mu` is keyed by vertex key (least flag of the vertex). Throws
  /// ValidationError when a vertex has valency below 3, an angle is missing or
  /// an angle lies outside (0, 4pi/valency).
  static MapGeometry create(cmap::CombMap m, std::map<cmap::Flag, Angle> mu);

  const cmap::CombMap& map() const noexcept { return map_; }
  const std::vector<cmap::Vertex>& vertices() const noexcept { return vertices_; }
  const Angle& angle(cmap::Flag vertex_key) const;
  std::size_t valency(cmap::Flag vertex_key) const;

 private:
  MapGeometry(cmap::CombMap m, std::vector<cmap::Vertex> vs, std::map<cmap::Flag, Angle> mu)
      : map_(std::move(m)), vertices_(std::move(vs)), mu_(std::move(mu)) {}

  cmap::CombMap map_;
  std::vector<cmap::Vertex> vertices_;
  std::map<cmap::Flag, Angle> mu_;
};

/// Sign of rho*mu - 2pi, exact for rational-pi angles.
VertexClass classify_vertex(const MapGeometry& g, cmap::Flag vertex_key);

struct BoundedMapGeometry {
  MapGeometry base;
  std::vector<cmap::Flag> removed;  // face keys
};

/// Removes the faces with the given keys. Throws ValidationError unless
/// 1 <= l <= faces - 1, the keys are distinct faces, and the vertices and
/// edges incident with the remaining faces form a connected skeleton.
BoundedMapGeometry with_boundary(const MapGeometry& g, std::vector<cmap::Flag> face_keys);

struct AngleSum {
  bool exact = true;
  Rational pi_fraction{0};  // when exact
  double radians = 0.0;     // always filled
};

/// Sum over vertices of 2pi - rho*mu.
AngleSum total_angle_defect(const MapGeometry& g);

}  // namespace combi::geom
