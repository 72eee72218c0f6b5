#pragma once

// The plane with three marked points in which s-lines are the euclidean lines
// through exactly one marked point. All incidence tests are exact.

#include <array>
#include <string>

#include "combi/map_geometry.hpp"

namespace combi::geom {

struct Point {
  Rational x{0};
  Rational y{0};
  friend bool operator==(const Point&, const Point&) = default;
};

std::string to_string(const Point& p);

/// The euclidean line through two distinct points.
class Line {
 public:
  /// Throws PreconditionError when p == q.
  Line(Point p, Point q);
  const Point& p() const noexcept { return p_; }
  const Point& q() const noexcept { return q_; }
  bool contains(const Point& r) const;
  /// Parallel line through r.
  Line parallel_through(const Point& r) const;

 private:
  Point p_, q_;
};

class SPlane {
 public:
  /// Throws ValidationError when the points are not pairwise distinct and
  /// non-collinear.
  SPlane(Point a, Point b, Point c);
  const std::array<Point, 3>& marked() const noexcept { return marked_; }

  /// Number of marked points on the line.
  int marked_on(const Line& l) const;
  bool is_s_line(const Line& l) const { return marked_on(l) == 1; }

  /// 1 when the line through p and q is an s-line, else 0. Throws
  /// PreconditionError when p == q.
  int s_line_through(const Point& p, const Point& q) const;

  /// 1 when the euclidean parallel to `l` through p is an s-line, else 0.
  /// Throws PreconditionError when `l` is not an s-line or p lies on it.
  int s_parallels_through(const Line& l, const Point& p) const;

 private:
  std::array<Point, 3> marked_;
};

}  // namespace combi::geom
