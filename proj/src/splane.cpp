#include "combi/splane.hpp"

#include "combi/errors.hpp"

namespace combi::geom {

namespace {

Rational cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

std::string rational_string(const Rational& r) {
  std::string s = std::to_string(r.numerator());
  if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
  return s;
}

}  // namespace

std::string to_string(const Point& p) {
  return "(" + rational_string(p.x) + ", " + rational_string(p.y) + ")";
}

Line::Line(Point p, Point q) : p_(std::move(p)), q_(std::move(q)) {
  if (p_ == q_) throw PreconditionError("a line needs two distinct points, got " + to_string(p_) + " twice");
}

bool Line::contains(const Point& r) const { return cross(p_, q_, r) == Rational(0); }

Line Line::parallel_through(const Point& r) const {
  return Line(r, Point{r.x + (q_.x - p_.x), r.y + (q_.y - p_.y)});
}

SPlane::SPlane(Point a, Point b, Point c) : marked_{std::move(a), std::move(b), std::move(c)} {
  if (marked_[0] == marked_[1] || marked_[0] == marked_[2] || marked_[1] == marked_[2])
    throw ValidationError("marked points must be distinct");
  if (cross(marked_[0], marked_[1], marked_[2]) == Rational(0))
    throw ValidationError("marked points must not be collinear");
}

int SPlane::marked_on(const Line& l) const {
  int n = 0;
  for (const auto& m : marked_) n += l.contains(m);
  return n;
}

int SPlane::s_line_through(const Point& p, const Point& q) const {
  return is_s_line(Line(p, q)) ? 1 : 0;
}

int SPlane::s_parallels_through(const Line& l, const Point& p) const {
  if (!is_s_line(l)) throw PreconditionError("the given line is not an s-line");
  if (l.contains(p)) throw PreconditionError("the point " + to_string(p) + " lies on the line");
  return is_s_line(l.parallel_through(p)) ? 1 : 0;
}

}  // namespace combi::geom
