#include "combi/map_geometry.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "combi/errors.hpp"

namespace combi::geom {

namespace {

constexpr double kPi = boost::math::constants::pi<double>();

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace

int compare(const Rational& a, const Rational& b) {
  // boost::rational keeps denominators positive.
  const auto n = (a - b).numerator();
  return n < 0 ? -1 : n > 0 ? 1 : 0;
}

Angle Angle::pi_times(Rational r) {
  if (compare(r, Rational(0)) <= 0) throw ValidationError("angle must be positive");
  Angle a;
  a.fraction_ = r;
  return a;
}

Angle Angle::radians(double value, double tolerance) {
  if (!std::isfinite(value) || value <= 0) throw ValidationError("angle must be positive");
  if (!(tolerance > 0)) throw ValidationError("tolerance must be positive");
  Angle a;
  a.exact_ = false;
  a.radians_ = value;
  a.tolerance_ = tolerance;
  return a;
}

double Angle::value() const { return exact_ ? to_double(fraction_) * kPi : radians_; }

std::string Angle::to_string() const {
  if (!exact_) {
    std::ostringstream os;
    os.precision(17);
    os << radians_;
    return os.str();
  }
  std::string s = std::to_string(fraction_.numerator());
  if (fraction_.denominator() != 1) s += "/" + std::to_string(fraction_.denominator());
  return s + " pi";
}

std::string to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Elliptic: return "elliptic";
    case VertexKind::Euclidean: return "euclidean";
    case VertexKind::Hyperbolic: return "hyperbolic";
  }
  return "?";
}

MapGeometry MapGeometry::create(cmap::CombMap m, std::map<cmap::Flag, Angle> mu) {
  auto vs = cmap::vertices(m);
  std::set<cmap::Flag> keys;
  for (const auto& v : vs) {
    keys.insert(v.key);
    const auto rho = cmap::valency(m, v);
    const auto name = m.flag_name(v.key);
    if (rho < 3)
      throw ValidationError("vertex " + name + " has valency " + std::to_string(rho) + " < 3");
    auto it = mu.find(v.key);
    if (it == mu.end()) throw ValidationError("no angle given for vertex " + name);
    const Angle& a = it->second;
    const auto r = static_cast<std::int64_t>(rho);
    const bool below = a.exact() ? compare(a.pi_fraction() * r, Rational(4)) < 0 : a.value() * static_cast<double>(rho) < 4 * kPi;
    if (!below)
      throw ValidationError("angle " + a.to_string() + " at vertex " + name +
                            " is not below 4 pi / " + std::to_string(rho));
  }
  for (const auto& [k, a] : mu)
    if (!keys.count(k)) throw ValidationError("angle given for " + m.flag_name(k) + ", which is not a vertex key");
  return MapGeometry(std::move(m), std::move(vs), std::move(mu));
}

const Angle& MapGeometry::angle(cmap::Flag vertex_key) const {
  auto it = mu_.find(vertex_key);
  if (it == mu_.end()) throw PreconditionError("not a vertex key: " + map_.flag_name(vertex_key));
  return it->second;
}

std::size_t MapGeometry::valency(cmap::Flag vertex_key) const {
  for (const auto& v : vertices_)
    if (v.key == vertex_key) return cmap::valency(map_, v);
  throw PreconditionError("not a vertex key: " + map_.flag_name(vertex_key));
}

VertexClass classify_vertex(const MapGeometry& g, cmap::Flag vertex_key) {
  const Angle& a = g.angle(vertex_key);
  const auto rho = g.valency(vertex_key);
  if (a.exact()) {
    const Rational total = a.pi_fraction() * static_cast<std::int64_t>(rho);
    const int side = compare(total, Rational(2));
    if (side < 0) return {VertexKind::Elliptic};
    if (side == 0) return {VertexKind::Euclidean};
    return {VertexKind::Hyperbolic};
  }
  const double rel = a.value() * static_cast<double>(rho) / (2 * kPi) - 1.0;
  if (std::abs(rel) <= a.tolerance()) return {VertexKind::Euclidean, true};
  return {rel < 0 ? VertexKind::Elliptic : VertexKind::Hyperbolic};
}

BoundedMapGeometry with_boundary(const MapGeometry& g, std::vector<cmap::Flag> face_keys) {
  const auto& m = g.map();
  const auto fs = cmap::faces(m);
  if (face_keys.empty()) throw ValidationError("at least one face must be removed");
  if (face_keys.size() >= fs.size())
    throw ValidationError("removing " + std::to_string(face_keys.size()) + " of " +
                          std::to_string(fs.size()) + " faces leaves no surface");
  std::set<cmap::Flag> removed;
  for (auto k : face_keys) {
    const bool known = std::any_of(fs.begin(), fs.end(), [&](const cmap::Face& f) { return f.key == k; });
    if (!known) throw ValidationError(m.flag_name(k) + " is not a face key");
    if (!removed.insert(k).second) throw ValidationError("face " + m.flag_name(k) + " listed twice");
  }

  std::vector<std::size_t> vertex_of(m.flag_count());
  const auto& vs = g.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (auto x : vs[i].orbit) vertex_of[x] = i;
    for (auto x : vs[i].mirror) vertex_of[x] = i;
  }
  std::vector<bool> kept_vertex(vs.size(), false);
  std::vector<bool> kept_edge(m.edge_count(), false);
  for (const auto& f : fs) {
    if (removed.count(f.key)) continue;
    for (auto x : f.boundary) {
      kept_vertex[vertex_of[x]] = true;
      kept_edge[cmap::edge_of(x)] = true;
    }
  }
  std::vector<std::size_t> parent(vs.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e = 0; e < m.edge_count(); ++e) {
    if (!kept_edge[e]) continue;
    const auto a = vertex_of[cmap::make_flag(e, cmap::Sort::One)];
    const auto b = vertex_of[cmap::make_flag(e, cmap::Sort::Beta)];
    parent[find(a)] = find(b);
  }
  std::set<std::size_t> roots;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (kept_vertex[i]) roots.insert(find(i));
  if (roots.size() != 1) throw ValidationError("the retained skeleton is disconnected");
  return {g, std::move(face_keys)};
}

AngleSum total_angle_defect(const MapGeometry& g) {
  AngleSum s;
  for (const auto& v : g.vertices()) {
    const Angle& a = g.angle(v.key);
    const auto rho = cmap::valency(g.map(), v);
    if (a.exact()) s.pi_fraction += Rational(2) - a.pi_fraction() * static_cast<std::int64_t>(rho);
    else s.exact = false;
    s.radians += 2 * kPi - static_cast<double>(rho) * a.value();
  }
  if (!s.exact) s.pi_fraction = 0;
  return s;
}

}  // namespace combi::geom
