#include "combi/comb_map.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include <boost/iterator/counting_iterator.hpp>
#include <boost/pending/disjoint_sets.hpp>

namespace combi::cmap {

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Orbit id of every point under a permutation.
std::vector<std::size_t> orbit_ids(const std::vector<Flag>& perm) {
  std::vector<std::size_t> id(perm.size(), kNone);
  std::size_t next = 0;
  for (std::size_t x = 0; x < perm.size(); ++x) {
    if (id[x] != kNone) continue;
    for (Flag y = static_cast<Flag>(x); id[y] == kNone; y = perm[y]) id[y] = next;
    ++next;
  }
  return id;
}

std::vector<Flag> orbit_from(const std::vector<Flag>& perm, Flag start) {
  std::vector<Flag> out{start};
  for (Flag y = perm[start]; y != start; y = perm[y]) out.push_back(y);
  return out;
}

// Orbits of the group generated by the given maps, via union-find.
template <typename... Gens>
std::size_t group_orbit_count(std::size_t n, Gens... gens) {
  std::vector<std::size_t> rank(n), parent(n);
  boost::disjoint_sets<std::size_t*, std::size_t*> dsu(rank.data(), parent.data());
  for (std::size_t x = 0; x < n; ++x) dsu.make_set(x);
  for (std::size_t x = 0; x < n; ++x) (dsu.union_set(x, static_cast<std::size_t>(gens(static_cast<Flag>(x)))), ...);
  return dsu.count_sets(boost::counting_iterator<std::size_t>(0),
                        boost::counting_iterator<std::size_t>(n));
}

bool is_valid_name(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

const char* sort_prefix(Sort s) {
  switch (s) {
    case Sort::One: return "";
    case Sort::Alpha: return "a.";
    case Sort::Beta: return "b.";
    case Sort::AlphaBeta: return "ab.";
  }
  return "";
}

std::string plain_flag_name(Flag x, const std::vector<std::string>& names) {
  const auto e = edge_of(x);
  const std::string base = e < names.size() ? names[e] : "#" + std::to_string(e);
  return sort_prefix(sort_of(x)) + base;
}

}  // namespace

std::string describe(const MapViolation& v, const std::vector<std::string>& names) {
  switch (v.kind) {
    case MapViolation::Kind::NotAPermutation:
      return "P is not a permutation of the 4n flags";
    case MapViolation::Kind::NotBasic:
      return "P is not basic: alpha(" + plain_flag_name(v.flag, names) +
             ") lies in the P-orbit of " + plain_flag_name(v.flag, names);
    case MapViolation::Kind::ConditionI:
      return "condition (i) alpha P = P^-1 alpha fails at flag " + plain_flag_name(v.flag, names);
    case MapViolation::Kind::NotTransitive:
      return "condition (ii) fails: <alpha, beta, P> has " + std::to_string(v.orbit_count) +
             " orbits";
  }
  return "invalid map";
}

std::optional<MapViolation> find_violation(std::size_t edge_count, const std::vector<Flag>& perm) {
  const std::size_t n = 4 * edge_count;
  if (perm.size() != n || n == 0) return MapViolation{MapViolation::Kind::NotAPermutation};
  std::vector<Flag> inv(n, 0);
  std::vector<bool> hit(n, false);
  for (std::size_t x = 0; x < n; ++x) {
    if (perm[x] >= n || hit[perm[x]]) return MapViolation{MapViolation::Kind::NotAPermutation};
    hit[perm[x]] = true;
    inv[perm[x]] = static_cast<Flag>(x);
  }
  const auto ids = orbit_ids(perm);
  for (Flag x = 0; x < n; ++x)
    if (ids[x] == ids[alpha(x)]) return MapViolation{MapViolation::Kind::NotBasic, x};
  for (Flag x = 0; x < n; ++x)
    if (alpha(perm[x]) != inv[alpha(x)]) return MapViolation{MapViolation::Kind::ConditionI, x};
  const auto count = group_orbit_count(
      n, [](Flag x) { return alpha(x); }, [](Flag x) { return beta(x); },
      [&](Flag x) { return perm[x]; });
  if (count != 1) return MapViolation{MapViolation::Kind::NotTransitive, 0, count};
  return std::nullopt;
}

CombMap::CombMap(std::vector<std::string> edge_names, std::vector<Flag> perm)
    : names_(std::move(edge_names)), perm_(std::move(perm)) {
  if (names_.empty()) throw ValidationError("a map needs at least one edge");
  std::set<std::string> seen;
  for (const auto& nm : names_) {
    if (!is_valid_name(nm)) throw ValidationError("invalid edge name '" + nm + "'");
    if (!seen.insert(nm).second) throw ValidationError("duplicate edge name '" + nm + "'");
  }
  if (auto v = find_violation(names_.size(), perm_)) throw InvalidMap(*v, describe(*v, names_));
  inv_.resize(perm_.size());
  for (std::size_t x = 0; x < perm_.size(); ++x) inv_[perm_[x]] = static_cast<Flag>(x);
}

CombMap CombMap::from_cycles(std::vector<std::string> edge_names,
                             const std::vector<std::vector<Flag>>& cycles) {
  const std::size_t n = 4 * edge_names.size();
  std::vector<Flag> perm(n, 0);
  std::vector<bool> seen(n, false);
  for (const auto& c : cycles) {
    if (c.empty()) throw PreconditionError("empty cycle");
    for (std::size_t k = 0; k < c.size(); ++k) {
      const Flag x = c[k];
      if (x >= n) throw PreconditionError("flag outside the flag set");
      if (seen[x]) throw PreconditionError("cycles are not disjoint");
      seen[x] = true;
      perm[x] = c[(k + 1) % c.size()];
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw PreconditionError("cycles do not cover all 4n flags");
  return CombMap(std::move(edge_names), std::move(perm));
}

std::string CombMap::flag_name(Flag x) const { return plain_flag_name(x, names_); }

std::optional<Flag> CombMap::parse_flag(const std::string& token) const {
  Sort s = Sort::One;
  std::string base = token;
  for (auto [prefix, sort] : {std::pair{"ab.", Sort::AlphaBeta}, std::pair{"a.", Sort::Alpha},
                              std::pair{"b.", Sort::Beta}}) {
    const std::string p = prefix;
    if (token.rfind(p, 0) == 0) {
      s = sort;
      base = token.substr(p.size());
      break;
    }
  }
  auto it = std::find(names_.begin(), names_.end(), base);
  if (it == names_.end()) return std::nullopt;
  return make_flag(static_cast<std::size_t>(it - names_.begin()), s);
}

std::vector<std::vector<Flag>> CombMap::cycles() const {
  std::vector<std::vector<Flag>> out;
  std::vector<bool> seen(perm_.size(), false);
  for (Flag x = 0; x < perm_.size(); ++x) {
    if (seen[x]) continue;
    auto c = orbit_from(perm_, x);
    for (auto y : c) seen[y] = true;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<Vertex> vertices(const CombMap& m) {
  const auto& perm = m.permutation();
  std::vector<bool> seen(perm.size(), false);
  std::vector<Vertex> out;
  for (Flag x = 0; x < perm.size(); ++x) {
    if (seen[x]) continue;
    Vertex v{x, orbit_from(perm, x), orbit_from(perm, alpha(x))};
    for (auto y : v.orbit) seen[y] = true;
    for (auto y : v.mirror) seen[y] = true;
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<Edge> edges(const CombMap& m) {
  std::vector<Edge> out;
  out.reserve(m.edge_count());
  for (std::size_t e = 0; e < m.edge_count(); ++e)
    out.push_back({e, {make_flag(e, Sort::One), make_flag(e, Sort::Alpha),
                       make_flag(e, Sort::Beta), make_flag(e, Sort::AlphaBeta)}});
  return out;
}

CombMap dual(const CombMap& m) {
  std::vector<Flag> perm(m.flag_count());
  for (Flag y = 0; y < perm.size(); ++y) {
    const Flag x = swap_alpha_beta(y);
    perm[y] = swap_alpha_beta(m.next(alpha_beta(x)));
  }
  try {
    return CombMap(m.edge_names(), std::move(perm));
  } catch (const InvalidMap& e) {
    throw InternalError(std::string("dual failed validation: ") + e.what());
  }
}

std::vector<Face> faces(const CombMap& m) {
  std::vector<Face> out;
  for (const auto& v : vertices(dual(m))) {
    std::vector<Flag> a, b;
    for (auto y : v.orbit) a.push_back(swap_alpha_beta(y));
    for (auto y : v.mirror) b.push_back(swap_alpha_beta(y));
    const Flag ka = *std::min_element(a.begin(), a.end());
    const Flag kb = *std::min_element(b.begin(), b.end());
    auto& side = ka < kb ? a : b;
    const Flag key = std::min(ka, kb);
    std::rotate(side.begin(), std::find(side.begin(), side.end(), key), side.end());
    out.push_back({key, std::move(side)});
  }
  std::sort(out.begin(), out.end(), [](const Face& x, const Face& y) { return x.key < y.key; });
  return out;
}

std::size_t valency(const CombMap&, const Vertex& v) {
  if (v.orbit.size() != v.mirror.size())
    throw InternalError("paired vertex orbits have different lengths");
  return v.orbit.size();
}

std::size_t orientation_orbit_count(const CombMap& m) {
  return group_orbit_count(
      m.flag_count(), [](Flag x) { return alpha_beta(x); }, [&](Flag x) { return m.next(x); });
}

bool orientable(const CombMap& m) {
  const auto count = orientation_orbit_count(m);
  if (count == 2) return true;
  if (count == 1) return false;
  throw InternalError("<alpha*beta, P> has " + std::to_string(count) + " orbits");
}

MapCensus census(const CombMap& m) {
  MapCensus c;
  c.vertices = vertices(m).size();
  c.edges = m.edge_count();
  c.faces = faces(m).size();
  c.euler = static_cast<int>(c.vertices) - static_cast<int>(c.edges) + static_cast<int>(c.faces);
  c.orientable = orientable(m);
  if (c.orientable) {
    if (c.euler % 2 != 0 || c.euler > 2)
      throw InternalError("orientable map with chi = " + std::to_string(c.euler));
    c.genus = (2 - c.euler) / 2;
  } else {
    if (c.euler > 1) throw InternalError("non-orientable map with chi = " + std::to_string(c.euler));
    c.genus = 2 - c.euler;
  }
  return c;
}

CombMap word_to_map(const word::SurfaceWord& w) {
  // g[i] is the flag at the start of side i on the polygon interior; the
  // boundary walk F sends g[i] to g[i+1] and beta g[i+1] to beta g[i].
  const std::size_t len = w.size();
  std::vector<Flag> g(len);
  for (std::uint32_t s = 0; s < w.symbol_count(); ++s) {
    auto [p, q] = w.occurrences(s);
    g[p] = make_flag(s, Sort::One);
    g[q] = w.is_twisted(s) ? alpha(g[p]) : alpha_beta(g[p]);
  }
  std::vector<Flag> face(4 * w.symbol_count());
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t j = (i + 1) % len;
    face[g[i]] = g[j];
    face[beta(g[j])] = beta(g[i]);
  }
  std::vector<Flag> perm(face.size());
  for (Flag x = 0; x < perm.size(); ++x) perm[x] = face[alpha_beta(x)];
  return CombMap(w.names(), std::move(perm));
}

word::SurfaceWord face_word(const CombMap& m, const Face& f) {
  std::vector<word::SignedLetter> letters;
  letters.reserve(f.boundary.size());
  for (auto x : f.boundary) {
    const bool tail_end = sort_of(x) == Sort::One || sort_of(x) == Sort::Alpha;
    letters.push_back({static_cast<std::uint32_t>(edge_of(x)), tail_end ? 1 : -1});
  }
  try {
    return word::SurfaceWord(m.edge_names(), std::move(letters));
  } catch (const ValidationError& e) {
    throw PreconditionError(std::string("face boundary is not a polygon word: ") + e.what());
  }
}

}  // namespace combi::cmap
