#include "combi/multi_group.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace combi::mgroup {

Operation::Operation(std::size_t universe_size, std::vector<Element> carrier)
    : n_(universe_size), carrier_(std::move(carrier)), member_(universe_size, false),
      table_(universe_size * universe_size, kUnset) {
  std::sort(carrier_.begin(), carrier_.end());
  if (std::adjacent_find(carrier_.begin(), carrier_.end()) != carrier_.end())
    throw PreconditionError("carrier lists an element twice");
  for (auto x : carrier_) {
    if (x >= n_) throw PreconditionError("carrier element outside the universe");
    member_[x] = true;
  }
}

void Operation::set(Element a, Element b, Element c) {
  if (a >= n_ || b >= n_ || c >= n_) throw PreconditionError("table entry outside the universe");
  table_[a * n_ + b] = c;
}

std::optional<Element> Operation::get(Element a, Element b) const {
  if (a >= n_ || b >= n_) return std::nullopt;
  const auto c = table_[a * n_ + b];
  if (c == kUnset) return std::nullopt;
  return c;
}

Element Operation::operator()(Element a, Element b) const {
  auto c = get(a, b);
  if (!c) throw PreconditionError("operation undefined on the given pair");
  return *c;
}

namespace {

std::string element_name(const MultiGroupCandidate& c, Element x) {
  return x < c.universe.size() ? c.universe[x] : "#" + std::to_string(x);
}

std::string describe(const MultiGroupCandidate& c, const LawViolation& v) {
  const auto part = "part " + std::to_string(v.part + 1);
  const auto& t = v.triple;
  auto nm = [&](Element x) { return element_name(c, x); };
  switch (v.kind) {
    case LawViolation::Kind::EmptyCarrier: return part + " has an empty carrier";
    case LawViolation::Kind::MissingEntry:
      return part + ": " + nm(t[0]) + " * " + nm(t[1]) + " is undefined";
    case LawViolation::Kind::NotClosed:
      return part + ": " + nm(t[0]) + " * " + nm(t[1]) + " leaves the carrier";
    case LawViolation::Kind::NotAssociative:
      return part + ": associativity fails for (" + nm(t[0]) + ", " + nm(t[1]) + ", " + nm(t[2]) + ")";
    case LawViolation::Kind::NoIdentity: return part + " has no identity";
    case LawViolation::Kind::NoInverse: return part + ": " + nm(t[0]) + " has no inverse";
    case LawViolation::Kind::Distribution:
      return "parts " + std::to_string(v.part + 1) + " and " + std::to_string(*v.other_part + 1) +
             ": distribution fails in both directions, e.g. at (" + nm(t[0]) + ", " + nm(t[1]) +
             ", " + nm(t[2]) + ")";
  }
  return "invalid multi-group";
}

std::optional<LawViolation> check_group(const Operation& op, std::size_t part) {
  using K = LawViolation::Kind;
  const auto& s = op.carrier();
  if (s.empty()) return LawViolation{K::EmptyCarrier, part, std::nullopt};
  for (auto a : s)
    for (auto b : s) {
      auto c = op.get(a, b);
      if (!c) return LawViolation{K::MissingEntry, part, std::nullopt, {a, b, 0}};
      if (!op.contains(*c)) return LawViolation{K::NotClosed, part, std::nullopt, {a, b, *c}};
    }
  for (auto a : s)
    for (auto b : s)
      for (auto c : s)
        if (op(op(a, b), c) != op(a, op(b, c)))
          return LawViolation{K::NotAssociative, part, std::nullopt, {a, b, c}};
  std::optional<Element> e;
  for (auto x : s)
    if (std::all_of(s.begin(), s.end(), [&](Element y) { return op(x, y) == y && op(y, x) == y; })) {
      e = x;
      break;
    }
  if (!e) return LawViolation{K::NoIdentity, part, std::nullopt};
  for (auto x : s)
    if (std::none_of(s.begin(), s.end(), [&](Element y) { return op(x, y) == *e && op(y, x) == *e; }))
      return LawViolation{K::NoInverse, part, std::nullopt, {x, 0, 0}};
  return std::nullopt;
}

// First triple where `mul` fails to distribute over `add`, left or right,
// among triples whose every subexpression is defined.
std::optional<std::array<Element, 3>> distribution_failure(const Operation& mul, const Operation& add) {
  const std::size_t n = mul.universe_size();
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y)
      for (Element z = 0; z < n; ++z) {
        if (auto yz = add.get(y, z)) {
          auto lhs = mul.get(x, *yz);
          auto xy = mul.get(x, y), xz = mul.get(x, z);
          if (lhs && xy && xz)
            if (auto rhs = add.get(*xy, *xz); rhs && *rhs != *lhs) return std::array{x, y, z};
          auto lhs_r = mul.get(*yz, x);
          auto yx = mul.get(y, x), zx = mul.get(z, x);
          if (lhs_r && yx && zx)
            if (auto rhs = add.get(*yx, *zx); rhs && *rhs != *lhs_r) return std::array{x, y, z};
        }
      }
  return std::nullopt;
}

std::vector<Element> intersect(const std::vector<Element>& sorted, const Operation& op) {
  std::vector<Element> out;
  for (auto x : sorted)
    if (op.contains(x)) out.push_back(x);
  return out;
}

bool is_subgroup(const Operation& op, const std::vector<Element>& k) {
  if (k.empty()) return false;
  for (auto a : k)
    for (auto b : k)
      if (!std::binary_search(k.begin(), k.end(), op(a, b))) return false;
  return true;
}

// inner is normal in outer: conjugates by elements of outer stay in inner,
// for every operation retained by inner.
bool normal_in(const MultiGroup& g, const SubMultiGroup& inner, const SubMultiGroup& outer) {
  for (auto i : inner.operations) {
    const auto& op = g.part(i);
    const auto hs = intersect(inner.elements, op);
    for (auto x : intersect(outer.elements, op))
      for (auto h : hs)
        if (!std::binary_search(inner.elements.begin(), inner.elements.end(),
                                op(op(x, h), g.inverse(i, x))))
          return false;
  }
  return true;
}

bool strictly_below(const SubMultiGroup& a, const SubMultiGroup& b) {
  return a != b &&
         std::includes(b.operations.begin(), b.operations.end(), a.operations.begin(), a.operations.end()) &&
         std::includes(b.elements.begin(), b.elements.end(), a.elements.begin(), a.elements.end());
}

}  // namespace

MultiGroupReport check_multigroup(const MultiGroupCandidate& c) {
  MultiGroupReport r;
  auto fail = [&](LawViolation v) {
    r.ok = false;
    r.message = describe(c, v);
    r.violation = v;
    return r;
  };
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    if (c.parts[i].universe_size() != c.universe.size())
      throw PreconditionError("part " + std::to_string(i + 1) + " has the wrong universe size");
    if (auto v = check_group(c.parts[i], i)) return fail(*v);
  }
  for (std::size_t i = 0; i < c.parts.size(); ++i)
    for (std::size_t j = i + 1; j < c.parts.size(); ++j) {
      auto ij = distribution_failure(c.parts[i], c.parts[j]);
      if (!ij) continue;
      if (!distribution_failure(c.parts[j], c.parts[i])) continue;
      return fail({LawViolation::Kind::Distribution, i, j, *ij});
    }
  return r;
}

MultiGroup MultiGroup::create(MultiGroupCandidate c) {
  if (c.parts.empty()) throw ValidationError("a multi-group needs at least one operation");
  for (std::size_t i = 0; i < c.parts.size(); ++i) {
    if (c.parts[i].universe_size() != c.universe.size())
      throw ValidationError("part " + std::to_string(i + 1) + " has the wrong universe size");
    if (auto v = check_group(c.parts[i], i)) throw ValidationError(describe(c, *v));
  }
  MultiGroup g(std::move(c));
  for (const auto& op : g.c_.parts) {
    const auto& s = op.carrier();
    Element e = *std::find_if(s.begin(), s.end(), [&](Element x) { return op(x, x) == x; });
    g.identity_.push_back(e);
    std::vector<Element> inv(g.universe_size(), static_cast<Element>(-1));
    for (auto x : s)
      for (auto y : s)
        if (op(x, y) == e) inv[x] = y;
    g.inverse_.push_back(std::move(inv));
  }
  return g;
}

std::optional<Element> MultiGroup::find(const std::string& name) const {
  auto it = std::find(c_.universe.begin(), c_.universe.end(), name);
  if (it == c_.universe.end()) return std::nullopt;
  return static_cast<Element>(it - c_.universe.begin());
}

Element MultiGroup::inverse(std::size_t i, Element x) const {
  if (!part(i).contains(x)) throw PreconditionError("element outside the part");
  return inverse_[i][x];
}

MultiGroupCandidate cyclic_construction(std::size_t n) {
  if (n == 0) throw PreconditionError("n must be positive");
  MultiGroupCandidate c;
  std::vector<Element> all(n);
  for (std::size_t x = 0; x < n; ++x) {
    c.universe.push_back(std::to_string(x));
    all[x] = x;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Operation op(n, all);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) op.set(x, y, (x + y + n - i) % n);
    c.parts.push_back(std::move(op));
  }
  return c;
}

MultiGroup build_cyclic_multigroup(std::size_t n) { return MultiGroup::create(cyclic_construction(n)); }

MultiGroup cyclic_group(std::size_t n) {
  auto c = cyclic_construction(n);
  c.parts.erase(c.parts.begin() + 1, c.parts.end());
  return MultiGroup::create(std::move(c));
}

MultiGroup symmetric_group_3() {
  std::vector<std::array<int, 3>> perms;
  std::array<int, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  MultiGroupCandidate c;
  std::vector<Element> all;
  for (std::size_t k = 0; k < perms.size(); ++k) {
    c.universe.push_back(std::to_string(perms[k][0]) + std::to_string(perms[k][1]) +
                         std::to_string(perms[k][2]));
    all.push_back(k);
  }
  Operation op(perms.size(), all);
  for (std::size_t a = 0; a < perms.size(); ++a)
    for (std::size_t b = 0; b < perms.size(); ++b) {
      // (a b)(x) = a(b(x))
      std::array<int, 3> ab{perms[a][perms[b][0]], perms[a][perms[b][1]], perms[a][perms[b][2]]};
      op.set(a, b, static_cast<Element>(std::find(perms.begin(), perms.end(), ab) - perms.begin()));
    }
  c.parts.push_back(std::move(op));
  return MultiGroup::create(std::move(c));
}

SubMultiGroup whole(const MultiGroup& g) {
  SubMultiGroup h;
  for (std::size_t i = 0; i < g.part_count(); ++i) h.operations.push_back(i);
  for (Element x = 0; x < g.universe_size(); ++x) h.elements.push_back(x);
  return h;
}

void validate_sub(const MultiGroup& g, const SubMultiGroup& h) {
  if (h.operations.empty()) throw ValidationError("a sub-multi-group needs at least one operation");
  if (!std::is_sorted(h.operations.begin(), h.operations.end()) ||
      std::adjacent_find(h.operations.begin(), h.operations.end()) != h.operations.end())
    throw ValidationError("operations must be sorted and distinct");
  if (!std::is_sorted(h.elements.begin(), h.elements.end()) ||
      std::adjacent_find(h.elements.begin(), h.elements.end()) != h.elements.end())
    throw ValidationError("elements must be sorted and distinct");
  for (auto i : h.operations)
    if (i >= g.part_count()) throw ValidationError("unknown operation " + std::to_string(i + 1));
  for (auto x : h.elements) {
    if (x >= g.universe_size()) throw ValidationError("element outside the universe");
    const bool covered = std::any_of(h.operations.begin(), h.operations.end(),
                                     [&](std::size_t i) { return g.part(i).contains(x); });
    if (!covered) throw ValidationError("element " + g.name(x) + " lies in no retained part");
  }
  for (auto i : h.operations)
    if (!is_subgroup(g.part(i), intersect(h.elements, g.part(i))))
      throw ValidationError("elements do not form a subgroup of part " + std::to_string(i + 1));
}

std::vector<Element> coset(const MultiGroup& g, const SubMultiGroup& h, Element x) {
  std::vector<Element> out;
  for (auto i : h.operations) {
    const auto& op = g.part(i);
    if (!op.contains(x)) continue;
    for (auto k : intersect(h.elements, op)) out.push_back(op(x, k));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

LagrangeDecomposition lagrange_decomposition(const MultiGroup& g, const SubMultiGroup& h) {
  validate_sub(g, h);
  const std::size_t n = g.universe_size();
  std::vector<std::vector<Element>> cosets(n);
  for (Element x = 0; x < n; ++x) cosets[x] = coset(g, h, x);

  LagrangeDecomposition d;
  std::vector<bool> covered(n, false);
  auto disjoint = [&](const std::vector<Element>& c) {
    return std::none_of(c.begin(), c.end(), [&](Element y) { return covered[y]; });
  };
  auto mark = [&](const std::vector<Element>& c, bool v) {
    for (auto y : c) covered[y] = v;
  };
  for (Element x = 0; x < n && d.greedy; ++x) {
    if (covered[x]) continue;
    if (cosets[x].empty() || !disjoint(cosets[x]) ||
        !std::binary_search(cosets[x].begin(), cosets[x].end(), x)) {
      d.greedy = false;
      break;
    }
    mark(cosets[x], true);
    d.representatives.push_back(x);
  }

  if (!d.greedy) {
    d.representatives.clear();
    std::fill(covered.begin(), covered.end(), false);
    Element stuck = 0;
    std::function<bool()> search = [&]() {
      auto it = std::find(covered.begin(), covered.end(), false);
      if (it == covered.end()) return true;
      const auto target = static_cast<Element>(it - covered.begin());
      stuck = std::max(stuck, target);
      for (Element x = 0; x < n; ++x) {
        const auto& c = cosets[x];
        if (!std::binary_search(c.begin(), c.end(), target) || !disjoint(c)) continue;
        mark(c, true);
        d.representatives.push_back(x);
        if (search()) return true;
        d.representatives.pop_back();
        mark(c, false);
      }
      return false;
    };
    if (!search())
      throw NoDisjointCover(stuck, "no set of cosets partitions the universe; element " +
                                       g.name(stuck) + " cannot be covered disjointly");
    std::sort(d.representatives.begin(), d.representatives.end());
  }

  std::vector<int> hits(n, 0);
  for (auto x : d.representatives) {
    d.cosets.push_back(cosets[x]);
    for (auto y : cosets[x]) ++hits[y];
  }
  if (d.representatives.empty() || std::any_of(hits.begin(), hits.end(), [](int k) { return k != 1; }))
    throw InternalError("coset decomposition failed certification");
  return d;
}

bool is_normal(const SubMultiGroup& h, const MultiGroup& g) {
  validate_sub(g, h);
  return normal_in(g, h, whole(g));
}

std::set<std::size_t> maximal_normal_series_lengths(const MultiGroup& g, std::size_t size_guard,
                                                    std::size_t node_guard) {
  const std::size_t n = g.universe_size();
  const std::size_t m = g.part_count();
  if (n > size_guard)
    throw LimitExceeded("universe of " + std::to_string(n) + " elements exceeds the guard of " +
                        std::to_string(size_guard));
  if (m >= 8 * sizeof(std::size_t) - 1) throw LimitExceeded("too many operations");

  // Every sub-multi-group: an element set together with an operation set.
  std::vector<SubMultiGroup> nodes;
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<Element> elems;
    for (Element x = 0; x < n; ++x)
      if (mask >> x & 1u) elems.push_back(x);
    std::vector<std::size_t> usable;
    for (std::size_t i = 0; i < m; ++i) {
      auto k = intersect(elems, g.part(i));
      if (!k.empty() && is_subgroup(g.part(i), k)) usable.push_back(i);
    }
    for (std::size_t sub = 1; sub < (std::size_t{1} << usable.size()); ++sub) {
      SubMultiGroup h;
      for (std::size_t k = 0; k < usable.size(); ++k)
        if (sub >> k & 1u) h.operations.push_back(usable[k]);
      const bool covered = std::all_of(elems.begin(), elems.end(), [&](Element x) {
        return std::any_of(h.operations.begin(), h.operations.end(),
                           [&](std::size_t i) { return g.part(i).contains(x); });
      });
      if (!covered) continue;
      h.elements = elems;
      nodes.push_back(std::move(h));
      if (nodes.size() > node_guard)
        throw LimitExceeded("more than " + std::to_string(node_guard) + " sub-multi-groups");
    }
  }

  const auto top = whole(g);
  std::map<SubMultiGroup, std::set<std::size_t>> memo;
  std::function<const std::set<std::size_t>&(const SubMultiGroup&)> lengths =
      [&](const SubMultiGroup& x) -> const std::set<std::size_t>& {
    if (auto it = memo.find(x); it != memo.end()) return it->second;
    std::vector<const SubMultiGroup*> below;
    for (const auto& y : nodes)
      if (strictly_below(y, x) && normal_in(g, y, x)) below.push_back(&y);
    std::set<std::size_t> out;
    for (const auto* y : below) {
      const bool refinable = std::any_of(below.begin(), below.end(), [&](const SubMultiGroup* z) {
        return strictly_below(*y, *z) && normal_in(g, *y, *z);
      });
      if (refinable) continue;
      for (auto l : lengths(*y)) out.insert(l + 1);
    }
    if (below.empty()) out.insert(0);
    return memo[x] = std::move(out);
  };
  return lengths(top);
}

}  // namespace combi::mgroup
