#include "combi/graph_embedding.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>

#include "combi/errors.hpp"

namespace combi::graph {

std::size_t SimpleGraph::add_vertex(std::string name) {
  if (name.empty()) throw ValidationError("empty vertex name");
  if (find_vertex(name)) throw ValidationError("duplicate vertex '" + name + "'");
  names_.push_back(std::move(name));
  return names_.size() - 1;
}

std::size_t SimpleGraph::add_edge(std::size_t u, std::size_t v) {
  if (u >= names_.size() || v >= names_.size())
    throw ValidationError("edge endpoint is not a vertex");
  ends_.emplace_back(u, v);
  return ends_.size() - 1;
}

std::size_t SimpleGraph::add_edge(const std::string& u, const std::string& v) {
  const auto iu = find_vertex(u).value_or(names_.size());
  if (iu == names_.size()) add_vertex(u);
  auto iv = find_vertex(v);
  return add_edge(iu, iv ? *iv : add_vertex(v));
}

SimpleGraph SimpleGraph::complete(std::size_t n) {
  SimpleGraph g;
  for (std::size_t i = 0; i < n; ++i) g.add_vertex("v" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

SimpleGraph SimpleGraph::complete_bipartite(std::size_t a, std::size_t b) {
  SimpleGraph g;
  for (std::size_t i = 0; i < a; ++i) g.add_vertex("u" + std::to_string(i + 1));
  for (std::size_t j = 0; j < b; ++j) g.add_vertex("w" + std::to_string(j + 1));
  for (std::size_t i = 0; i < a; ++i)
    for (std::size_t j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g;
}

std::optional<std::size_t> SimpleGraph::find_vertex(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - names_.begin());
}

std::size_t SimpleGraph::degree(std::size_t v) const {
  std::size_t d = 0;
  for (auto [a, b] : ends_) d += (a == v) + (b == v);
  return d;
}

std::vector<std::size_t> SimpleGraph::neighbors(std::size_t v) const {
  std::set<std::size_t> out;
  for (auto [a, b] : ends_) {
    if (a == v) out.insert(b);
    if (b == v) out.insert(a);
  }
  return {out.begin(), out.end()};
}

std::vector<std::vector<std::size_t>> SimpleGraph::components() const {
  std::vector<std::size_t> parent(names_.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : ends_) parent[find(a)] = find(b);
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> slot(names_.size(), names_.size());
  for (std::size_t v = 0; v < names_.size(); ++v) {
    auto r = find(v);
    if (slot[r] == names_.size()) {
      slot[r] = out.size();
      out.emplace_back();
    }
    out[slot[r]].push_back(v);
  }
  return out;
}

bool SimpleGraph::is_connected() const { return components().size() <= 1; }

SimpleGraph SimpleGraph::relabeled(const std::vector<std::size_t>& perm) const {
  if (perm.size() != names_.size()) throw PreconditionError("relabeling has the wrong size");
  std::vector<std::string> names(names_.size());
  std::vector<bool> hit(names_.size(), false);
  for (std::size_t v = 0; v < perm.size(); ++v) {
    if (perm[v] >= perm.size() || hit[perm[v]]) throw PreconditionError("relabeling is not a permutation");
    hit[perm[v]] = true;
    names[perm[v]] = names_[v];
  }
  SimpleGraph g;
  g.names_ = std::move(names);
  for (auto [a, b] : ends_) g.ends_.emplace_back(perm[a], perm[b]);
  return g;
}

std::pair<SimpleGraph, std::vector<std::size_t>> SimpleGraph::edge_subgraph(
    const std::vector<std::size_t>& edge_ids) const {
  SimpleGraph g;
  std::vector<std::size_t> back;
  std::vector<std::size_t> fwd(names_.size(), names_.size());
  auto map_vertex = [&](std::size_t v) {
    if (fwd[v] == names_.size()) {
      fwd[v] = g.add_vertex(names_[v]);
      back.push_back(v);
    }
    return fwd[v];
  };
  for (auto e : edge_ids) {
    const auto [a, b] = edge(e);
    const auto na = map_vertex(a);
    g.add_edge(na, map_vertex(b));
  }
  return {std::move(g), std::move(back)};
}

namespace {

// Darts: edge e gives 2e (first end -> second end) and 2e+1 (reverse).
constexpr std::size_t reverse_dart(std::size_t d) { return d ^ 1u; }

std::uint64_t saturating_factorial_product(const std::vector<std::vector<std::size_t>>& rot,
                                           std::uint64_t cap) {
  std::uint64_t total = 1;
  for (const auto& r : rot)
    for (std::uint64_t k = 2; k < r.size(); ++k) {
      if (total > cap / k) return std::numeric_limits<std::uint64_t>::max();
      total *= k;
    }
  return total;
}

std::size_t count_faces(const std::vector<std::size_t>& succ, std::vector<char>& seen) {
  std::fill(seen.begin(), seen.end(), 0);
  std::size_t faces = 0;
  for (std::size_t d = 0; d < succ.size(); ++d) {
    if (seen[d]) continue;
    ++faces;
    for (std::size_t x = d; !seen[x]; x = succ[reverse_dart(x)]) seen[x] = 1;
  }
  return faces;
}

}  // namespace

GenusSearch genus_search(const SimpleGraph& g, std::uint64_t guard) {
  if (g.vertex_count() == 0) throw PreconditionError("genus of the empty graph is undefined");
  if (!g.is_connected()) throw PreconditionError("graph is not connected");
  const std::size_t v = g.vertex_count();
  const std::size_t e = g.edge_count();
  if (e == 0) return {0, 1, 1, std::vector<std::vector<std::size_t>>(v)};

  // rot[u] lists the darts leaving u; index 0 stays fixed, the rest permute.
  std::vector<std::vector<std::size_t>> rot(v);
  for (std::size_t k = 0; k < e; ++k) {
    rot[g.edge(k).first].push_back(2 * k);
    rot[g.edge(k).second].push_back(2 * k + 1);
  }
  GenusSearch result;
  result.systems_total = saturating_factorial_product(rot, guard);
  if (result.systems_total > guard)
    throw LimitExceeded("rotation systems exceed the guard of " + std::to_string(guard));

  std::vector<std::size_t> succ(2 * e);
  std::vector<char> seen(2 * e);
  auto load = [&](std::size_t u) {
    const auto& r = rot[u];
    for (std::size_t i = 0; i < r.size(); ++i) succ[r[i]] = r[(i + 1) % r.size()];
  };
  for (std::size_t u = 0; u < v; ++u) load(u);

  std::size_t best_faces = 0;
  while (true) {
    ++result.systems_examined;
    if (const auto f = count_faces(succ, seen); f > best_faces) {
      best_faces = f;
      result.rotation = rot;
    }
    const long chi = static_cast<long>(v) - static_cast<long>(e) + static_cast<long>(best_faces);
    if (chi == 2) break;
    // Odometer step: advance the first vertex whose tail permutation is not last.
    std::size_t u = 0;
    for (; u < v; ++u) {
      auto& r = rot[u];
      const bool advanced = r.size() > 2 && std::next_permutation(r.begin() + 1, r.end());
      load(u);
      if (advanced) break;
    }
    if (u == v) break;
  }
  const long chi = static_cast<long>(v) - static_cast<long>(e) + static_cast<long>(best_faces);
  if (chi % 2 != 0 || chi > 2)
    throw InternalError("orientable embedding with chi = " + std::to_string(chi));
  result.genus = static_cast<int>((2 - chi) / 2);
  return result;
}

int min_orientable_genus(const SimpleGraph& g, std::uint64_t guard) {
  return genus_search(g, guard).genus;
}

cmap::CombMap embedding_map(const SimpleGraph& g, const std::vector<std::vector<std::size_t>>& rotation) {
  const std::size_t e = g.edge_count();
  if (e == 0) throw PreconditionError("a map needs at least one edge");
  if (rotation.size() != g.vertex_count()) throw PreconditionError("one rotation per vertex is required");
  std::vector<bool> seen(2 * e, false);
  auto origin = [&](std::size_t d) { return d % 2 == 0 ? g.edge(d / 2).first : g.edge(d / 2).second; };
  auto flag = [](std::size_t d) {
    return cmap::make_flag(d / 2, d % 2 == 0 ? cmap::Sort::One : cmap::Sort::AlphaBeta);
  };
  std::vector<cmap::Flag> perm(4 * e);
  for (std::size_t u = 0; u < rotation.size(); ++u) {
    const auto& r = rotation[u];
    for (std::size_t i = 0; i < r.size(); ++i) {
      const auto d = r[i];
      if (d >= 2 * e || seen[d] || origin(d) != u)
        throw PreconditionError("rotation of vertex " + g.name(u) + " is not a list of its darts");
      seen[d] = true;
      const auto next = r[(i + 1) % r.size()];
      perm[flag(d)] = flag(next);
      perm[cmap::alpha(flag(next))] = cmap::alpha(flag(d));
    }
  }
  if (std::find(seen.begin(), seen.end(), false) != seen.end())
    throw PreconditionError("rotation misses some darts");
  std::vector<std::string> names;
  for (std::size_t k = 0; k < e; ++k) names.push_back("e" + std::to_string(k + 1));
  return cmap::CombMap(std::move(names), std::move(perm));
}

bool is_planar(const SimpleGraph& g, std::uint64_t guard) {
  for (const auto& comp : g.components()) {
    std::vector<std::size_t> ids;
    for (std::size_t k = 0; k < g.edge_count(); ++k)
      if (std::binary_search(comp.begin(), comp.end(), g.edge(k).first)) ids.push_back(k);
    if (ids.empty()) continue;
    if (genus_search(g.edge_subgraph(ids).first, guard).genus != 0) return false;
  }
  return true;
}

MultiEmbeddingVerdict check_multi_embedding(const SimpleGraph& g,
                                            const std::vector<std::vector<std::size_t>>& blocks,
                                            std::uint64_t guard) {
  if (blocks.empty()) throw PreconditionError("at least one block is required");
  std::vector<std::size_t> owner(g.edge_count(), blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (blocks[i].empty()) throw PreconditionError("block " + std::to_string(i + 1) + " has no edges");
    for (auto e : blocks[i]) {
      if (e >= g.edge_count()) throw PreconditionError("block references an unknown edge");
      if (owner[e] != blocks.size())
        throw PreconditionError("edge " + std::to_string(e) + " lies in two blocks");
      owner[e] = i;
    }
  }
  if (std::find(owner.begin(), owner.end(), blocks.size()) != owner.end())
    throw PreconditionError("blocks do not cover every edge");

  std::vector<std::vector<bool>> in_block(blocks.size(), std::vector<bool>(g.vertex_count(), false));
  for (std::size_t i = 0; i < blocks.size(); ++i)
    for (auto e : blocks[i]) {
      in_block[i][g.edge(e).first] = true;
      in_block[i][g.edge(e).second] = true;
    }

  MultiEmbeddingVerdict verdict;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (!is_planar(g.edge_subgraph(blocks[i]).first, guard)) {
      verdict.embeddable = false;
      verdict.violation = "(i)";
      verdict.block = i + 1;
      verdict.message = "block " + std::to_string(i + 1) + " is not planar";
      return verdict;
    }
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = std::min(i + 1, blocks.size() - 1);
    for (std::size_t u = 0; u < g.vertex_count(); ++u) {
      if (!in_block[i][u]) continue;
      for (auto w : g.neighbors(u)) {
        bool ok = false;
        for (std::size_t j = lo; j <= hi && !ok; ++j) ok = in_block[j][w];
        if (ok) continue;
        verdict.embeddable = false;
        verdict.violation = "(ii)";
        verdict.block = i + 1;
        verdict.vertex = u;
        verdict.neighbor = w;
        verdict.message = "vertex " + g.name(u) + " of block " + std::to_string(i + 1) +
                          " has neighbor " + g.name(w) + " outside blocks " +
                          std::to_string(lo + 1) + ".." + std::to_string(hi + 1);
        return verdict;
      }
    }
  }
  return verdict;
}

}  // namespace combi::graph
