#pragma once

// Orientable genus of small graphs by exhaustive rotation-system search, and
// the block-decomposition test for nested multi-embeddings on spheres.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "combi/comb_map.hpp"

namespace combi::graph {

/// Undirected multigraph with named vertices. Loops and parallel edges are
/// allowed; a loop contributes two edge-ends at its vertex.
class SimpleGraph {
 public:
  std::size_t add_vertex(std::string name);
  std::size_t add_edge(std::size_t u, std::size_t v);
  /// Adds the vertices on first use.
  std::size_t add_edge(const std::string& u, const std::string& v);

  static SimpleGraph complete(std::size_t n);
  static SimpleGraph complete_bipartite(std::size_t a, std::size_t b);

  std::size_t vertex_count() const noexcept { return names_.size(); }
  std::size_t edge_count() const noexcept { return ends_.size(); }
  const std::string& name(std::size_t v) const { return names_.at(v); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::optional<std::size_t> find_vertex(const std::string& name) const;
  const std::pair<std::size_t, std::size_t>& edge(std::size_t e) const { return ends_.at(e); }
  const std::vector<std::pair<std::size_t, std::size_t>>& edge_list() const noexcept { return ends_; }

  std::size_t degree(std::size_t v) const;
  /// Sorted, without repetition; contains v itself when v carries a loop.
  std::vector<std::size_t> neighbors(std::size_t v) const;
  bool is_connected() const;
  /// Vertex ids of each connected component, each sorted.
  std::vector<std::vector<std::size_t>> components() const;

  /// The graph with vertex v renamed/reindexed to perm[v].
  SimpleGraph relabeled(const std::vector<std::size_t>& perm) const;
  /// Subgraph formed by the given edges and their endpoints, plus the map
  /// from new vertex ids back to ids of this graph.
  std::pair<SimpleGraph, std::vector<std::size_t>> edge_subgraph(
      const std::vector<std::size_t>& edge_ids) const;

 private:
  std::vector<std::string> names_;
  std::vector<std::pair<std::size_t, std::size_t>> ends_;
};

inline constexpr std::uint64_t kDefaultRotationGuard = 10'000'000;

struct GenusSearch {
  int genus = 0;
  std::uint64_t systems_total = 0;     // product of (deg(v) - 1)!
  std::uint64_t systems_examined = 0;  // fewer when genus 0 stops the search
  /// A rotation system reaching `genus`: for every vertex, the darts leaving
  /// it in cyclic order. Dart 2e leaves the first end of edge e, 2e+1 the
  /// second.
  std::vector<std::vector<std::size_t>> rotation;
};

/// Exhaustive search over rotation systems of a connected graph. Throws
/// PreconditionError for an empty or disconnected graph and LimitExceeded when
/// the number of rotation systems is above `guard`.
GenusSearch genus_search(const SimpleGraph& g, std::uint64_t guard = kDefaultRotationGuard);

int min_orientable_genus(const SimpleGraph& g, std::uint64_t guard = kDefaultRotationGuard);

/// The orientable map of a rotation system. Edge e becomes edge "e<e+1>";
/// dart 2e is flag x of that edge and dart 2e+1 is flag alpha*beta x.
/// Throws PreconditionError when `rotation` does not list every dart once at
/// its own vertex.
cmap::CombMap embedding_map(const SimpleGraph& g, const std::vector<std::vector<std::size_t>>& rotation);

/// Planarity of every connected component.
bool is_planar(const SimpleGraph& g, std::uint64_t guard = kDefaultRotationGuard);

struct MultiEmbeddingVerdict {
  bool embeddable = true;
  std::string violation;  // "", "(i)" or "(ii)"
  std::size_t block = 0;  // 1-based block of the violation
  std::optional<std::size_t> vertex;    // (ii): vertex of the block
  std::optional<std::size_t> neighbor;  // (ii): its out-of-range neighbor
  std::string message;
};

/// Blocks are lists of edge ids that must partition the edges of `g`.
/// Condition (i): every block is planar. Condition (ii): the neighbors of a
/// vertex of block i lie in blocks i-1, i, i+1 (indices truncated). Throws
/// PreconditionError when the blocks do not partition the edges.
MultiEmbeddingVerdict check_multi_embedding(const SimpleGraph& g,
                                            const std::vector<std::vector<std::size_t>>& blocks,
                                            std::uint64_t guard = kDefaultRotationGuard);

}  // namespace combi::graph
