#pragma once

// Combinatorial maps in the permutation formalism.
//
// Every edge carries a quadricell of four flags {x, ax, bx, abx} on which the
// Klein group K = {1, alpha, beta, alpha*beta} acts. Flags are encoded as
// 4 * edge + sort with sorts ordered (1, alpha, beta, alpha*beta), so alpha is
// `x ^ 1`, beta is `x ^ 2` and alpha*beta is `x ^ 3`. A map is a permutation P
// of the flags that is basic (no P^k x = alpha x), satisfies
// alpha P = P^-1 alpha, and generates with alpha and beta a transitive group.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "combi/errors.hpp"
#include "combi/surface_word.hpp"

namespace combi::cmap {

using Flag = std::uint32_t;

enum class Sort : std::uint8_t { One = 0, Alpha = 1, Beta = 2, AlphaBeta = 3 };

constexpr Flag make_flag(std::size_t edge, Sort s) {
  return static_cast<Flag>(4 * edge + static_cast<std::uint8_t>(s));
}
constexpr std::size_t edge_of(Flag x) { return x / 4; }
constexpr Sort sort_of(Flag x) { return static_cast<Sort>(x % 4); }
constexpr Flag alpha(Flag x) { return x ^ 1u; }
constexpr Flag beta(Flag x) { return x ^ 2u; }
constexpr Flag alpha_beta(Flag x) { return x ^ 3u; }

struct MapViolation {
  enum class Kind { NotAPermutation, NotBasic, ConditionI, NotTransitive };
  Kind kind;
  Flag flag = 0;                // offending flag (NotBasic, ConditionI)
  std::size_t orbit_count = 0;  // NotTransitive
};

std::string describe(const MapViolation& v, const std::vector<std::string>& edge_names);

class InvalidMap : public ValidationError {
 public:
  InvalidMap(const MapViolation& v, const std::string& msg) : ValidationError(msg), violation_(v) {}
  const MapViolation& violation() const noexcept { return violation_; }

 private:
  MapViolation violation_;
};

/// First violated axiom, or nullopt for a valid map. `perm[x]` is P(x).
std::optional<MapViolation> find_violation(std::size_t edge_count, const std::vector<Flag>& perm);

class CombMap {
 public:
  /// Throws InvalidMap on any axiom violation.
  CombMap(std::vector<std::string> edge_names, std::vector<Flag> perm);

  /// Builds P from disjoint cycles covering all 4n flags (fixed points as
  /// singleton cycles). Throws PreconditionError on overlap or missing flags.
  static CombMap from_cycles(std::vector<std::string> edge_names,
                             const std::vector<std::vector<Flag>>& cycles);

  std::size_t edge_count() const noexcept { return names_.size(); }
  std::size_t flag_count() const noexcept { return perm_.size(); }
  const std::vector<std::string>& edge_names() const noexcept { return names_; }
  const std::vector<Flag>& permutation() const noexcept { return perm_; }

  Flag next(Flag x) const { return perm_.at(x); }
  Flag prev(Flag x) const { return inv_.at(x); }

  /// `x`, `a.x`, `b.x` or `ab.x`.
  std::string flag_name(Flag x) const;
  /// Inverse of flag_name; nullopt for unknown names.
  std::optional<Flag> parse_flag(const std::string& token) const;

  /// Cycles of P, each starting at its least flag, ordered by that flag.
  std::vector<std::vector<Flag>> cycles() const;

  friend bool operator==(const CombMap& a, const CombMap& b) {
    return a.names_ == b.names_ && a.perm_ == b.perm_;
  }

 private:
  std::vector<std::string> names_;
  std::vector<Flag> perm_;
  std::vector<Flag> inv_;
};

/// A vertex: the P-orbit through `key` and its alpha-image orbit.
struct Vertex {
  Flag key;                  // least flag of the pair
  std::vector<Flag> orbit;   // P-orbit starting at key
  std::vector<Flag> mirror;  // P-orbit starting at alpha(key)
};

struct Edge {
  std::size_t index;
  std::array<Flag, 4> flags;
};

/// A face: a pair of P*alpha*beta orbits exchanged by beta, in the original
/// flag encoding.
struct Face {
  Flag key;                   // least flag of the pair
  std::vector<Flag> boundary; // P*alpha*beta orbit starting at key
  std::size_t length() const noexcept { return boundary.size(); }
};

struct MapCensus {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t faces = 0;
  int euler = 0;
  bool orientable = true;
  int genus = 0;  // crosscap number when non-orientable
  friend bool operator==(const MapCensus&, const MapCensus&) = default;
};

std::vector<Vertex> vertices(const CombMap& m);
std::vector<Edge> edges(const CombMap& m);

/// (X_{beta,alpha}, P alpha beta) re-encoded with alpha and beta swapped, so
/// that dual(dual(m)) == m.
CombMap dual(const CombMap& m);

/// Sort swap alpha <-> beta used by dual(); an involution.
constexpr Flag swap_alpha_beta(Flag x) {
  const Flag s = x & 3u;
  return (x & ~3u) | (s == 1u ? 2u : s == 2u ? 1u : s);
}

std::vector<Face> faces(const CombMap& m);

std::size_t valency(const CombMap& m, const Vertex& v);

/// Number of orbits of <alpha*beta, P> on the flags (1 or 2 on valid maps).
std::size_t orientation_orbit_count(const CombMap& m);

bool orientable(const CombMap& m);

MapCensus census(const CombMap& m);

/// One-face map glued from the polygon of `w`: one edge per symbol.
CombMap word_to_map(const word::SurfaceWord& w);

/// Reads a face boundary back as a polygon word. Only meaningful when every
/// edge of the face occurs twice on it (one-face maps); throws
/// PreconditionError otherwise.
word::SurfaceWord face_word(const CombMap& m, const Face& f);

}  // namespace combi::cmap
