#pragma once

// Finite multi-groups: a shared universe of elements carrying several group
// operations, each defined on its own subset. A law is only tested on
// arguments for which every subexpression is defined.

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "combi/errors.hpp"

namespace combi::mgroup {

using Element = std::size_t;  // index into the universe

/// A partial binary operation on a universe of `universe_size` elements,
/// meant to be a group on `carrier`.
class Operation {
 public:
  Operation(std::size_t universe_size, std::vector<Element> carrier);

  /// Records a * b = c. Throws PreconditionError on ids outside the universe.
  void set(Element a, Element b, Element c);

  std::size_t universe_size() const noexcept { return n_; }
  const std::vector<Element>& carrier() const noexcept { return carrier_; }
  bool contains(Element x) const { return x < n_ && member_[x]; }
  std::optional<Element> get(Element a, Element b) const;
  /// Throws PreconditionError when a * b is undefined.
  Element operator()(Element a, Element b) const;

 private:
  static constexpr Element kUnset = static_cast<Element>(-1);
  std::size_t n_;
  std::vector<Element> carrier_;
  std::vector<bool> member_;
  std::vector<Element> table_;
};

struct MultiGroupCandidate {
  std::vector<std::string> universe;
  std::vector<Operation> parts;
};

struct LawViolation {
  enum class Kind {
    EmptyCarrier,
    MissingEntry,     // a * b undefined for a, b in the carrier
    NotClosed,        // a * b outside the carrier
    NotAssociative,   // (a b) c != a (b c)
    NoIdentity,
    NoInverse,        // triple[0] has no inverse
    Distribution,     // neither part distributes over the other
  };
  Kind kind;
  std::size_t part = 0;
  std::optional<std::size_t> other_part;  // Distribution
  std::array<Element, 3> triple{0, 0, 0};
};

struct MultiGroupReport {
  bool ok = true;
  std::optional<LawViolation> violation;
  std::string message;
};

/// Group axioms of every part, then the partial distribution law for every
/// pair of distinct parts: for each pair one of the two operations must
/// distribute (left and right) over the other.
MultiGroupReport check_multigroup(const MultiGroupCandidate& c);
inline bool is_multigroup(const MultiGroupCandidate& c) { return check_multigroup(c).ok; }

/// A union of groups on subsets of one universe. Construction checks the
/// group axioms of every part; the distribution law is reported separately by
/// check_multigroup.
class MultiGroup {
 public:
  /// Throws ValidationError when some part is not a group.
  static MultiGroup create(MultiGroupCandidate c);

  const MultiGroupCandidate& candidate() const noexcept { return c_; }
  std::size_t universe_size() const noexcept { return c_.universe.size(); }
  const std::string& name(Element x) const { return c_.universe.at(x); }
  std::optional<Element> find(const std::string& name) const;
  std::size_t part_count() const noexcept { return c_.parts.size(); }
  const Operation& part(std::size_t i) const { return c_.parts.at(i); }
  Element identity(std::size_t i) const { return identity_.at(i); }
  Element inverse(std::size_t i, Element x) const;

 private:
  explicit MultiGroup(MultiGroupCandidate c) : c_(std::move(c)) {}
  MultiGroupCandidate c_;
  std::vector<Element> identity_;
  std::vector<std::vector<Element>> inverse_;
};

/// n parts on {0..n-1}; part i is the cyclic group carried over by the i-th
/// power of the cycle (0 1 ... n-1), i.e. x *_i y = x + y - i (mod n).
MultiGroupCandidate cyclic_construction(std::size_t n);
MultiGroup build_cyclic_multigroup(std::size_t n);

/// One-part multi-groups used as baselines.
MultiGroup cyclic_group(std::size_t n);
/// S3 as permutations of {0,1,2}, elements named by one-line notation.
MultiGroup symmetric_group_3();

/// A subset of the universe with a subset of the operations. The carrier of
/// operation i in the sub-structure is elements ∩ G_i.
struct SubMultiGroup {
  std::vector<std::size_t> operations;  // sorted, distinct
  std::vector<Element> elements;        // sorted, distinct
  friend bool operator==(const SubMultiGroup&, const SubMultiGroup&) = default;
  friend auto operator<=>(const SubMultiGroup&, const SubMultiGroup&) = default;
};

/// The whole multi-group as a sub-structure of itself.
SubMultiGroup whole(const MultiGroup& g);

/// Throws ValidationError unless `h` has at least one operation, every
/// element lies in some retained part and each retained part restricted to
/// the elements is a subgroup.
void validate_sub(const MultiGroup& g, const SubMultiGroup& h);

/// x h: union over the retained parts i containing x of { x *_i k : k in H ∩ G_i }.
std::vector<Element> coset(const MultiGroup& g, const SubMultiGroup& h, Element x);

struct LagrangeDecomposition {
  std::vector<Element> representatives;
  std::vector<std::vector<Element>> cosets;  // sorted, parallel to representatives
  bool greedy = true;  // false when the exact-cover search was needed
};

class NoDisjointCover : public Error {
 public:
  NoDisjointCover(Element uncovered, const std::string& msg) : Error(msg), uncovered_(uncovered) {}
  Element uncovered() const noexcept { return uncovered_; }

 private:
  Element uncovered_;
};

/// Representatives whose cosets partition the universe. Greedy in element
/// order, falling back to exhaustive exact cover. The partition is always
/// re-certified before returning. Throws NoDisjointCover when none exists.
LagrangeDecomposition lagrange_decomposition(const MultiGroup& g, const SubMultiGroup& h);

/// For every retained part i, every g in G_i and h in H ∩ G_i: g h g^-1 in H.
bool is_normal(const SubMultiGroup& h, const MultiGroup& g);

inline constexpr std::size_t kDefaultSeriesSizeGuard = 12;
inline constexpr std::size_t kDefaultSeriesNodeGuard = 200'000;

/// Lengths of all maximal chains G = H0 > H1 > ... > Hk in which each H(j+1)
/// is a normal sub-multi-group of Hj that admits no normal refinement, and Hk
/// has no proper normal sub-multi-group. Throws LimitExceeded above the
/// guards.
std::set<std::size_t> maximal_normal_series_lengths(
    const MultiGroup& g, std::size_t size_guard = kDefaultSeriesSizeGuard,
    std::size_t node_guard = kDefaultSeriesNodeGuard);

}  // namespace combi::mgroup
