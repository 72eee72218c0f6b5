#pragma once

// Polygon words of compact surfaces.
//
// A word lists the sides of a polygon in boundary order; every symbol labels
// two sides that are glued together. Words are cyclic: rotations describe the
// same surface. Letters store a symbol index into the word's name table, and
// symbols are always interned in first-appearance order of the stored
// sequence.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace combi::word {

struct SignedLetter {
  std::uint32_t symbol = 0;
  int exponent = 1;  // +1 or -1

  SignedLetter inverse() const { return {symbol, -exponent}; }
  friend bool operator==(const SignedLetter&, const SignedLetter&) = default;
};

/// Canonical encoding: least rotation after renaming symbols (and flipping
/// exponents so that each symbol first appears with +1).
using CanonicalWord = std::vector<std::pair<std::uint32_t, int>>;

class SurfaceWord {
 public:
  /// Validates and re-interns. `letters[i].symbol` indexes `names`; names that
  /// no letter references are dropped. Throws ValidationError.
  SurfaceWord(std::vector<std::string> names, std::vector<SignedLetter> letters);

  std::size_t size() const noexcept { return letters_.size(); }
  std::size_t symbol_count() const noexcept { return names_.size(); }
  const std::vector<SignedLetter>& letters() const noexcept { return letters_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const SignedLetter& operator[](std::size_t i) const { return letters_[i % letters_.size()]; }
  const std::string& name(std::uint32_t symbol) const { return names_.at(symbol); }

  /// Positions of the two occurrences of `symbol`, in increasing order.
  std::array<std::size_t, 2> occurrences(std::uint32_t symbol) const;

  /// Same-exponent pair ("twisted"); otherwise the symbol is untwisted.
  bool is_twisted(std::uint32_t symbol) const;

  /// Text form, e.g. "a b a- b-".
  std::string to_string() const;

  CanonicalWord canonical() const;

  /// Equality up to rotation and symbol renaming.
  bool equivalent(const SurfaceWord& other) const { return canonical() == other.canonical(); }

  /// Exact equality of names and letters (no rotation).
  friend bool operator==(const SurfaceWord&, const SurfaceWord&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<SignedLetter> letters_;
};

/// Parses whitespace-separated tokens: `x` is x, `x-` is x^-1.
SurfaceWord parse_word(std::string_view text);

struct StandardForm {
  enum class Kind { Sphere, Orientable, NonOrientable };
  Kind kind = Kind::Sphere;
  int genus = 0;  // handles when orientable, crosscaps when non-orientable

  static StandardForm sphere() { return {Kind::Sphere, 0}; }
  static StandardForm orientable(int g);
  static StandardForm non_orientable(int k);

  int euler_characteristic() const;
  std::string to_string() const;  // "sphere", "orientable genus 2", ...
  friend bool operator==(const StandardForm&, const StandardForm&) = default;
};

enum class Move { O1, O2i, O2ii, O3i, O3ii };
enum class Direction { Forward, Backward };

std::string_view to_string(Move m);
std::string_view to_string(Direction d);

/// A rewrite at a fixed place. The word is read cyclically from `start`;
/// `segments` gives the lengths of the named segments of the pattern, in the
/// order they appear in the reading:
///
///   O1   fwd  (a a^-1 R)           -> (R)                    segments unused
///   O1   bwd  (R)                  -> (c c^-1 R)             insert before start
///   O2i  fwd  (a b B b^-1 a^-1 A)  -> (c B c^-1 A)           segments[0] = |B|
///   O2i  bwd  (c B c^-1 A)         -> (a b B b^-1 a^-1 A)    segments[0] = |B|
///   O2ii fwd  (a b B a b A)        -> (c B c A)              segments[0] = |B|
///   O2ii bwd  (c B c A)            -> (a b B a b A)          segments[0] = |B|
///   O3i       (A a B C a^-1 D)     -> (B a A D a^-1 C)       |A|, |B|, |C|
///   O3ii      (A a B C a D)        -> (B a A C^-1 a D^-1)    |A|, |B|, |C|
///
/// Both O3 rules are their own inverses, so the backward direction matches the
/// same shape. Results are returned starting at the new reading's origin.
struct MoveApplication {
  Move move = Move::O1;
  Direction direction = Direction::Forward;
  std::size_t start = 0;
  std::array<std::size_t, 3> segments{0, 0, 0};

  std::string to_string() const;
  friend bool operator==(const MoveApplication&, const MoveApplication&) = default;
};

/// Throws PreconditionError when the pattern does not match.
SurfaceWord apply_move(const SurfaceWord& w, const MoveApplication& m);

/// True when apply_move would succeed.
bool matches(const SurfaceWord& w, const MoveApplication& m);

/// The backward application that undoes `m` on `apply_move(w, m)`.
MoveApplication inverse_move(const SurfaceWord& w, const MoveApplication& m);

/// Every application of every rule at every position. Backward O1 is listed
/// once per insertion point.
std::vector<MoveApplication> enumerate_moves(const SurfaceWord& w);

/// Euler characteristic of the one-face polygon: corner classes - symbols + 1.
int corner_trace_euler(const SurfaceWord& w);

/// Number of corner classes (vertices of the glued polygon).
std::size_t corner_class_count(const SurfaceWord& w);

/// Corner i sits before letter i. Returns the class id of every corner,
/// numbered in order of first appearance.
std::vector<std::size_t> corner_classes(const SurfaceWord& w);

bool is_orientable_word(const SurfaceWord& w);

StandardForm classify(const SurfaceWord& w);

SurfaceWord standard_word(const StandardForm& f);

/// Concatenation with w2's symbols renamed away from w1's.
SurfaceWord connected_sum(const SurfaceWord& w1, const SurfaceWord& w2);

inline constexpr std::size_t kDefaultStepLimit = 10'000;

struct Normalization {
  StandardForm form;
  std::vector<MoveApplication> trace;
  /// False when the step limit stopped the rewrite. `form` is still the
  /// invariant-based classification and `trace` is empty.
  bool complete = true;
};

/// Rewrites `w` into its standard word using O1-O3 only and records every
/// application. Replaying the trace from `w` ends at a word equivalent to
/// standard_word(form).
Normalization normalize_with_trace(const SurfaceWord& w,
                                   std::size_t step_limit = kDefaultStepLimit);

/// Applies `trace` to `w` in order.
SurfaceWord replay(const SurfaceWord& w, const std::vector<MoveApplication>& trace);

}  // namespace combi::word
