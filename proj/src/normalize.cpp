// Rewrite-based reduction of a polygon word to its standard surface word.
//
// Phases, each built only from O1-O3 applications:
//   1. cancel a a^-1 (O1), merge degree-two corners (O2 forward) and lower
//      the smallest corner class by one cut-and-paste (O3) until one corner
//      class is left;
//   2. make every twisted pair adjacent: (a B a R) -> (B a a R^-1);
//   3. turn each interleaved untwisted pair into a handle block a b a^-1 b^-1
//      with two O3i moves;
//   4. trade every crosscap+handle for three crosscaps with three O3ii moves.
// Blocks built in earlier phases are never cut by later moves, only moved or
// inverted as a whole.

#include <algorithm>
#include <optional>

#include "combi/errors.hpp"
#include "combi/surface_word.hpp"

namespace combi::word {

namespace {

class Rewriter {
 public:
  Rewriter(SurfaceWord w, std::size_t limit) : w_(std::move(w)), limit_(limit) {}

  // Returns false when the step limit is hit.
  bool apply(const MoveApplication& m) {
    if (trace_.size() >= limit_) return false;
    w_ = apply_move(w_, m);
    trace_.push_back(m);
    return true;
  }

  const SurfaceWord& word() const { return w_; }
  std::vector<MoveApplication>& trace() { return trace_; }

 private:
  SurfaceWord w_;
  std::size_t limit_;
  std::vector<MoveApplication> trace_;
};

std::size_t partner(const SurfaceWord& w, std::size_t i) {
  auto [p, q] = w.occurrences(w[i].symbol);
  return p == i ? q : p;
}

std::optional<MoveApplication> find_cancellation(const SurfaceWord& w) {
  if (w.size() <= 2) return std::nullopt;
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i].symbol == w[i + 1].symbol && w[i].exponent == -w[i + 1].exponent)
      return MoveApplication{Move::O1, Direction::Forward, i, {0, 0, 0}};
  return std::nullopt;
}

std::optional<MoveApplication> find_merge(const SurfaceWord& w) {
  const std::size_t len = w.size();
  if (len < 4) return std::nullopt;
  for (std::size_t s = 0; s < len; ++s) {
    const auto& x = w[s];
    const auto& y = w[s + 1];
    if (x.symbol == y.symbol) continue;
    const std::size_t qx = (partner(w, s) + len - s) % len;
    const std::size_t qy = (partner(w, (s + 1) % len) + len - s) % len;
    if (qy >= 2 && qx == qy + 1 && w[s + qy] == y.inverse() && w[s + qx] == x.inverse())
      return MoveApplication{Move::O2i, Direction::Forward, s, {qy - 2, 0, 0}};
    if (qx >= 2 && qy == qx + 1 && w[s + qx] == x && w[s + qy] == y)
      return MoveApplication{Move::O2ii, Direction::Forward, s, {qx - 2, 0, 0}};
  }
  return std::nullopt;
}

// Cut-and-paste that removes one corner from the smallest corner class P.
// Letter p ends at a P corner and letter p+1 leaves P; the triangle on those
// two sides is re-glued along the partner of letter p.
MoveApplication shrink_corner_class(const SurfaceWord& w) {
  const std::size_t len = w.size();
  const auto cls = corner_classes(w);
  const std::size_t nclasses = *std::max_element(cls.begin(), cls.end()) + 1;
  std::vector<std::size_t> degree(nclasses, 0);
  for (auto c : cls) ++degree[c];
  const auto target = static_cast<std::size_t>(
      std::min_element(degree.begin(), degree.end()) - degree.begin());
  for (std::size_t p = 0; p < len; ++p) {
    if (cls[(p + 1) % len] != target || cls[(p + 2) % len] == target) continue;
    if (w[p].symbol == w[p + 1].symbol) continue;
    const std::size_t j = (partner(w, p) + len - p) % len;
    const Move mv = w[p] == w[p + j] ? Move::O3ii : Move::O3i;
    return {mv, Direction::Forward, p, {0, 1, j - 2}};
  }
  throw InternalError("no corner-reducing cut found for " + w.to_string());
}

bool is_handle_at(const SurfaceWord& w, std::size_t i) {
  const auto& a = w[i];
  const auto& b = w[i + 1];
  return a.symbol != b.symbol && w[i + 2] == a.inverse() && w[i + 3] == b.inverse();
}

bool in_handle(const SurfaceWord& w, std::size_t pos) {
  const std::size_t len = w.size();
  if (len < 4) return false;
  for (std::size_t back = 0; back < 4; ++back)
    if (is_handle_at(w, (pos + len - back) % len)) return true;
  return false;
}

// Phase 2: (a B a R) -> (B a a R^-1).
std::optional<MoveApplication> find_crosscap_gather(const SurfaceWord& w) {
  const std::size_t len = w.size();
  for (std::size_t i = 0; i < len; ++i) {
    const std::size_t j = partner(w, i);
    if (j < i || w[i] != w[j]) continue;
    if (j - i == 1 || (i == 0 && j == len - 1)) continue;
    return MoveApplication{Move::O3ii, Direction::Forward, i, {0, j - i - 1, 0}};
  }
  return std::nullopt;
}

// Phase 3: (a B b C a^-1 D b^-1 E) -> (B E a b a^-1 b^-1 D C).
std::optional<std::array<MoveApplication, 2>> find_handle_formation(const SurfaceWord& w) {
  const std::size_t len = w.size();
  for (std::size_t i = 0; i < len; ++i) {
    if (w[i] == w[partner(w, i)] || in_handle(w, i)) continue;
    const std::size_t jj = (partner(w, i) + len - i) % len;
    for (std::size_t p = 1; p < jj; ++p) {
      const std::size_t q = (partner(w, (i + p) % len) + len - i) % len;
      if (q <= jj || w[i + q] != w[i + p].inverse()) continue;
      const std::size_t lb = p - 1, lc = jj - p - 1, ld = q - jj - 1, le = len - q - 1;
      return std::array<MoveApplication, 2>{
          MoveApplication{Move::O3i, Direction::Forward, i, {1 + lb, lc + 1, ld}},
          MoveApplication{Move::O3i, Direction::Forward, lc + 1, {1, lb + le, ld + lc + 1}}};
    }
    throw InternalError("untwisted pair without interleaved partner in " + w.to_string());
  }
  return std::nullopt;
}

// Phase 4: (x x a b a^-1 b^-1 R) -> three crosscaps followed by R^-1.
std::optional<std::array<MoveApplication, 3>> find_handle_conversion(const SurfaceWord& w) {
  const std::size_t len = w.size();
  if (len < 6) return std::nullopt;
  for (std::size_t i = 0; i < len; ++i) {
    if (w[i] != w[i + 1] || !is_handle_at(w, (i + 2) % len)) continue;
    const std::size_t rest = len - 6;
    return std::array<MoveApplication, 3>{
        MoveApplication{Move::O3ii, Direction::Forward, (i + 1) % len, {0, 2, 2 + rest}},
        MoveApplication{Move::O3ii, Direction::Forward, 1, {0, 1 + rest, 0}},
        MoveApplication{Move::O3ii, Direction::Forward, rest + 3, {0, 1, 0}}};
  }
  return std::nullopt;
}

}  // namespace

Normalization normalize_with_trace(const SurfaceWord& w, std::size_t step_limit) {
  const StandardForm form = classify(w);
  Rewriter rw(w, step_limit);
  const Normalization abandoned{form, {}, false};

  while (rw.word().size() > 2) {
    const auto& cur = rw.word();
    std::optional<MoveApplication> m = find_cancellation(cur);
    if (!m) m = find_merge(cur);
    if (!m && corner_class_count(cur) > 1) m = shrink_corner_class(cur);
    if (!m) break;
    if (!rw.apply(*m)) return abandoned;
  }
  if (rw.word().size() > 2) {
    while (auto m = find_crosscap_gather(rw.word()))
      if (!rw.apply(*m)) return abandoned;
    while (auto ms = find_handle_formation(rw.word()))
      for (const auto& m : *ms)
        if (!rw.apply(m)) return abandoned;
    while (auto ms = find_handle_conversion(rw.word()))
      for (const auto& m : *ms)
        if (!rw.apply(m)) return abandoned;
  }

  if (!rw.word().equivalent(standard_word(form)))
    throw InternalError("rewrite of " + w.to_string() + " ended at " + rw.word().to_string() +
                        ", expected " + form.to_string());
  return {form, std::move(rw.trace()), true};
}

}  // namespace combi::word
