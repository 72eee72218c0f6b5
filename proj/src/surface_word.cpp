#include "combi/surface_word.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

#include <boost/pending/disjoint_sets.hpp>

#include "combi/errors.hpp"

namespace combi::word {

namespace {

bool is_valid_name(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

// A letter carrying its name; used while building rewritten words so that
// fresh symbols can be introduced without touching the source word.
struct NamedLetter {
  std::string name;
  int exponent;
};

using NamedWord = std::vector<NamedLetter>;

NamedWord reading(const SurfaceWord& w, std::size_t start) {
  NamedWord out;
  out.reserve(w.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    const auto& l = w[start + k];
    out.push_back({w.name(l.symbol), l.exponent});
  }
  return out;
}

NamedWord slice(const NamedWord& r, std::size_t from, std::size_t len) {
  return NamedWord(r.begin() + static_cast<std::ptrdiff_t>(from),
                   r.begin() + static_cast<std::ptrdiff_t>(from + len));
}

NamedWord inverted(NamedWord seg) {
  std::reverse(seg.begin(), seg.end());
  for (auto& l : seg) l.exponent = -l.exponent;
  return seg;
}

void append(NamedWord& out, const NamedWord& seg) { out.insert(out.end(), seg.begin(), seg.end()); }

SurfaceWord from_named(const NamedWord& letters) {
  std::vector<std::string> names;
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<SignedLetter> out;
  out.reserve(letters.size());
  for (const auto& l : letters) {
    auto [it, inserted] = index.try_emplace(l.name, static_cast<std::uint32_t>(names.size()));
    if (inserted) names.push_back(l.name);
    out.push_back({it->second, l.exponent});
  }
  return SurfaceWord(std::move(names), std::move(out));
}

std::string fresh_name(const std::set<std::string>& used, const std::string& preferred) {
  if (!used.count(preferred)) return preferred;
  for (std::size_t k = 1;; ++k) {
    auto candidate = preferred + std::to_string(k);
    if (!used.count(candidate)) return candidate;
  }
}

std::set<std::string> names_in(const NamedWord& w) {
  std::set<std::string> s;
  for (const auto& l : w) s.insert(l.name);
  return s;
}

bool same(const NamedLetter& x, const NamedLetter& y) {
  return x.name == y.name && x.exponent == y.exponent;
}
bool inverse_of(const NamedLetter& x, const NamedLetter& y) {
  return x.name == y.name && x.exponent == -y.exponent;
}

std::optional<SurfaceWord> try_apply(const SurfaceWord& w, const MoveApplication& m) {
  const std::size_t len = w.size();
  if (m.start >= len) return std::nullopt;
  const NamedWord r = reading(w, m.start);
  const auto [s0, s1, s2] = m.segments;
  const bool fwd = m.direction == Direction::Forward;

  switch (m.move) {
    case Move::O1: {
      if (fwd) {
        if (len <= 2 || !inverse_of(r[0], r[1])) return std::nullopt;
        return from_named(slice(r, 2, len - 2));
      }
      auto used = names_in(r);
      auto c = fresh_name(used, "c");
      NamedWord out{{c, 1}, {c, -1}};
      append(out, r);
      return from_named(out);
    }
    case Move::O2i:
    case Move::O2ii: {
      const bool twisted = m.move == Move::O2ii;
      if (fwd) {
        // (a b B b^-1 a^-1 A) or (a b B a b A)
        if (s0 + 4 > len) return std::nullopt;
        const auto& a = r[0];
        const auto& b = r[1];
        const auto& p = r[2 + s0];
        const auto& q = r[3 + s0];
        if (a.name == b.name) return std::nullopt;
        if (twisted ? !(same(p, a) && same(q, b)) : !(inverse_of(p, b) && inverse_of(q, a)))
          return std::nullopt;
        NamedWord rest = slice(r, 4 + s0, len - 4 - s0);
        NamedWord mid = slice(r, 2, s0);
        auto used = names_in(mid);
        for (const auto& l : rest) used.insert(l.name);
        auto c = fresh_name(used, "c");
        NamedWord out{{c, 1}};
        append(out, mid);
        out.push_back({c, twisted ? 1 : -1});
        append(out, rest);
        return from_named(out);
      }
      // (c B c^-1 A) or (c B c A)
      if (s0 + 2 > len) return std::nullopt;
      const auto& c = r[0];
      const auto& d = r[1 + s0];
      if (twisted ? !same(c, d) : !inverse_of(c, d)) return std::nullopt;
      NamedWord mid = slice(r, 1, s0);
      NamedWord rest = slice(r, 2 + s0, len - 2 - s0);
      auto used = names_in(mid);
      for (const auto& l : rest) used.insert(l.name);
      auto an = fresh_name(used, "a");
      used.insert(an);
      auto bn = fresh_name(used, "b");
      const int e = c.exponent;
      NamedWord out{{an, e}, {bn, e}};
      append(out, mid);
      if (twisted) {
        out.push_back({an, e});
        out.push_back({bn, e});
      } else {
        out.push_back({bn, -e});
        out.push_back({an, -e});
      }
      append(out, rest);
      return from_named(out);
    }
    case Move::O3i:
    case Move::O3ii: {
      if (s0 + s1 + s2 + 2 > len) return std::nullopt;
      const auto& a = r[s0];
      const auto& a2 = r[s0 + s1 + s2 + 1];
      const bool twisted = m.move == Move::O3ii;
      if (twisted ? !same(a, a2) : !inverse_of(a, a2)) return std::nullopt;
      NamedWord A = slice(r, 0, s0);
      NamedWord B = slice(r, s0 + 1, s1);
      NamedWord C = slice(r, s0 + 1 + s1, s2);
      NamedWord D = slice(r, s0 + s1 + s2 + 2, len - s0 - s1 - s2 - 2);
      NamedWord out;
      out.reserve(len);
      append(out, B);
      out.push_back(a);
      append(out, A);
      if (twisted) {
        append(out, inverted(C));
        out.push_back(a2);
        append(out, inverted(D));
      } else {
        append(out, D);
        out.push_back(a2);
        append(out, C);
      }
      return from_named(out);
    }
  }
  return std::nullopt;
}

}  // namespace

SurfaceWord::SurfaceWord(std::vector<std::string> names, std::vector<SignedLetter> letters) {
  if (letters.empty()) throw ValidationError("a surface word needs at least one symbol");
  std::vector<int> count(names.size(), 0);
  for (const auto& l : letters) {
    if (l.symbol >= names.size()) throw ValidationError("letter references an unknown symbol");
    if (l.exponent != 1 && l.exponent != -1) throw ValidationError("exponent must be +1 or -1");
    ++count[l.symbol];
  }
  std::vector<std::uint32_t> remap(names.size(), UINT32_MAX);
  std::set<std::string> seen_names;
  for (const auto& l : letters) {
    if (remap[l.symbol] != UINT32_MAX) continue;
    const auto& nm = names[l.symbol];
    if (!is_valid_name(nm)) throw ValidationError("invalid symbol name '" + nm + "'");
    if (count[l.symbol] != 2)
      throw ValidationError("symbol '" + nm + "' appears " + std::to_string(count[l.symbol]) +
                            " time(s); every symbol must appear exactly twice");
    if (!seen_names.insert(nm).second) throw ValidationError("duplicate symbol name '" + nm + "'");
    remap[l.symbol] = static_cast<std::uint32_t>(names_.size());
    names_.push_back(nm);
  }
  letters_.reserve(letters.size());
  for (const auto& l : letters) letters_.push_back({remap[l.symbol], l.exponent});
}

std::array<std::size_t, 2> SurfaceWord::occurrences(std::uint32_t symbol) const {
  std::array<std::size_t, 2> pos{0, 0};
  std::size_t k = 0;
  for (std::size_t i = 0; i < letters_.size() && k < 2; ++i)
    if (letters_[i].symbol == symbol) pos[k++] = i;
  if (k != 2) throw PreconditionError("symbol index out of range");
  return pos;
}

bool SurfaceWord::is_twisted(std::uint32_t symbol) const {
  auto [p, q] = occurrences(symbol);
  return letters_[p].exponent == letters_[q].exponent;
}

std::string SurfaceWord::to_string() const {
  std::string out;
  for (const auto& l : letters_) {
    if (!out.empty()) out += ' ';
    out += names_[l.symbol];
    if (l.exponent < 0) out += '-';
  }
  return out;
}

CanonicalWord SurfaceWord::canonical() const {
  const std::size_t len = letters_.size();
  CanonicalWord best;
  CanonicalWord cur(len);
  std::vector<std::pair<std::uint32_t, int>> rename(names_.size());
  for (std::size_t s = 0; s < len; ++s) {
    std::fill(rename.begin(), rename.end(), std::pair<std::uint32_t, int>{UINT32_MAX, 1});
    std::uint32_t next = 0;
    for (std::size_t k = 0; k < len; ++k) {
      const auto& l = letters_[(s + k) % len];
      auto& rn = rename[l.symbol];
      if (rn.first == UINT32_MAX) rn = {next++, l.exponent};
      cur[k] = {rn.first, l.exponent * rn.second};
    }
    if (best.empty() || cur < best) best = cur;
  }
  return best;
}

SurfaceWord parse_word(std::string_view text) {
  std::vector<std::string> names;
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<SignedLetter> letters;
  std::size_t i = 0;
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::string_view tok = text.substr(i, j - i);
    int exponent = 1;
    if (tok.size() > 1 && tok.back() == '-') {
      exponent = -1;
      tok.remove_suffix(1);
    }
    if (!is_valid_name(tok)) {
      const auto line_start = text.rfind('\n', i);
      const std::size_t line = 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + i, '\n'));
      const std::size_t column = line_start == std::string_view::npos ? i + 1 : i - line_start;
      throw ParseError("malformed token '" + std::string(text.substr(i, j - i)) + "'", line, column);
    }
    auto [it, inserted] = index.try_emplace(std::string(tok), static_cast<std::uint32_t>(names.size()));
    if (inserted) names.emplace_back(tok);
    letters.push_back({it->second, exponent});
    i = j;
  }
  if (letters.empty()) throw ParseError("empty word");
  return SurfaceWord(std::move(names), std::move(letters));
}

StandardForm StandardForm::orientable(int g) {
  if (g < 1) throw PreconditionError("orientable genus must be at least 1");
  return {Kind::Orientable, g};
}

StandardForm StandardForm::non_orientable(int k) {
  if (k < 1) throw PreconditionError("crosscap number must be at least 1");
  return {Kind::NonOrientable, k};
}

int StandardForm::euler_characteristic() const {
  switch (kind) {
    case Kind::Sphere: return 2;
    case Kind::Orientable: return 2 - 2 * genus;
    case Kind::NonOrientable: return 2 - genus;
  }
  return 2;
}

std::string StandardForm::to_string() const {
  switch (kind) {
    case Kind::Sphere: return "sphere";
    case Kind::Orientable: return "orientable genus " + std::to_string(genus);
    case Kind::NonOrientable: return "nonorientable genus " + std::to_string(genus);
  }
  return {};
}

std::string_view to_string(Move m) {
  switch (m) {
    case Move::O1: return "O1";
    case Move::O2i: return "O2i";
    case Move::O2ii: return "O2ii";
    case Move::O3i: return "O3i";
    case Move::O3ii: return "O3ii";
  }
  return "?";
}

std::string_view to_string(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

std::string MoveApplication::to_string() const {
  std::ostringstream os;
  os << word::to_string(move) << ' ' << word::to_string(direction) << " start=" << start;
  switch (move) {
    case Move::O1: break;
    case Move::O2i:
    case Move::O2ii: os << " B=" << segments[0]; break;
    case Move::O3i:
    case Move::O3ii:
      os << " A=" << segments[0] << " B=" << segments[1] << " C=" << segments[2];
      break;
  }
  return os.str();
}

SurfaceWord apply_move(const SurfaceWord& w, const MoveApplication& m) {
  auto r = try_apply(w, m);
  if (!r) {
    if (m.move == Move::O1 && m.direction == Direction::Forward && w.size() == 2)
      throw PreconditionError("O1 would empty the word " + w.to_string());
    throw PreconditionError("pattern mismatch: " + m.to_string() + " on " + w.to_string());
  }
  return *std::move(r);
}

bool matches(const SurfaceWord& w, const MoveApplication& m) { return try_apply(w, m).has_value(); }

MoveApplication inverse_move(const SurfaceWord& w, const MoveApplication& m) {
  if (!matches(w, m)) throw PreconditionError("pattern mismatch: " + m.to_string());
  const auto back = m.direction == Direction::Forward ? Direction::Backward : Direction::Forward;
  MoveApplication inv{m.move, back, 0, {0, 0, 0}};
  switch (m.move) {
    case Move::O1: break;
    case Move::O2i:
    case Move::O2ii: inv.segments[0] = m.segments[0]; break;
    case Move::O3i: {
      const auto d = w.size() - m.segments[0] - m.segments[1] - m.segments[2] - 2;
      inv.segments = {m.segments[1], m.segments[0], d};
      break;
    }
    case Move::O3ii: inv.segments = {m.segments[1], m.segments[0], m.segments[2]}; break;
  }
  return inv;
}

std::vector<MoveApplication> enumerate_moves(const SurfaceWord& w) {
  std::vector<MoveApplication> out;
  const std::size_t len = w.size();
  auto other = [&](std::size_t i) {
    auto [p, q] = w.occurrences(w[i].symbol);
    return p == i ? q : p;
  };
  for (std::size_t s = 0; s < len; ++s) {
    const auto& x = w[s];
    const auto& y = w[s + 1];
    if (len > 2 && x.symbol == y.symbol && x.exponent == -y.exponent)
      out.push_back({Move::O1, Direction::Forward, s, {0, 0, 0}});
    out.push_back({Move::O1, Direction::Backward, s, {0, 0, 0}});

    // forward O2: r0 r1 ... ; offsets measured in the reading from s
    if (len >= 4 && x.symbol != y.symbol) {
      const std::size_t qy = (other((s + 1) % len) + len - s) % len;  // b's partner
      const std::size_t qx = (other(s) + len - s) % len;              // a's partner
      if (qy >= 2 && qx == qy + 1 && w[s + qy] == y.inverse() && w[s + qx] == x.inverse())
        out.push_back({Move::O2i, Direction::Forward, s, {qy - 2, 0, 0}});
      if (qx >= 2 && qy == qx + 1 && w[s + qx] == x && w[s + qy] == y)
        out.push_back({Move::O2ii, Direction::Forward, s, {qx - 2, 0, 0}});
    }
    // backward O2 on either occurrence
    {
      const std::size_t q = (other(s) + len - s) % len;
      const Move mv = w[s] == w[s + q] ? Move::O2ii : Move::O2i;
      out.push_back({mv, Direction::Backward, s, {q - 1, 0, 0}});
    }
    // O3 (listed once; the backward direction has the same shape and result)
    for (std::size_t la = 0; la + 2 <= len; ++la) {
      const std::size_t q = (other((s + la) % len) + len - s) % len;
      if (q <= la) continue;
      const Move mv = w[s + la] == w[s + q] ? Move::O3ii : Move::O3i;
      for (std::size_t lb = 0; lb + la + 1 <= q; ++lb)
        out.push_back({mv, Direction::Forward, s, {la, lb, q - la - 1 - lb}});
    }
  }
  return out;
}

std::vector<std::size_t> corner_classes(const SurfaceWord& w) {
  const std::size_t len = w.size();
  std::vector<std::size_t> rank(len), parent(len);
  boost::disjoint_sets<std::size_t*, std::size_t*> dsu(rank.data(), parent.data());
  for (std::size_t i = 0; i < len; ++i) dsu.make_set(i);
  auto tail = [&](std::size_t i) { return w[i].exponent > 0 ? i : (i + 1) % len; };
  auto head = [&](std::size_t i) { return w[i].exponent > 0 ? (i + 1) % len : i; };
  for (std::uint32_t s = 0; s < w.symbol_count(); ++s) {
    auto [p, q] = w.occurrences(s);
    dsu.union_set(tail(p), tail(q));
    dsu.union_set(head(p), head(q));
  }
  std::vector<std::size_t> out(len);
  std::map<std::size_t, std::size_t> ids;
  for (std::size_t i = 0; i < len; ++i) {
    auto [it, _] = ids.try_emplace(dsu.find_set(i), ids.size());
    out[i] = it->second;
  }
  return out;
}

std::size_t corner_class_count(const SurfaceWord& w) {
  auto cls = corner_classes(w);
  return *std::max_element(cls.begin(), cls.end()) + 1;
}

int corner_trace_euler(const SurfaceWord& w) {
  return static_cast<int>(corner_class_count(w)) - static_cast<int>(w.symbol_count()) + 1;
}

bool is_orientable_word(const SurfaceWord& w) {
  for (std::uint32_t s = 0; s < w.symbol_count(); ++s)
    if (w.is_twisted(s)) return false;
  return true;
}

StandardForm classify(const SurfaceWord& w) {
  const int chi = corner_trace_euler(w);
  const bool orientable = is_orientable_word(w);
  if (chi > 2) throw InternalError("corner trace produced chi > 2 for " + w.to_string());
  if (chi == 2) {
    if (!orientable) throw InternalError("non-orientable word with chi = 2: " + w.to_string());
    return StandardForm::sphere();
  }
  if (orientable) {
    if (chi % 2 != 0) throw InternalError("orientable word with odd chi: " + w.to_string());
    return StandardForm::orientable((2 - chi) / 2);
  }
  return StandardForm::non_orientable(2 - chi);
}

SurfaceWord standard_word(const StandardForm& f) {
  std::vector<std::string> names;
  std::vector<SignedLetter> letters;
  switch (f.kind) {
    case StandardForm::Kind::Sphere:
      return SurfaceWord({"a"}, {{0, 1}, {0, -1}});
    case StandardForm::Kind::Orientable:
      if (f.genus < 1) throw PreconditionError("orientable genus must be at least 1");
      for (int i = 1; i <= f.genus; ++i) {
        const auto a = static_cast<std::uint32_t>(names.size());
        names.push_back("a" + std::to_string(i));
        names.push_back("b" + std::to_string(i));
        letters.insert(letters.end(), {{a, 1}, {a + 1, 1}, {a, -1}, {a + 1, -1}});
      }
      break;
    case StandardForm::Kind::NonOrientable:
      if (f.genus < 1) throw PreconditionError("crosscap number must be at least 1");
      for (int i = 1; i <= f.genus; ++i) {
        const auto a = static_cast<std::uint32_t>(names.size());
        names.push_back("a" + std::to_string(i));
        letters.insert(letters.end(), {{a, 1}, {a, 1}});
      }
      break;
  }
  return SurfaceWord(std::move(names), std::move(letters));
}

SurfaceWord connected_sum(const SurfaceWord& w1, const SurfaceWord& w2) {
  std::vector<std::string> names = w1.names();
  std::set<std::string> used(names.begin(), names.end());
  for (const auto& nm : w2.names()) used.insert(nm);
  std::vector<SignedLetter> letters = w1.letters();
  const auto offset = static_cast<std::uint32_t>(names.size());
  std::set<std::string> taken(w1.names().begin(), w1.names().end());
  for (const auto& nm : w2.names()) {
    std::string fresh = nm;
    if (taken.count(nm)) {
      fresh = fresh_name(used, nm + "_");
      used.insert(fresh);
    }
    taken.insert(fresh);
    names.push_back(fresh);
  }
  for (const auto& l : w2.letters()) letters.push_back({l.symbol + offset, l.exponent});
  return SurfaceWord(std::move(names), std::move(letters));
}

SurfaceWord replay(const SurfaceWord& w, const std::vector<MoveApplication>& trace) {
  SurfaceWord cur = w;
  for (const auto& m : trace) cur = apply_move(cur, m);
  return cur;
}

}  // namespace combi::word
