#include "combi/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include "combi/errors.hpp"

namespace combi::io {

namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;  // 1-based
  std::string raw;     // without comment
  std::vector<Token> tokens;
};

// Splits into lines, strips `#` comments and drops blank lines. Characters in
// `singles` form tokens of their own.
std::vector<Line> split_lines(std::string_view text, std::string_view singles = "") {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    Line line{number, std::string(raw), {}};
    std::size_t i = 0;
    while (i < raw.size()) {
      const char c = raw[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (singles.find(c) != std::string_view::npos) {
        line.tokens.push_back({std::string(1, c), i + 1});
        ++i;
      } else {
        const std::size_t start = i;
        while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i])) &&
               singles.find(raw[i]) == std::string_view::npos)
          ++i;
        line.tokens.push_back({std::string(raw.substr(start, i - start)), start + 1});
      }
    }
    if (!line.tokens.empty()) out.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return out;
}

[[noreturn]] void fail(const std::string& msg, const Line& line, std::size_t column) {
  throw ParseError(msg, line.number, column);
}

[[noreturn]] void fail(const std::string& msg, const Line& line, const Token& t) {
  throw ParseError(msg, line.number, t.column);
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin() + 1, s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

void expect_count(const Line& line, std::size_t n, const std::string& usage) {
  if (line.tokens.size() < n) fail("too few fields, expected `" + usage + "`", line, line.raw.size() + 1);
  if (line.tokens.size() > n) fail("unexpected field, expected `" + usage + "`", line, line.tokens[n]);
}

std::optional<double> to_double(std::string_view s) {
  double v = 0;
  const char* first = s.data();
  if (!s.empty() && s.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
  return v;
}

double number(const Line& line, const Token& t) {
  auto v = to_double(t.text);
  if (!v) fail("expected a number, got '" + t.text + "'", line, t);
  return *v;
}

geom::Rational rational(const Line& line, const Token& t) {
  try {
    return parse_rational(t.text);
  } catch (const ParseError& e) {
    fail(e.what(), line, t);
  }
}

// Cycles of a map file, with the edge names read from the `edges:` line.
cmap::CombMap map_from_lines(const std::vector<Line>& lines) {
  if (lines.empty()) throw ParseError("empty map file", 1, 1);
  const Line& head = lines.front();
  if (head.tokens.front().text != "edges:") fail("expected `edges:`", head, head.tokens.front());
  std::vector<std::string> names;
  std::set<std::string> seen_names;
  for (std::size_t k = 1; k < head.tokens.size(); ++k) {
    const auto& t = head.tokens[k];
    if (!is_identifier(t.text)) fail("invalid edge name '" + t.text + "'", head, t);
    if (!seen_names.insert(t.text).second) fail("duplicate edge name '" + t.text + "'", head, t);
    names.push_back(t.text);
  }
  if (names.empty()) fail("no edges listed", head, head.raw.size() + 1);

  auto resolve = [&](const std::string& token) -> std::optional<cmap::Flag> {
    static const std::pair<const char*, cmap::Sort> prefixes[] = {
        {"ab.", cmap::Sort::AlphaBeta}, {"a.", cmap::Sort::Alpha}, {"b.", cmap::Sort::Beta}};
    cmap::Sort sort = cmap::Sort::One;
    std::string base = token;
    for (auto [p, s] : prefixes) {
      const std::string ps = p;
      if (token.rfind(ps, 0) == 0) {
        sort = s;
        base = token.substr(ps.size());
        break;
      }
    }
    auto it = std::find(names.begin(), names.end(), base);
    if (it == names.end()) return std::nullopt;
    return cmap::make_flag(static_cast<std::size_t>(it - names.begin()), sort);
  };

  std::vector<std::vector<cmap::Flag>> cycles;
  std::vector<bool> used(4 * names.size(), false);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    std::optional<std::vector<cmap::Flag>> open;
    for (const auto& t : line.tokens) {
      if (t.text == "(") {
        if (open) fail("nested '('", line, t);
        open.emplace();
      } else if (t.text == ")") {
        if (!open) fail("')' without '('", line, t);
        if (open->empty()) fail("empty cycle", line, t);
        cycles.push_back(std::move(*open));
        open.reset();
      } else if (t.text == ",") {
        if (!open) fail("',' outside a cycle", line, t);
      } else {
        if (!open) fail("flag outside a cycle", line, t);
        auto f = resolve(t.text);
        if (!f) fail("unknown flag '" + t.text + "'", line, t);
        if (used[*f]) fail("flag '" + t.text + "' occurs twice", line, t);
        used[*f] = true;
        open->push_back(*f);
      }
    }
    if (open) fail("missing ')'", line, line.raw.size() + 1);
  }
  auto missing = std::find(used.begin(), used.end(), false);
  if (missing != used.end()) {
    const auto f = static_cast<cmap::Flag>(missing - used.begin());
    static const char* prefix[] = {"", "a.", "b.", "ab."};
    throw ValidationError("flag '" + std::string(prefix[f % 4]) + names[cmap::edge_of(f)] +
                          "' is in no cycle; list fixed flags as singleton cycles");
  }
  return cmap::CombMap::from_cycles(std::move(names), cycles);
}

geom::Point point_at(const Line& line, std::size_t k) {
  return {rational(line, line.tokens[k]), rational(line, line.tokens[k + 1])};
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw FileError("cannot read '" + path + "'");
  return ss.str();
}

geom::Rational parse_rational(std::string_view text) {
  auto bad = [&]() -> ParseError { return ParseError("invalid rational '" + std::string(text) + "'"); };
  auto integer = [&](std::string_view s) {
    std::int64_t v = 0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) throw bad();
    return v;
  };
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    const auto den = integer(text.substr(slash + 1));
    if (den == 0) throw bad();
    return {integer(text.substr(0, slash)), den};
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string digits(text.substr(0, dot));
    const auto frac = text.substr(dot + 1);
    if (frac.empty() || frac.size() > 15 ||
        !std::all_of(frac.begin(), frac.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw bad();
    std::int64_t scale = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
    const bool negative = !digits.empty() && digits.front() == '-';
    const std::int64_t whole = digits.empty() || digits == "-" || digits == "+" ? 0 : integer(digits);
    const std::int64_t part = integer(frac);
    const std::int64_t magnitude = (whole < 0 ? -whole : whole) * scale + part;
    return {negative ? -magnitude : magnitude, scale};
  }
  return {integer(text), 1};
}

cmap::CombMap parse_map(std::string_view text) { return map_from_lines(split_lines(text, "(),")); }

std::string write_map(const cmap::CombMap& m) {
  std::string out = "edges:";
  for (const auto& n : m.edge_names()) out += " " + n;
  out += "\n";
  for (const auto& c : m.cycles()) {
    out += "(";
    for (std::size_t k = 0; k < c.size(); ++k) out += (k ? " " : "") + m.flag_name(c[k]);
    out += ")\n";
  }
  return out;
}

GraphInput parse_graph(std::string_view text) {
  GraphInput in;
  bool any_block = false;
  for (const auto& line : split_lines(text)) {
    const auto& kw = line.tokens.front();
    if (kw.text == "vertex") {
      expect_count(line, 2, "vertex <name>");
      if (in.graph.find_vertex(line.tokens[1].text)) fail("duplicate vertex '" + line.tokens[1].text + "'", line, line.tokens[1]);
      in.graph.add_vertex(line.tokens[1].text);
    } else if (kw.text == "edge") {
      expect_count(line, 3, "edge <u> <v>");
      auto u = in.graph.find_vertex(line.tokens[1].text);
      if (!u) fail("unknown vertex '" + line.tokens[1].text + "'", line, line.tokens[1]);
      auto v = in.graph.find_vertex(line.tokens[2].text);
      if (!v) fail("unknown vertex '" + line.tokens[2].text + "'", line, line.tokens[2]);
      const auto e = in.graph.add_edge(*u, *v);
      if (any_block) in.blocks.back().push_back(e);
      else if (!in.blocks.empty()) fail("edge outside a block", line, kw);
    } else if (kw.text == "block") {
      if (line.tokens.size() > 2) fail("unexpected field, expected `block [label]`", line, line.tokens[2]);
      if (!any_block && in.graph.edge_count() > 0) fail("edges listed before the first block", line, kw);
      any_block = true;
      in.blocks.emplace_back();
    } else {
      fail("unknown keyword '" + kw.text + "'", line, kw);
    }
  }
  return in;
}

GeometryInput parse_geometry(std::string_view text) {
  const auto all = split_lines(text, "(),");
  std::vector<Line> map_lines, extra;
  for (const auto& l : all)
    (l.tokens.front().text == "mu" || l.tokens.front().text == "remove" ? extra : map_lines).push_back(l);
  GeometryInput in{map_from_lines(map_lines), {}, {}};
  const auto& m = in.map;
  for (const auto& line : extra) {
    // Re-tokenize on whitespace only so that `p/q` survives intact.
    const auto& kw = line.tokens.front();
    auto relexed = split_lines(line.raw).front();
    relexed.number = line.number;
    const auto& ts = relexed.tokens;
    if (ts.size() < 2) fail("missing flag", line, line.raw.size() + 1);
    auto key = m.parse_flag(ts[1].text);
    if (!key) fail("unknown flag '" + ts[1].text + "'", line, ts[1]);
    if (kw.text == "remove") {
      expect_count(relexed, 2, "remove <face-key>");
      in.removed.push_back(*key);
      continue;
    }
    if (in.mu.count(*key)) fail("angle given twice for '" + ts[1].text + "'", line, ts[1]);
    if (ts.size() < 3) fail("missing angle", line, line.raw.size() + 1);
    if (ts.back().text == "pi" || ts[2].text == "pi") {
      geom::Rational r{1};
      if (ts[2].text != "pi") {
        expect_count(relexed, 4, "mu <vertex-key> <p/q> pi");
        r = rational(relexed, ts[2]);
      } else {
        expect_count(relexed, 3, "mu <vertex-key> pi");
      }
      try {
        in.mu.emplace(*key, geom::Angle::pi_times(r));
      } catch (const ValidationError& e) {
        fail(e.what(), line, ts[2]);
      }
    } else {
      double tol = geom::kDefaultAngleTolerance;
      if (ts.size() == 5 && ts[3].text == "tol") tol = number(relexed, ts[4]);
      else expect_count(relexed, 3, "mu <vertex-key> <radians> [tol <t>]");
      try {
        in.mu.emplace(*key, geom::Angle::radians(number(relexed, ts[2]), tol));
      } catch (const ValidationError& e) {
        fail(e.what(), line, ts[2]);
      }
    }
  }
  return in;
}

SPlaneInput parse_splane(std::string_view text) {
  SPlaneInput in;
  std::array<bool, 3> seen{false, false, false};
  for (const auto& line : split_lines(text)) {
    const auto& ts = line.tokens;
    if (ts[0].text == "point") {
      expect_count(line, 4, "point A|B|C <x> <y>");
      const auto& label = ts[1].text;
      if (label != "A" && label != "B" && label != "C") fail("point label must be A, B or C", line, ts[1]);
      const auto k = static_cast<std::size_t>(label[0] - 'A');
      if (seen[k]) fail("point " + label + " given twice", line, ts[1]);
      seen[k] = true;
      in.marked[k] = point_at(line, 2);
    } else if (ts[0].text == "query") {
      if (ts.size() < 2) fail("missing query kind", line, line.raw.size() + 1);
      SPlaneQuery q;
      q.line = line.number;
      if (ts[1].text == "line") {
        expect_count(line, 6, "query line <px> <py> <qx> <qy>");
        q.kind = SPlaneQuery::Kind::Line;
      } else if (ts[1].text == "parallel") {
        expect_count(line, 8, "query parallel <px> <py> <qx> <qy> <rx> <ry>");
        q.kind = SPlaneQuery::Kind::Parallel;
        q.r = point_at(line, 6);
      } else {
        fail("query kind must be `line` or `parallel`", line, ts[1]);
      }
      q.p = point_at(line, 2);
      q.q = point_at(line, 4);
      in.queries.push_back(q);
    } else {
      fail("unknown keyword '" + ts[0].text + "'", line, ts[0]);
    }
  }
  for (std::size_t k = 0; k < 3; ++k)
    if (!seen[k]) throw ParseError(std::string("point ") + static_cast<char>('A' + k) + " is missing");
  return in;
}

MultiGroupInput parse_multigroup(std::string_view text) {
  MultiGroupInput in;
  bool have_universe = false;
  std::optional<std::vector<std::size_t>> sub_ops;
  std::optional<std::vector<mgroup::Element>> sub_elems;
  auto element = [&](const Line& line, const Token& t) {
    const auto& u = in.candidate.universe;
    auto it = std::find(u.begin(), u.end(), t.text);
    if (it == u.end()) fail("unknown element '" + t.text + "'", line, t);
    return static_cast<mgroup::Element>(it - u.begin());
  };
  for (const auto& line : split_lines(text)) {
    const auto& ts = line.tokens;
    const auto& kw = ts[0].text;
    if (kw != "universe" && !have_universe) fail("`universe` must come first", line, ts[0]);
    if (kw == "universe") {
      if (have_universe) fail("`universe` given twice", line, ts[0]);
      if (ts.size() < 2) fail("empty universe", line, line.raw.size() + 1);
      std::set<std::string> seen;
      for (std::size_t k = 1; k < ts.size(); ++k) {
        if (!seen.insert(ts[k].text).second) fail("duplicate element '" + ts[k].text + "'", line, ts[k]);
        in.candidate.universe.push_back(ts[k].text);
      }
      have_universe = true;
    } else if (kw == "part") {
      if (ts.size() < 3 || ts[2].text != "carrier")
        fail("expected `part <i> carrier <elements...>`", line, ts.size() < 2 ? ts[0] : ts[1]);
      if (ts[1].text != std::to_string(in.candidate.parts.size() + 1))
        fail("parts must be numbered 1, 2, ... in order", line, ts[1]);
      std::vector<mgroup::Element> carrier;
      for (std::size_t k = 3; k < ts.size(); ++k) {
        auto x = element(line, ts[k]);
        if (std::find(carrier.begin(), carrier.end(), x) != carrier.end())
          fail("carrier lists '" + ts[k].text + "' twice", line, ts[k]);
        carrier.push_back(x);
      }
      in.candidate.parts.emplace_back(in.candidate.universe.size(), std::move(carrier));
    } else if (kw == "row") {
      if (in.candidate.parts.empty()) fail("`row` before any `part`", line, ts[0]);
      expect_count(line, 4, "row <a> <b> <c>");
      auto& op = in.candidate.parts.back();
      const auto a = element(line, ts[1]), b = element(line, ts[2]), c = element(line, ts[3]);
      if (op.get(a, b)) fail("row for this pair given twice", line, ts[1]);
      op.set(a, b, c);
    } else if (kw == "sub-operations") {
      if (sub_ops) fail("`sub-operations` given twice", line, ts[0]);
      sub_ops.emplace();
      for (std::size_t k = 1; k < ts.size(); ++k) {
        std::size_t i = 0;
        auto [ptr, ec] = std::from_chars(ts[k].text.data(), ts[k].text.data() + ts[k].text.size(), i);
        if (ec != std::errc() || ptr != ts[k].text.data() + ts[k].text.size() || i == 0)
          fail("expected a part number", line, ts[k]);
        sub_ops->push_back(i - 1);
      }
    } else if (kw == "sub-elements") {
      if (sub_elems) fail("`sub-elements` given twice", line, ts[0]);
      sub_elems.emplace();
      for (std::size_t k = 1; k < ts.size(); ++k) sub_elems->push_back(element(line, ts[k]));
    } else {
      fail("unknown keyword '" + kw + "'", line, ts[0]);
    }
  }
  if (!have_universe) throw ParseError("missing `universe` line");
  if (in.candidate.parts.empty()) throw ParseError("no parts given");
  if (sub_ops.has_value() != sub_elems.has_value())
    throw ParseError("`sub-operations` and `sub-elements` must be given together");
  if (sub_ops) {
    mgroup::SubMultiGroup h{*sub_ops, *sub_elems};
    std::sort(h.operations.begin(), h.operations.end());
    h.operations.erase(std::unique(h.operations.begin(), h.operations.end()), h.operations.end());
    std::sort(h.elements.begin(), h.elements.end());
    h.elements.erase(std::unique(h.elements.begin(), h.elements.end()), h.elements.end());
    in.sub = std::move(h);
  }
  return in;
}

namespace {

// a*x+b, x, -x, 0.5*x - 1, 3 ... : a sum of constant and x terms.
std::optional<metric::AffinePiece> parse_linear(std::string expr) {
  expr.erase(std::remove_if(expr.begin(), expr.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
             expr.end());
  if (expr.empty()) return std::nullopt;
  metric::AffinePiece out;
  std::size_t i = 0;
  while (i < expr.size()) {
    std::size_t j = i + 1;
    while (j < expr.size() && !((expr[j] == '+' || expr[j] == '-') && expr[j - 1] != 'e' && expr[j - 1] != 'E'))
      ++j;
    std::string term = expr.substr(i, j - i);
    i = j;
    if (!term.empty() && term.back() == 'x') {
      term.pop_back();
      if (!term.empty() && term.back() == '*') term.pop_back();
      if (term.empty() || term == "+") out.a += 1;
      else if (term == "-") out.a -= 1;
      else if (auto v = to_double(term)) out.a += *v;
      else return std::nullopt;
    } else if (auto v = to_double(term)) {
      out.b += *v;
    } else {
      return std::nullopt;
    }
  }
  return out;
}

}  // namespace

AffineInput parse_affine(std::string_view text) {
  static const std::regex re(
      R"(^\s*part\s+(\d+)\s*:\s*(.*?)\s+on\s+\[\s*([^,\]]*?)\s*,\s*([^\]]*?)\s*\](?:\s+scale\s+(\S+))?\s*$)");
  AffineInput in;
  for (const auto& line : split_lines(text)) {
    std::smatch mt;
    if (!std::regex_match(line.raw, mt, re))
      fail("expected `part <i>: a*x+b on [lo,hi]`", line, line.tokens.front());
    auto col = [&](int g) { return static_cast<std::size_t>(mt.position(g)) + 1; };
    if (mt[1].str() != std::to_string(in.parts.size() + 1))
      fail("parts must be numbered 1, 2, ... in order", line, col(1));
    auto piece = parse_linear(mt[2].str());
    if (!piece) fail("cannot read affine expression '" + mt[2].str() + "'", line, col(2));
    auto lo = to_double(mt[3].str());
    if (!lo) fail("expected a number", line, col(3));
    auto hi = to_double(mt[4].str());
    if (!hi) fail("expected a number", line, col(4));
    metric::MetricPart part{*lo, *hi, 1.0};
    if (mt[5].matched) {
      auto s = to_double(mt[5].str());
      if (!s) fail("expected a number", line, col(5));
      part.scale = *s;
    }
    in.parts.push_back(part);
    in.pieces.push_back(*piece);
  }
  if (in.parts.empty()) throw ParseError("no parts given");
  return in;
}

}  // namespace combi::io
