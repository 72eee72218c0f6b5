#pragma once

// Text formats read and written by the command-line tool. Every parser
// accepts blank lines and `#` comments and reports malformed input as a
// ParseError carrying the 1-based line and column.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "combi/comb_map.hpp"
#include "combi/graph_embedding.hpp"
#include "combi/map_geometry.hpp"
#include "combi/multi_group.hpp"
#include "combi/multi_metric.hpp"
#include "combi/splane.hpp"

namespace combi::io {

/// The file could not be opened or read.
class FileError : public Error {
 public:
  using Error::Error;
};

std::string read_file(const std::string& path);

/// `p`, `p/q`, or a finite decimal such as `-0.25`; exact.
geom::Rational parse_rational(std::string_view text);

/// Line 1 `edges: e1 ... en`, then P-cycles such as `(x y ab.z)`.
cmap::CombMap parse_map(std::string_view text);
/// `edges:` line and one cycle per line, cycles in CombMap::cycles() order.
std::string write_map(const cmap::CombMap& m);

struct GraphInput {
  graph::SimpleGraph graph;
  /// Empty unless the file has `block` lines; each `block` line starts a new
  /// block and the following `edge` lines belong to it.
  std::vector<std::vector<std::size_t>> blocks;
};

/// `vertex u` and `edge u v` lines, optionally grouped under `block` lines.
GraphInput parse_graph(std::string_view text);

struct GeometryInput {
  cmap::CombMap map;
  std::map<cmap::Flag, geom::Angle> mu;
  std::vector<cmap::Flag> removed;  // face keys from `remove` lines
};

/// A map file extended with `mu <vertex-key> <p/q> pi`, `mu <vertex-key>
/// <radians> [tol <t>]` and `remove <face-key>` lines.
GeometryInput parse_geometry(std::string_view text);

struct SPlaneQuery {
  enum class Kind { Line, Parallel };
  Kind kind = Kind::Line;
  geom::Point p, q;  // the two points (Line) or two points of L (Parallel)
  geom::Point r;     // the outside point (Parallel)
  std::size_t line = 0;
};

struct SPlaneInput {
  std::array<geom::Point, 3> marked;  // A, B, C
  std::vector<SPlaneQuery> queries;
};

/// `point A x y` for A, B and C, then `query line px py qx qy` and
/// `query parallel px py qx qy rx ry` lines.
SPlaneInput parse_splane(std::string_view text);

struct MultiGroupInput {
  mgroup::MultiGroupCandidate candidate;
  std::optional<mgroup::SubMultiGroup> sub;
};

/// `universe e1 e2 ...`; per part `part i carrier ...` followed by `row a b c`
/// lines meaning a *_i b = c; optionally `sub-operations i ...` and
/// `sub-elements e ...` describing a sub-multi-group.
MultiGroupInput parse_multigroup(std::string_view text);

struct AffineInput {
  std::vector<metric::MetricPart> parts;
  std::vector<metric::AffinePiece> pieces;
};

/// `part i: a*x+b on [lo,hi]` lines, optionally followed by `scale s`.
AffineInput parse_affine(std::string_view text);

}  // namespace combi::io
