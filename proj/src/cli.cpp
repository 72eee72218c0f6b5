#include "combi/cli.hpp"

#include <algorithm>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "combi/comb_map.hpp"
#include "combi/errors.hpp"
#include "combi/graph_embedding.hpp"
#include "combi/io.hpp"
#include "combi/map_geometry.hpp"
#include "combi/multi_group.hpp"
#include "combi/multi_metric.hpp"
#include "combi/splane.hpp"
#include "combi/surface_word.hpp"

namespace combi::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string plain_scalar(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream os;
    os.precision(17);
    os << v.get<double>();
    return os.str();
  }
  return v.dump();
}

// Plain layout: scalars as key=value, scalar arrays comma-joined, and arrays
// of objects as one line per element, the first field standing in for the
// key's value and the rest appended as field=value.
void emit_plain(const Json& report, std::ostream& out) {
  for (const auto& [key, v] : report.items()) {
    if (!v.is_array()) {
      out << key << '=' << plain_scalar(v) << '\n';
    } else if (!v.empty() && v.front().is_object()) {
      for (const auto& obj : v) {
        bool first = true;
        for (const auto& [k, fv] : obj.items()) {
          if (first) out << key << '=' << (fv.is_array() ? fv.dump() : plain_scalar(fv));
          else {
            out << ' ' << k << '=';
            if (fv.is_array()) {
              for (std::size_t i = 0; i < fv.size(); ++i) out << (i ? "," : "") << plain_scalar(fv[i]);
            } else {
              out << plain_scalar(fv);
            }
          }
          first = false;
        }
        out << '\n';
      }
    } else {
      out << key << '=';
      for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << plain_scalar(v[i]);
      out << '\n';
    }
  }
}

struct Context {
  bool json = false;
  bool verbose = false;
  std::ostream& out;
  std::ostream& err;

  void emit(const Json& report) const {
    if (json) out << report.dump(2) << '\n';
    else emit_plain(report, out);
  }
  void trace(const std::string& line) const {
    if (verbose) err << line << '\n';
  }
};

std::string load(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  return io::read_file(path);
}

std::string form_kind(const word::StandardForm& f) {
  switch (f.kind) {
    case word::StandardForm::Kind::Sphere: return "sphere";
    case word::StandardForm::Kind::Orientable: return "orientable";
    case word::StandardForm::Kind::NonOrientable: return "nonorientable";
  }
  return "?";
}

word::SurfaceWord word_input(const std::string& path, const std::string& literal) {
  if (!literal.empty() && !path.empty()) throw UsageError("give either a file or --word, not both");
  if (literal.empty() && path.empty()) throw UsageError("a word file or --word is required");
  return word::parse_word(literal.empty() ? load(path) : literal);
}

void word_classify(const Context& cx, const word::SurfaceWord& w) {
  const auto f = word::classify(w);
  Json j;
  j["form"] = form_kind(f);
  j["chi"] = word::corner_trace_euler(w);
  j["orientable"] = word::is_orientable_word(w);
  j["genus"] = f.genus;
  cx.emit(j);
}

void word_normalize(const Context& cx, const word::SurfaceWord& w, std::size_t limit) {
  const auto n = word::normalize_with_trace(w, limit);
  Json j;
  j["form"] = form_kind(n.form);
  j["genus"] = n.form.genus;
  j["complete"] = n.complete;
  j["steps"] = n.trace.size();
  j["standard"] = word::standard_word(n.form).to_string();
  Json steps = Json::array();
  auto cur = w;
  cx.trace("start " + cur.to_string());
  for (const auto& m : n.trace) {
    Json s;
    s["move"] = std::string(word::to_string(m.move));
    s["direction"] = std::string(word::to_string(m.direction));
    s["start"] = m.start;
    s["segments"] = m.segments;
    steps.push_back(std::move(s));
    if (cx.verbose) {
      cur = word::apply_move(cur, m);
      cx.trace(m.to_string() + " -> " + cur.to_string());
    }
  }
  j["step"] = std::move(steps);
  if (!n.complete) cx.trace("step limit reached; form taken from the invariants");
  cx.emit(j);
}

void map_analyze(const Context& cx, const cmap::CombMap& m) {
  const auto c = cmap::census(m);
  std::vector<std::size_t> lengths;
  for (const auto& f : cmap::faces(m)) lengths.push_back(f.length());
  std::sort(lengths.begin(), lengths.end());
  std::vector<std::size_t> valencies;
  for (const auto& v : cmap::vertices(m)) valencies.push_back(cmap::valency(m, v));
  Json j;
  j["nu"] = c.vertices;
  j["eps"] = c.edges;
  j["phi"] = c.faces;
  j["chi"] = c.euler;
  j["orientable"] = c.orientable;
  j["genus"] = c.genus;
  j["face_lengths"] = lengths;
  j["valencies"] = valencies;
  for (const auto& v : cmap::vertices(m))
    cx.trace("vertex " + m.flag_name(v.key) + " valency " + std::to_string(cmap::valency(m, v)));
  cx.emit(j);
}

void map_dual(const Context& cx, const cmap::CombMap& m) {
  const auto d = cmap::dual(m);
  if (!cx.json) {
    cx.out << io::write_map(d);
    return;
  }
  Json j;
  j["edges"] = d.edge_names();
  Json cycles = Json::array();
  for (const auto& c : d.cycles()) {
    Json cyc = Json::array();
    for (auto x : c) cyc.push_back(d.flag_name(x));
    cycles.push_back(std::move(cyc));
  }
  j["cycles"] = std::move(cycles);
  cx.emit(j);
}

void graph_genus(const Context& cx, const graph::SimpleGraph& g, std::uint64_t guard) {
  const auto r = graph::genus_search(g, guard);
  Json j;
  j["genus"] = r.genus;
  j["rotation_systems"] = r.systems_total;
  j["examined"] = r.systems_examined;
  cx.emit(j);
}

void graph_multiembed(const Context& cx, const io::GraphInput& in, std::uint64_t guard) {
  auto blocks = in.blocks;
  if (blocks.empty()) {
    blocks.emplace_back();
    for (std::size_t e = 0; e < in.graph.edge_count(); ++e) blocks.back().push_back(e);
  }
  const auto v = graph::check_multi_embedding(in.graph, blocks, guard);
  Json j;
  j["blocks"] = blocks.size();
  j["embeddable"] = v.embeddable;
  if (!v.embeddable) {
    j["violation"] = v.violation;
    j["block"] = v.block;
    if (v.vertex) j["vertex"] = in.graph.name(*v.vertex);
    if (v.neighbor) j["neighbor"] = in.graph.name(*v.neighbor);
    cx.trace(v.message);
  }
  cx.emit(j);
}

geom::MapGeometry geometry_of(io::GeometryInput& in) {
  return geom::MapGeometry::create(in.map, in.mu);
}

void geom_classify(const Context& cx, io::GeometryInput in) {
  const auto g = geometry_of(in);
  Json rows = Json::array();
  for (const auto& v : g.vertices()) {
    const auto c = geom::classify_vertex(g, v.key);
    Json r;
    r["key"] = g.map().flag_name(v.key);
    r["kind"] = geom::to_string(c.kind);
    r["valency"] = cmap::valency(g.map(), v);
    r["mu"] = g.angle(v.key).to_string();
    r["near_euclidean"] = c.near_euclidean;
    rows.push_back(std::move(r));
  }
  if (!cx.json) {
    for (const auto& r : rows) {
      cx.out << r["key"].get<std::string>() << ' ' << r["kind"].get<std::string>() << '\n';
      if (r["near_euclidean"].get<bool>())
        cx.trace(r["key"].get<std::string>() + " is euclidean within tolerance");
    }
    return;
  }
  Json j;
  j["vertices"] = std::move(rows);
  const auto defect = geom::total_angle_defect(g);
  if (defect.exact) {
    const auto& r = defect.pi_fraction;
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
    j["angle_defect_pi"] = s;
  }
  j["angle_defect"] = defect.radians;
  cx.emit(j);
}

void geom_boundary(const Context& cx, io::GeometryInput in, const std::vector<std::string>& extra) {
  auto removed = in.removed;
  for (const auto& name : extra) {
    auto f = in.map.parse_flag(name);
    if (!f) throw UsageError("unknown face key '" + name + "'");
    removed.push_back(*f);
  }
  const auto g = geometry_of(in);
  const auto b = geom::with_boundary(g, removed);
  const auto faces = cmap::faces(g.map());
  Json j;
  j["bounded"] = true;
  Json names = Json::array();
  for (auto k : b.removed) names.push_back(g.map().flag_name(k));
  j["removed"] = std::move(names);
  j["faces_retained"] = faces.size() - b.removed.size();
  cx.emit(j);
}

void splane_query(const Context& cx, const io::SPlaneInput& in) {
  const geom::SPlane plane(in.marked[0], in.marked[1], in.marked[2]);
  Json rows = Json::array();
  for (const auto& q : in.queries) {
    Json r;
    if (q.kind == io::SPlaneQuery::Kind::Line) {
      r["kind"] = "line";
      r["count"] = plane.s_line_through(q.p, q.q);
    } else {
      r["kind"] = "parallel";
      r["count"] = plane.s_parallels_through(geom::Line(q.p, q.q), q.r);
    }
    r["source_line"] = q.line;
    rows.push_back(std::move(r));
  }
  Json j;
  j["query"] = std::move(rows);
  cx.emit(j);
}

mgroup::MultiGroupCandidate group_candidate(const std::string& path, std::size_t cyclic,
                                            std::optional<mgroup::SubMultiGroup>* sub) {
  if (cyclic > 0 && !path.empty()) throw UsageError("give either a file or --cyclic, not both");
  if (cyclic == 0 && path.empty()) throw UsageError("a multi-group file or --cyclic is required");
  if (cyclic > 0) return mgroup::cyclic_construction(cyclic);
  auto in = io::parse_multigroup(load(path));
  if (sub) *sub = in.sub;
  return std::move(in.candidate);
}

void mgroup_validate(const Context& cx, const mgroup::MultiGroupCandidate& c) {
  const auto r = mgroup::check_multigroup(c);
  Json j;
  j["multigroup"] = r.ok;
  j["parts"] = c.parts.size();
  j["universe"] = c.universe.size();
  if (!r.ok) j["violation"] = r.message;
  cx.emit(j);
}

mgroup::SubMultiGroup sub_from_options(const mgroup::MultiGroup& g, const std::vector<std::string>& ops,
                                       const std::vector<std::string>& elems) {
  mgroup::SubMultiGroup h;
  for (const auto& o : ops) {
    std::size_t i = 0;
    try {
      i = std::stoul(o);
    } catch (const std::exception&) {
      throw UsageError("--sub-operations expects part numbers, got '" + o + "'");
    }
    if (i == 0) throw UsageError("part numbers start at 1");
    h.operations.push_back(i - 1);
  }
  for (const auto& e : elems) {
    auto x = g.find(e);
    if (!x) throw UsageError("unknown element '" + e + "'");
    h.elements.push_back(*x);
  }
  std::sort(h.operations.begin(), h.operations.end());
  h.operations.erase(std::unique(h.operations.begin(), h.operations.end()), h.operations.end());
  std::sort(h.elements.begin(), h.elements.end());
  h.elements.erase(std::unique(h.elements.begin(), h.elements.end()), h.elements.end());
  return h;
}

void mgroup_lagrange(const Context& cx, const mgroup::MultiGroup& g, const mgroup::SubMultiGroup& h) {
  const auto d = mgroup::lagrange_decomposition(g, h);
  Json j;
  j["certified"] = true;
  j["greedy"] = d.greedy;
  Json reps = Json::array();
  for (auto x : d.representatives) reps.push_back(g.name(x));
  j["representatives"] = std::move(reps);
  Json cosets = Json::array();
  for (std::size_t k = 0; k < d.representatives.size(); ++k) {
    Json c;
    c["representative"] = g.name(d.representatives[k]);
    Json elems = Json::array();
    for (auto x : d.cosets[k]) elems.push_back(g.name(x));
    c["elements"] = std::move(elems);
    cosets.push_back(std::move(c));
  }
  j["coset"] = std::move(cosets);
  cx.emit(j);
}

void mgroup_series(const Context& cx, const mgroup::MultiGroup& g, std::size_t size_guard) {
  const auto lengths = mgroup::maximal_normal_series_lengths(g, size_guard);
  Json j;
  j["lengths"] = std::vector<std::size_t>(lengths.begin(), lengths.end());
  j["constant"] = lengths.size() == 1;
  cx.emit(j);
}

void metric_fixpoints(const Context& cx, const io::AffineInput& in, const metric::FixedPointOptions& opts) {
  const metric::MultiMetricSpace space(in.parts);
  const auto pts = metric::fixed_points(space, metric::affine_self_map(in.pieces), opts);
  Json j;
  j["parts"] = space.part_count();
  j["count"] = pts.size();
  j["within_bound"] = !pts.empty() && pts.size() <= space.part_count();
  Json rows = Json::array();
  for (const auto& p : pts) {
    Json r;
    r["x"] = p.x;
    r["part"] = p.part + 1;
    r["residual"] = p.residual;
    rows.push_back(std::move(r));
  }
  j["fixed_point"] = std::move(rows);
  cx.emit(j);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Surface words, combinatorial maps, map geometries and multi-spaces", "combi"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  bool json = false, plain = false, verbose = false;
  auto* json_flag = app.add_flag("--json", json, "Print one JSON object");
  auto* plain_flag = app.add_flag("--plain", plain, "Print key=value lines (default)");
  json_flag->excludes(plain_flag);
  app.add_flag("--verbose", verbose, "Trace to standard error");

  std::string input, literal;
  std::size_t step_limit = word::kDefaultStepLimit;
  std::uint64_t guard = graph::kDefaultRotationGuard;
  std::size_t cyclic = 0, size_guard = mgroup::kDefaultSeriesSizeGuard;
  std::vector<std::string> remove, sub_ops, sub_elems;
  metric::FixedPointOptions fp;

  auto with_input = [&](CLI::App* sub) { return sub->add_option("input", input, "Input file, - for stdin"); };
  auto* wc = app.add_subcommand("word-classify", "Classify a polygon word");
  auto* wn = app.add_subcommand("word-normalize", "Rewrite a word to its standard form");
  for (auto* s : {wc, wn}) {
    with_input(s);
    s->add_option("--word", literal, "The word itself instead of a file");
  }
  wn->add_option("--step-limit", step_limit, "Maximum number of moves")->check(CLI::PositiveNumber);
  auto* ma = app.add_subcommand("map-analyze", "Census of a combinatorial map");
  auto* md = app.add_subcommand("map-dual", "Dual of a combinatorial map");
  for (auto* s : {ma, md}) with_input(s)->required();
  auto* gg = app.add_subcommand("graph-genus", "Minimum orientable genus");
  auto* gp = app.add_subcommand("graph-planar", "Planarity by rotation systems");
  auto* gm = app.add_subcommand("graph-multiembed", "Nested sphere multi-embedding test");
  for (auto* s : {gg, gp, gm}) {
    s->add_option("input", input, "Graph file, - for stdin")->required();
    s->add_option("--guard", guard, "Maximum number of rotation systems");
  }
  auto* gc = app.add_subcommand("geom-classify", "Classify the vertices of a map geometry");
  auto* gb = app.add_subcommand("geom-boundary", "Remove faces from a map geometry");
  for (auto* s : {gc, gb}) s->add_option("input", input, "Geometry file, - for stdin")->required();
  gb->add_option("--remove", remove, "Face key to remove (repeatable)");
  auto* sq = app.add_subcommand("splane-query", "Answer s-line queries");
  sq->add_option("input", input, "Query file, - for stdin")->required();
  auto* mv = app.add_subcommand("mgroup-validate", "Check the multi-group axioms");
  auto* ml = app.add_subcommand("mgroup-lagrange", "Coset decomposition by a sub-multi-group");
  auto* ms = app.add_subcommand("mgroup-series", "Lengths of maximal normal series");
  for (auto* s : {mv, ml, ms}) {
    s->add_option("input", input, "Multi-group file, - for stdin");
    s->add_option("--cyclic", cyclic, "Use the cyclic construction on n elements")->check(CLI::PositiveNumber);
  }
  ml->add_option("--sub-operations", sub_ops, "Retained part numbers")->delimiter(',');
  ml->add_option("--sub-elements", sub_elems, "Elements of the sub-multi-group")->delimiter(',');
  ms->add_option("--size-guard", size_guard, "Largest universe searched");
  auto* mf = app.add_subcommand("metric-fixpoints", "Fixed points of a piecewise affine contraction");
  mf->add_option("input", input, "Affine map file, - for stdin")->required();
  mf->add_option("--seeds", fp.seeds_per_part, "Seeds per part")->check(CLI::PositiveNumber);
  mf->add_option("--tol", fp.tol, "Convergence tolerance")->check(CLI::PositiveNumber);

  std::vector<const char*> argv{"combi"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  }

  const Context cx{json, verbose, out, err};
  try {
    if (wc->parsed()) word_classify(cx, word_input(input, literal));
    else if (wn->parsed()) word_normalize(cx, word_input(input, literal), step_limit);
    else if (ma->parsed()) map_analyze(cx, io::parse_map(load(input)));
    else if (md->parsed()) map_dual(cx, io::parse_map(load(input)));
    else if (gg->parsed()) graph_genus(cx, io::parse_graph(load(input)).graph, guard);
    else if (gp->parsed()) {
      Json j;
      j["planar"] = graph::is_planar(io::parse_graph(load(input)).graph, guard);
      cx.emit(j);
    } else if (gm->parsed()) graph_multiembed(cx, io::parse_graph(load(input)), guard);
    else if (gc->parsed()) geom_classify(cx, io::parse_geometry(load(input)));
    else if (gb->parsed()) geom_boundary(cx, io::parse_geometry(load(input)), remove);
    else if (sq->parsed()) splane_query(cx, io::parse_splane(load(input)));
    else if (mv->parsed()) mgroup_validate(cx, group_candidate(input, cyclic, nullptr));
    else if (ml->parsed()) {
      std::optional<mgroup::SubMultiGroup> sub;
      const auto g = mgroup::MultiGroup::create(group_candidate(input, cyclic, &sub));
      if (!sub_ops.empty() || !sub_elems.empty()) sub = sub_from_options(g, sub_ops, sub_elems);
      if (!sub) throw UsageError("no sub-multi-group given; use sub-* lines or --sub-operations/--sub-elements");
      mgroup_lagrange(cx, g, *sub);
    } else if (ms->parsed()) {
      mgroup_series(cx, mgroup::MultiGroup::create(group_candidate(input, cyclic, nullptr)), size_guard);
    } else if (mf->parsed()) metric_fixpoints(cx, io::parse_affine(load(input)), fp);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const io::FileError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "format error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace combi::cli
