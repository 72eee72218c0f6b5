// Acceptance suite: one PASS/FAIL line per criterion. With arguments, runs
// only the listed criterion numbers. Exit status is 1 when any criterion run
// fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "combi/cli.hpp"
#include "combi/comb_map.hpp"
#include "combi/graph_embedding.hpp"
#include "combi/map_geometry.hpp"
#include "combi/multi_group.hpp"
#include "combi/multi_metric.hpp"
#include "combi/splane.hpp"
#include "combi/surface_word.hpp"
#include "oracles.hpp"

using namespace combi;

namespace {

// Pinned limits.
constexpr double kFixedPointClosedFormTol = 1e-9;
constexpr double kFixedPointResidualTol = 1e-12;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      detail += (pass ? "" : "; ") + what;
      pass = false;
    }
  }
};

struct Criterion {
  int number;
  std::string title;
  double seconds;  // time limit; 0 for none
  std::function<Outcome()> run;
};

using word::StandardForm;

Outcome torus_k4_census() {
  Outcome o;
  std::ostringstream out, err;
  const int code = cli::run({"map-analyze", std::string(COMBI_DATA_DIR) + "/k4_torus.map"}, out, err);
  o.require(code == 0, "exit code " + std::to_string(code) + ": " + err.str());
  const std::string expected =
      "nu=4\neps=6\nphi=2\nchi=0\norientable=true\ngenus=1\nface_lengths=4,8\nvalencies=3,3,3,3\n";
  o.require(out.str() == expected, "report was:\n" + out.str());
  return o;
}

Outcome classification() {
  Outcome o;
  o.require(word::classify(word::parse_word("a a-")) == StandardForm::sphere(), "a a- is not the sphere");
  for (int n = 1; n <= 8; ++n) {
    const auto p = StandardForm::orientable(n), q = StandardForm::non_orientable(n);
    o.require(word::classify(word::standard_word(p)) == p, "P" + std::to_string(n) + " misclassified");
    o.require(word::classify(word::standard_word(q)) == q, "Q" + std::to_string(n) + " misclassified");
  }
  return o;
}

Outcome move_soundness() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  for (int trial = 0; trial < 1000 && o.pass; ++trial) {
    auto w = oracle::random_word(rng, std::uniform_int_distribution<std::size_t>(1, 8)(rng));
    const auto start = w;
    const int chi = word::corner_trace_euler(w);
    const bool orient = word::is_orientable_word(w);
    for (int step = 0; step < 10; ++step) {
      const auto moves = word::enumerate_moves(w);
      const auto& m = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
      w = word::apply_move(w, m);
      o.require(word::corner_trace_euler(w) == chi && word::is_orientable_word(w) == orient,
                "invariant changed by " + m.to_string() + " on " + start.to_string());
    }
    for (const auto& v : {start, w}) {
      const auto n = word::normalize_with_trace(v);
      const auto target = word::standard_word(word::classify(v));
      o.require(n.complete && word::replay(v, n.trace).equivalent(target),
                "replay of " + v.to_string() + " misses " + target.to_string());
    }
  }
  return o;
}

Outcome dyck_sums() {
  Outcome o;
  const auto p1 = word::standard_word(StandardForm::orientable(1));
  const auto q1 = word::standard_word(StandardForm::non_orientable(1));
  o.require(word::classify(word::connected_sum(p1, q1)) == StandardForm::non_orientable(3), "P1 # Q1 is not Q3");
  o.require(word::classify(word::connected_sum(word::connected_sum(q1, q1), q1)) == StandardForm::non_orientable(3),
            "Q1 # Q1 # Q1 is not Q3");
  return o;
}

Outcome map_algebra() {
  Outcome o;
  std::mt19937_64 rng(kSeed);
  int accepted = 0;
  while (accepted < 100) {
    const auto edges = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    auto perm = oracle::random_candidate(rng, edges);
    if (cmap::find_violation(edges, perm)) continue;
    ++accepted;
    std::vector<std::string> names;
    for (std::size_t e = 0; e < edges; ++e) names.push_back("e" + std::to_string(e));
    const cmap::CombMap m(names, perm);
    const auto d = cmap::dual(m);
    const auto c = cmap::census(m);
    o.require(cmap::dual(d) == m, "dual is not an involution");
    o.require(cmap::census(d).euler == c.euler, "dual changes chi");
    std::size_t sum = 0;
    for (const auto& v : cmap::vertices(m)) sum += cmap::valency(m, v);
    o.require(sum == 2 * c.edges, "valency sum differs from 2 eps");
    const auto orbits = cmap::orientation_orbit_count(m);
    o.require(orbits == 1 || orbits == 2, "orientation orbit count " + std::to_string(orbits));
  }
  return o;
}

Outcome cross_module() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 1);
  for (int trial = 0; trial < 200; ++trial) {
    const auto w = oracle::random_word(rng, std::uniform_int_distribution<std::size_t>(1, 6)(rng));
    const auto c = cmap::census(cmap::word_to_map(w));
    o.require(c.euler == word::corner_trace_euler(w) && c.orientable == word::is_orientable_word(w),
              "census disagrees on " + w.to_string());
  }
  return o;
}

Outcome bouquets() {
  Outcome o;
  for (int n = 1; n <= 3; ++n) {
    const auto p = cmap::census(cmap::word_to_map(word::standard_word(StandardForm::orientable(n))));
    const auto q = cmap::census(cmap::word_to_map(word::standard_word(StandardForm::non_orientable(n))));
    o.require(p.vertices == 1 && p.faces == 1 && p.euler == 2 - 2 * n, "P" + std::to_string(n) + " is not a bouquet");
    o.require(q.vertices == 1 && q.faces == 1 && q.euler == 2 - n, "Q" + std::to_string(n) + " is not a bouquet");
  }
  return o;
}

Outcome genus_search() {
  Outcome o;
  using graph::SimpleGraph;
  o.require(graph::min_orientable_genus(SimpleGraph::complete(4)) == 0, "K4 genus");
  o.require(graph::min_orientable_genus(SimpleGraph::complete(5)) == 1, "K5 genus");
  o.require(graph::min_orientable_genus(SimpleGraph::complete_bipartite(3, 3)) == 1, "K3,3 genus");
  return o;
}

Outcome multi_embedding() {
  Outcome o;
  using graph::SimpleGraph;
  auto all_edges = [](const SimpleGraph& g) {
    std::vector<std::size_t> ids(g.edge_count());
    std::iota(ids.begin(), ids.end(), 0);
    return ids;
  };
  const auto k4 = SimpleGraph::complete(4);
  o.require(graph::check_multi_embedding(k4, {all_edges(k4)}).embeddable, "K4 single block");
  const auto k5 = SimpleGraph::complete(5);
  const auto v5 = graph::check_multi_embedding(k5, {all_edges(k5)});
  o.require(!v5.embeddable && v5.violation == "(i)", "K5 single block: " + v5.violation);

  SimpleGraph t;
  for (auto [a, b] : {std::pair{"1", "2"}, {"2", "3"}, {"3", "1"}, {"3", "4"}, {"4", "5"}, {"5", "3"},
                      {"5", "6"}, {"6", "7"}, {"7", "5"}, {"1", "7"}})
    t.add_edge(a, b);
  const auto far = graph::check_multi_embedding(t, {{0, 1, 2, 9}, {3, 4, 5}, {6, 7, 8}});
  o.require(!far.embeddable && far.violation == "(ii)", "far neighbor: " + far.violation);
  return o;
}

Outcome map_geometry() {
  Outcome o;
  using geom::Angle;
  using geom::Rational;
  auto uniform = [](const cmap::CombMap& m, Angle a) {
    std::map<cmap::Flag, Angle> mu;
    for (const auto& v : cmap::vertices(m)) mu.emplace(v.key, a);
    return mu;
  };
  std::vector<std::vector<std::size_t>> rot(6);
  const auto k6 = graph::SimpleGraph::complete(6);
  for (std::size_t e = 0; e < k6.edge_count(); ++e) {
    rot[k6.edge(e).first].push_back(2 * e);
    rot[k6.edge(e).second].push_back(2 * e + 1);
  }
  const std::vector<std::pair<cmap::CombMap, geom::VertexKind>> cases{
      {oracle::k4_torus(), geom::VertexKind::Elliptic},
      {cmap::word_to_map(word::parse_word("a b a- b-")), geom::VertexKind::Euclidean},
      {graph::embedding_map(k6, rot), geom::VertexKind::Hyperbolic}};
  for (std::size_t rho = 3; rho <= 5; ++rho) {
    const auto& [m, kind] = cases[rho - 3];
    const auto g = geom::MapGeometry::create(m, uniform(m, Angle::pi_times(Rational(1, 2))));
    const auto key = g.vertices().front().key;
    o.require(g.valency(key) == rho, "valency setup");
    o.require(geom::classify_vertex(g, key).kind == kind, "rho=" + std::to_string(rho) + " misclassified");
    bool rejected = false;
    try {
      geom::MapGeometry::create(m, uniform(m, Angle::pi_times(Rational(4, static_cast<std::int64_t>(rho)))));
    } catch (const ValidationError&) {
      rejected = true;
    }
    o.require(rejected, "mu = 4pi/" + std::to_string(rho) + " accepted");
  }
  const auto m = oracle::k4_torus();
  const auto g = geom::MapGeometry::create(m, uniform(m, Angle::pi_times(Rational(2, 3))));
  std::vector<cmap::Flag> every;
  for (const auto& f : cmap::faces(m)) every.push_back(f.key);
  bool rejected = false;
  try {
    geom::with_boundary(g, every);
  } catch (const ValidationError&) {
    rejected = true;
  }
  o.require(rejected, "l = phi accepted");
  return o;
}

Outcome splane() {
  Outcome o;
  using geom::Point;
  using geom::Rational;
  auto pt = [](Rational x, Rational y) { return Point{x, y}; };
  const geom::SPlane plane(pt(0, 0), pt(1, 0), pt(0, 1));
  const geom::Line l(pt(0, 1), pt(1, 1));  // through C, parallel to AB
  const int off_ab = plane.s_parallels_through(l, pt(3, 5));
  const int on_ab = plane.s_parallels_through(l, pt(Rational(1, 2), 0));
  const int one = plane.s_line_through(pt(-1, -1), pt(2, 2));
  const int none = plane.s_line_through(pt(Rational(1, 4), 0), pt(Rational(3, 4), 0));
  o.require(off_ab == 1, "parallel to L through (3,5), off AB: expected 1, got " + std::to_string(off_ab) +
                             " (the parallel is y = 5 and meets none of A, B, C)");
  o.require(on_ab == 0, "parallel to L through (1/2,0): expected 0, got " + std::to_string(on_ab));
  o.require(one == 1, "line through A only: expected 1, got " + std::to_string(one));
  o.require(none == 0, "line AB: expected 0, got " + std::to_string(none));
  return o;
}

Outcome multi_groups() {
  Outcome o;
  std::string failing;
  for (std::size_t n = 1; n <= 12; ++n)
    if (!mgroup::is_multigroup(mgroup::cyclic_construction(n))) failing += (failing.empty() ? "" : ",") + std::to_string(n);
  const auto r4 = mgroup::check_multigroup(mgroup::cyclic_construction(4));
  o.require(failing.empty(), "cyclic construction fails is_multigroup for n = " + failing + " (n=4: " + r4.message + ")");

  auto partition = [](const mgroup::LagrangeDecomposition& d, std::size_t n) {
    std::vector<int> hits(n, 0);
    for (const auto& c : d.cosets)
      for (auto x : c) ++hits[x];
    return hits == std::vector<int>(n, 1);
  };
  const auto z6 = mgroup::cyclic_group(6);
  o.require(partition(mgroup::lagrange_decomposition(z6, {{0}, {0, 2, 4}}), 6), "Z6 cosets");
  const auto c4 = mgroup::build_cyclic_multigroup(4);
  o.require(partition(mgroup::lagrange_decomposition(c4, {{0, 2}, {0, 2}}), 4), "cyclic(4) cosets");

  o.require(mgroup::maximal_normal_series_lengths(mgroup::cyclic_group(4)) == std::set<std::size_t>{2}, "Z4 series");
  o.require(mgroup::maximal_normal_series_lengths(z6) == std::set<std::size_t>{2}, "Z6 series");
  o.require(mgroup::maximal_normal_series_lengths(c4).size() == 1, "cyclic(4) series not constant");
  return o;
}

Outcome fixed_points() {
  Outcome o;
  using metric::MultiMetricSpace;
  const auto one = metric::fixed_points(MultiMetricSpace({{0, 4, 1}}), metric::affine_self_map({{0.5, 1.0}}));
  o.require(one.size() == 1 && std::abs(one[0].x - 2.0) < kFixedPointClosedFormTol, "m=1 fixed point");
  const auto check = [&](const std::vector<metric::MetricPart>& parts, const std::vector<metric::AffinePiece>& pieces) {
    const auto pts = metric::fixed_points(MultiMetricSpace(parts), metric::affine_self_map(pieces));
    o.require(!pts.empty() && pts.size() <= parts.size(), "count " + std::to_string(pts.size()));
    for (const auto& p : pts) {
      const double tp = pieces[p.part].a * p.x + pieces[p.part].b;
      o.require(std::abs(tp - p.x) < kFixedPointResidualTol, "residual at " + std::to_string(p.x));
    }
  };
  check({{0, 1, 1}, {2, 3, 1}}, {{0.5, 0.25}, {0.5, 1.25}});
  check({{0, 1, 1}, {2, 3, 1}, {4, 5, 1}}, {{0.5, 0.25}, {0.5, 1.25}, {0.5, 0.0}});
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "K4 torus map census through the CLI", 1, torus_k4_census},
      {2, "classification of P0, Pn, Qn for n <= 8", 0, classification},
      {3, "move soundness on 1000 random words", 30, move_soundness},
      {4, "connected sums P1#Q1 and Q1#Q1#Q1", 0, dyck_sums},
      {5, "dual, chi, valency and orientation orbits on 100 random maps", 60, map_algebra},
      {6, "word_to_map census against corner tracing on 200 words", 30, cross_module},
      {7, "Pn and Qn standard words give one-vertex one-face maps", 0, bouquets},
      {8, "minimum orientable genus of K4, K5, K3,3", 60, genus_search},
      {9, "block decomposition verdicts and violation labels", 0, multi_embedding},
      {10, "vertex trichotomy, angle bound and boundary face count", 0, map_geometry},
      {11, "s-plane incidence and parallel counts", 0, splane},
      {12, "multi-group axioms, Lagrange covers and normal series", 120, multi_groups},
      {13, "fixed points of multi-metric contractions", 5, fixed_points},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));

  bool all_pass = true;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.number)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.seconds > 0 && secs >= c.seconds) o.require(false, "took " + std::to_string(secs) + " s");
    all_pass = all_pass && o.pass;
    std::printf("%s %2d  %s (%.3f s)%s%s\n", o.pass ? "PASS" : "FAIL", c.number, c.title.c_str(), secs,
                o.pass ? "" : " -- ", o.detail.c_str());
  }
  return all_pass ? 0 : 1;
}
