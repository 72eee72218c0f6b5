#include <gtest/gtest.h>

#include <iostream>
#include <sstream>

#include <json.hpp>

#include "combi/cli.hpp"
#include "combi/comb_map.hpp"
#include "combi/io.hpp"

using combi::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(COMBI_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Cli, SphereWord) {
  const auto r = call({"word-classify", "--word", "a a-"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "form=sphere\nchi=2\norientable=true\ngenus=0\n");
}

TEST(Cli, InvalidWordIsADomainError) {
  const auto r = call({"word-classify", "--word", "a b a"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("'b'"), std::string::npos);
}

TEST(Cli, WordFromFile) {
  const auto r = call({"word-classify", data("projective.word")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("form=nonorientable\nchi=1\n", 0), 0u);
}

TEST(Cli, NormalizeReportsTrace) {
  const auto r = call({"word-normalize", "--json", "--word", "a b a b"});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["form"], "nonorientable");
  EXPECT_EQ(j["steps"], 1);
  EXPECT_EQ(j["step"][0]["move"], "O2ii");
  EXPECT_EQ(j["standard"], "a1 a1");
}

TEST(Cli, TorusK4Census) {
  const auto r = call({"map-analyze", data("k4_torus.map")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "nu=4\neps=6\nphi=2\nchi=0\norientable=true\ngenus=1\nface_lengths=4,8\nvalencies=3,3,3,3\n");
}

TEST(Cli, TorusK4CensusAsJson) {
  const auto r = call({"--json", "map-analyze", data("k4_torus.map")});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"nu", "eps", "phi", "chi", "orientable", "genus", "face_lengths",
                                            "valencies"}));
  EXPECT_EQ(j["nu"], 4);
  EXPECT_EQ(j["genus"], 1);
}

TEST(Cli, ReportsAreReproducible) {
  const auto a = call({"map-analyze", "--json", data("k4_torus.map")});
  const auto b = call({"map-analyze", "--json", data("k4_torus.map")});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(call({"--json", "--plain", "map-analyze", data("k4_torus.map")}).code, 2);
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"frobnicate"}).code, 2);
  EXPECT_EQ(call({"map-analyze"}).code, 2);
  EXPECT_EQ(call({"map-analyze", "--bogus", data("k4_torus.map")}).code, 2);
  EXPECT_EQ(call({"word-classify"}).code, 2);
  EXPECT_EQ(call({"mgroup-validate"}).code, 2);
}

TEST(Cli, UnreadableFile) {
  const auto r = call({"map-analyze", "/nonexistent/k4.map"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, MalformedFileReportsPosition) {
  std::istringstream in("edges: e\n(e q)\n");
  auto* old = std::cin.rdbuf(in.rdbuf());
  const auto r = call({"map-analyze", "-"});
  std::cin.rdbuf(old);
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("line 2, column 4"), std::string::npos) << r.err;
}

TEST(Cli, DualRoundTrip) {
  const auto r = call({"map-dual", data("k4_torus.map")});
  ASSERT_EQ(r.code, 0);
  const auto original = combi::io::parse_map(combi::io::read_file(data("k4_torus.map")));
  EXPECT_EQ(combi::cmap::dual(combi::io::parse_map(r.out)), original);
}

TEST(Cli, GraphCommands) {
  EXPECT_EQ(call({"graph-genus", data("k5.graph")}).out, "genus=1\nrotation_systems=7776\nexamined=7776\n");
  EXPECT_EQ(call({"graph-planar", data("k4.graph")}).out, "planar=true\n");
  EXPECT_EQ(call({"graph-planar", data("k33.graph")}).out, "planar=false\n");
  EXPECT_EQ(call({"graph-genus", "--guard", "100", data("k5.graph")}).code, 1);
}

TEST(Cli, MultiEmbedding) {
  EXPECT_EQ(call({"graph-multiembed", data("far_neighbor.graph")}).out,
            "blocks=3\nembeddable=false\nviolation=(ii)\nblock=1\nvertex=7\nneighbor=6\n");
  EXPECT_EQ(call({"graph-multiembed", data("near_neighbor.graph")}).out, "blocks=3\nembeddable=true\n");
  EXPECT_EQ(call({"graph-multiembed", data("k5.graph")}).out, "blocks=1\nembeddable=false\nviolation=(i)\nblock=1\n");
}

TEST(Cli, GeometryCommands) {
  EXPECT_EQ(call({"geom-classify", data("k4_torus.geom")}).out,
            "x elliptic\nb.x elliptic\nb.y elliptic\nb.z elliptic\n");
  const auto j = nlohmann::json::parse(call({"geom-classify", "--json", data("k4_torus.geom")}).out);
  EXPECT_EQ(j["angle_defect_pi"], "2");
  EXPECT_EQ(call({"geom-boundary", data("k4_torus_boundary.geom")}).out,
            "bounded=true\nremoved=a.y\nfaces_retained=1\n");
  EXPECT_EQ(call({"geom-boundary", data("k4_torus_boundary.geom"), "--remove", "x"}).code, 1);
  EXPECT_EQ(call({"geom-boundary", data("k4_torus_boundary.geom"), "--remove", "nope"}).code, 2);
}

TEST(Cli, SPlaneQueries) {
  EXPECT_EQ(call({"splane-query", data("splane.txt")}).out,
            "query=line count=1 source_line=6\n"
            "query=line count=0 source_line=8\n"
            "query=line count=0 source_line=10\n"
            "query=parallel count=0 source_line=12\n"
            "query=parallel count=0 source_line=14\n");
}

TEST(Cli, MultiGroupCommands) {
  EXPECT_EQ(call({"mgroup-validate", "--cyclic", "1"}).out, "multigroup=true\nparts=1\nuniverse=1\n");
  const auto bad = call({"mgroup-validate", data("nonassoc.mgroup")});
  EXPECT_EQ(bad.code, 0);
  EXPECT_NE(bad.out.find("multigroup=false"), std::string::npos);
  EXPECT_NE(bad.out.find("associativity"), std::string::npos);

  EXPECT_EQ(call({"mgroup-lagrange", data("z6_even.mgroup")}).out,
            "certified=true\ngreedy=true\nrepresentatives=0,1\ncoset=0 elements=0,2,4\ncoset=1 elements=1,3,5\n");
  const auto c4 = call({"mgroup-lagrange", "--cyclic", "4", "--sub-operations", "1,3", "--sub-elements", "0,2"});
  EXPECT_EQ(c4.code, 0);
  EXPECT_NE(c4.out.find("representatives=0,1"), std::string::npos);
  EXPECT_EQ(call({"mgroup-lagrange", "--cyclic", "4"}).code, 2);
  EXPECT_EQ(call({"mgroup-lagrange", "--cyclic", "4", "--sub-operations", "1", "--sub-elements", "0,1"}).code, 1);

  EXPECT_NE(call({"mgroup-series", data("z6_even.mgroup")}).out.find("lengths=2\nconstant=true"), std::string::npos);
  EXPECT_EQ(call({"mgroup-series", "--cyclic", "13"}).code, 1);
}

TEST(Cli, FixedPoints) {
  const auto r = call({"metric-fixpoints", "--json", data("affine2.txt")});
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["count"], 2);
  EXPECT_EQ(j["within_bound"], true);
  EXPECT_NEAR(j["fixed_point"][1]["x"].get<double>(), 2.5, 1e-9);
  EXPECT_EQ(call({"metric-fixpoints", "--tol", "0", data("affine1.txt")}).code, 2);
}

TEST(Cli, VerboseGoesToStandardError) {
  const auto quiet = call({"word-normalize", "--word", "a b b- a-"});
  const auto loud = call({"word-normalize", "--verbose", "--word", "a b b- a-"});
  EXPECT_EQ(quiet.out, loud.out);
  EXPECT_TRUE(quiet.err.empty());
  EXPECT_FALSE(loud.err.empty());
}
