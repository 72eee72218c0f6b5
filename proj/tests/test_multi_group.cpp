#include <gtest/gtest.h>

#include "combi/multi_group.hpp"
#include "oracles.hpp"

using namespace combi;
using namespace combi::mgroup;

namespace {

SubMultiGroup sub(std::vector<std::size_t> ops, std::vector<Element> elems) {
  return {std::move(ops), std::move(elems)};
}

Operation table(std::size_t n, Element (*f)(Element, Element, std::size_t)) {
  std::vector<Element> all(n);
  for (Element x = 0; x < n; ++x) all[x] = x;
  Operation op(n, all);
  for (Element a = 0; a < n; ++a)
    for (Element b = 0; b < n; ++b) op.set(a, b, f(a, b, n));
  return op;
}

// Left and right distribution of x *_i y = x + y - i over *_j, evaluated
// directly from the closed form.
bool distributes(std::size_t n, std::size_t i, std::size_t j) {
  auto op = [n](std::size_t k, std::size_t a, std::size_t b) { return (a + b + n - k) % n; };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z) {
        if (op(i, x, op(j, y, z)) != op(j, op(i, x, y), op(i, x, z))) return false;
        if (op(i, op(j, y, z), x) != op(j, op(i, y, x), op(i, z, x))) return false;
      }
  return true;
}

}  // namespace

TEST(Operation, TableAccess) {
  Operation op(3, {0, 1});
  op.set(0, 1, 1);
  EXPECT_EQ(op.get(0, 1), Element{1});
  EXPECT_FALSE(op.get(1, 1).has_value());
  EXPECT_THROW(op(1, 1), PreconditionError);
  EXPECT_THROW(op.set(0, 5, 1), PreconditionError);
  EXPECT_TRUE(op.contains(1));
  EXPECT_FALSE(op.contains(2));
}

TEST(CyclicConstruction, TrivialCaseIsAMultiGroup) {
  const auto r = check_multigroup(cyclic_construction(1));
  EXPECT_TRUE(r.ok) << r.message;
}

TEST(CyclicConstruction, PartsAreCyclicGroups) {
  const auto g = build_cyclic_multigroup(3);
  ASSERT_EQ(g.part_count(), 3u);
  EXPECT_EQ(g.universe_size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(g.part(i).carrier().size(), 3u);
    EXPECT_EQ(g.identity(i), i);
    // A generator: its powers visit every element.
    const Element gen = (i + 1) % 3;
    Element x = gen;
    std::set<Element> seen{x};
    for (int k = 0; k < 2; ++k) seen.insert(x = g.part(i)(x, gen));
    EXPECT_EQ(seen.size(), 3u);
    EXPECT_EQ(g.part(i)(gen, g.inverse(i, gen)), g.identity(i));
  }
}

TEST(CyclicConstruction, NoPairOfPartsDistributes) {
  // x *_i (y *_j z) = (x *_i y) *_j (x *_i z) reduces to x = i (mod n), so
  // neither direction holds on a whole cyclic group of order at least 2.
  for (std::size_t n = 2; n <= 6; ++n) {
    EXPECT_FALSE(distributes(n, 0, 1));
    EXPECT_FALSE(distributes(n, 1, 0));
    const auto r = check_multigroup(cyclic_construction(n));
    EXPECT_FALSE(r.ok);
    ASSERT_TRUE(r.violation.has_value());
    EXPECT_EQ(r.violation->kind, LawViolation::Kind::Distribution);
    EXPECT_TRUE(r.violation->other_part.has_value());
  }
  EXPECT_TRUE(distributes(1, 0, 0));
}

TEST(CheckMultiGroup, PlantedNonAssociativePart) {
  MultiGroupCandidate c;
  c.universe = {"0", "1", "2"};
  c.parts.push_back(table(3, [](Element a, Element b, std::size_t n) { return (a + b) % n; }));
  c.parts.push_back(table(3, [](Element a, Element b, std::size_t n) { return (a + n - b) % n; }));
  const auto r = check_multigroup(c);
  EXPECT_FALSE(r.ok);
  ASSERT_TRUE(r.violation.has_value());
  EXPECT_EQ(r.violation->kind, LawViolation::Kind::NotAssociative);
  EXPECT_EQ(r.violation->part, 1u);
  const auto [a, b, d] = r.violation->triple;
  auto sub3 = [](Element x, Element y) { return (x + 3 - y) % 3; };
  EXPECT_NE(sub3(sub3(a, b), d), sub3(a, sub3(b, d)));
  EXPECT_THROW(MultiGroup::create(c), ValidationError);
}

TEST(CheckMultiGroup, SinglePartGroupsPass) {
  EXPECT_TRUE(is_multigroup(symmetric_group_3().candidate()));
  EXPECT_TRUE(is_multigroup(cyclic_group(6).candidate()));
}

TEST(CheckMultiGroup, MissingIdentityAndInverse) {
  MultiGroupCandidate c;
  c.universe = {"0", "1"};
  c.parts.push_back(table(2, [](Element, Element, std::size_t) -> Element { return 0; }));
  const auto r = check_multigroup(c);
  EXPECT_FALSE(r.ok);
  EXPECT_EQ(r.violation->kind, LawViolation::Kind::NoIdentity);

  MultiGroupCandidate empty;
  empty.universe = {"0"};
  empty.parts.emplace_back(1, std::vector<Element>{});
  EXPECT_EQ(check_multigroup(empty).violation->kind, LawViolation::Kind::EmptyCarrier);
}

TEST(SubMultiGroup, Validation) {
  const auto g = build_cyclic_multigroup(4);
  EXPECT_NO_THROW(validate_sub(g, sub({0, 2}, {0, 2})));
  EXPECT_THROW(validate_sub(g, sub({}, {0})), ValidationError);
  EXPECT_THROW(validate_sub(g, sub({0}, {0, 1})), ValidationError);
  EXPECT_THROW(validate_sub(g, sub({1}, {0, 2})), ValidationError);
  EXPECT_THROW(validate_sub(g, sub({7}, {0})), ValidationError);
}

TEST(Lagrange, WholeGroupIsOneCoset) {
  const auto g = build_cyclic_multigroup(4);
  const auto d = lagrange_decomposition(g, whole(g));
  EXPECT_EQ(d.representatives.size(), 1u);
  EXPECT_EQ(d.cosets.front().size(), 4u);
}

TEST(Lagrange, EvenResiduesInZ6) {
  const auto g = cyclic_group(6);
  const auto h = sub({0}, {0, 2, 4});
  EXPECT_EQ(coset(g, h, 1), (std::vector<Element>{1, 3, 5}));
  const auto d = lagrange_decomposition(g, h);
  ASSERT_EQ(d.representatives.size(), 2u);
  EXPECT_EQ(d.cosets[0], (std::vector<Element>{0, 2, 4}));
  EXPECT_EQ(d.cosets[1], (std::vector<Element>{1, 3, 5}));
  EXPECT_TRUE(d.greedy);
}

TEST(Lagrange, CyclicConstructionWithTwoOperations) {
  const auto g = build_cyclic_multigroup(4);
  const auto d = lagrange_decomposition(g, sub({0, 2}, {0, 2}));
  ASSERT_EQ(d.representatives.size(), 2u);
  EXPECT_EQ(d.cosets[0], (std::vector<Element>{0, 2}));
  EXPECT_EQ(d.cosets[1], (std::vector<Element>{1, 3}));
}

TEST(Lagrange, CosetsAlwaysPartitionTheUniverse) {
  const auto g = build_cyclic_multigroup(6);
  for (const auto& h : {sub({0}, {0, 3}), sub({0}, {0, 2, 4}), sub({1}, {1, 4}), sub({0, 3}, {0, 3})}) {
    const auto d = lagrange_decomposition(g, h);
    std::vector<int> hits(g.universe_size(), 0);
    for (const auto& c : d.cosets)
      for (auto x : c) ++hits[x];
    for (auto k : hits) EXPECT_EQ(k, 1);
  }
}

TEST(Normality, SubgroupsOfS3) {
  const auto s3 = symmetric_group_3();
  const auto e = *s3.find("012");
  const auto swap01 = *s3.find("102");
  std::vector<Element> a3{e, *s3.find("120"), *s3.find("201")};
  std::sort(a3.begin(), a3.end());
  std::vector<Element> t{e, swap01};
  std::sort(t.begin(), t.end());
  EXPECT_FALSE(is_normal(sub({0}, t), s3));
  EXPECT_TRUE(is_normal(sub({0}, a3), s3));
  EXPECT_TRUE(is_normal(whole(s3), s3));
}

TEST(Normality, CyclicConstructionIsCommutative) {
  const auto g = build_cyclic_multigroup(4);
  EXPECT_TRUE(is_normal(sub({0, 2}, {0, 2}), g));
  EXPECT_TRUE(is_normal(sub({0}, {0, 2}), g));
  EXPECT_TRUE(is_normal(whole(g), g));
}

TEST(Series, CyclicGroupsMatchPrimeFactorCount) {
  for (std::size_t n : {2u, 4u, 6u, 8u, 9u, 12u}) {
    const auto lengths = maximal_normal_series_lengths(cyclic_group(n));
    EXPECT_EQ(lengths, (std::set<std::size_t>{oracle::prime_factor_count(n)})) << "n=" << n;
  }
}

TEST(Series, SymmetricGroup) {
  EXPECT_EQ(maximal_normal_series_lengths(symmetric_group_3()), (std::set<std::size_t>{2}));
}

TEST(Series, CyclicConstructionIsSingleton) {
  for (std::size_t n : {2u, 3u, 4u}) EXPECT_EQ(maximal_normal_series_lengths(build_cyclic_multigroup(n)).size(), 1u);
}

TEST(Series, GuardRejectsLargeUniverse) {
  EXPECT_THROW(maximal_normal_series_lengths(cyclic_group(13)), LimitExceeded);
  EXPECT_THROW(maximal_normal_series_lengths(build_cyclic_multigroup(4), 12, 3), LimitExceeded);
}
