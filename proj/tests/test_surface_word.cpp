#include <gtest/gtest.h>

#include "combi/errors.hpp"
#include "combi/surface_word.hpp"
#include "oracles.hpp"

using namespace combi;
using namespace combi::word;

namespace {

MoveApplication mv(Move m, Direction d, std::size_t start, std::array<std::size_t, 3> segs = {0, 0, 0}) {
  return {m, d, start, segs};
}

}  // namespace

TEST(ParseWord, ReadsLettersAndInverses) {
  const auto w = parse_word("a a-");
  ASSERT_EQ(w.size(), 2u);
  EXPECT_EQ(w[0], (SignedLetter{0, 1}));
  EXPECT_EQ(w[1], (SignedLetter{0, -1}));

  const auto t = parse_word("a b a- b-");
  EXPECT_EQ(t.symbol_count(), 2u);
  EXPECT_EQ(t.to_string(), "a b a- b-");
}

TEST(ParseWord, RejectsSymbolUsedOnce) {
  try {
    parse_word("a b a");
    FAIL() << "expected a validation error";
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos);
  }
}

TEST(ParseWord, RejectsEmptyAndTripledSymbols) {
  EXPECT_THROW(parse_word(""), Error);
  EXPECT_THROW(parse_word("a a a-"), ValidationError);
}

TEST(ParseWord, MalformedTokenCarriesPosition) {
  try {
    parse_word("a b a-\nb- c--");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 4u);
  }
}

TEST(SurfaceWord, TwistedSymbols) {
  const auto w = parse_word("a b a b-");
  EXPECT_TRUE(w.is_twisted(0));
  EXPECT_FALSE(w.is_twisted(1));
  EXPECT_EQ(w.occurrences(0), (std::array<std::size_t, 2>{0, 2}));
}

TEST(SurfaceWord, EquivalenceIgnoresRotationAndNames) {
  EXPECT_TRUE(parse_word("a b a- b-").equivalent(parse_word("y x- y- x")));
  EXPECT_TRUE(parse_word("a a b b").equivalent(parse_word("q q p p")));
  EXPECT_FALSE(parse_word("a a b b").equivalent(parse_word("a b a- b-")));
}

TEST(ApplyMove, CancelAdjacentPair) {
  const auto w = parse_word("a b b- a-");
  const auto r = apply_move(w, mv(Move::O1, Direction::Forward, 1));
  EXPECT_TRUE(r.equivalent(parse_word("a a-")));
}

TEST(ApplyMove, MergeRepeatedPair) {
  const auto r = apply_move(parse_word("a b a b"), mv(Move::O2ii, Direction::Forward, 0, {0, 0, 0}));
  EXPECT_TRUE(r.equivalent(parse_word("c c")));
}

TEST(ApplyMove, CancelRefusesToEmptyTheWord) {
  EXPECT_THROW(apply_move(parse_word("a a-"), mv(Move::O1, Direction::Forward, 0)), PreconditionError);
}

TEST(ApplyMove, MismatchedPatternThrows) {
  EXPECT_THROW(apply_move(parse_word("a b a- b-"), mv(Move::O1, Direction::Forward, 0)), PreconditionError);
  EXPECT_FALSE(matches(parse_word("a b a- b-"), mv(Move::O2ii, Direction::Forward, 0)));
}

TEST(ApplyMove, MergeNestedPair) {
  const auto r = apply_move(parse_word("a b x b- a- x-"), mv(Move::O2i, Direction::Forward, 0, {1, 0, 0}));
  EXPECT_TRUE(r.equivalent(parse_word("c x c- x-")));
}

TEST(ApplyMove, CutAndPasteMoves) {
  const auto i = apply_move(parse_word("x a y x- a- y-"), mv(Move::O3i, Direction::Forward, 0, {1, 1, 1}));
  EXPECT_TRUE(i.equivalent(parse_word("y a x y- a- x-")));
  const auto ii = apply_move(parse_word("x a y x- a y-"), mv(Move::O3ii, Direction::Forward, 0, {1, 1, 1}));
  EXPECT_TRUE(ii.equivalent(parse_word("y a x x a y")));
}

TEST(ApplyMove, BackwardInsertionGrowsTheWord) {
  const auto r = apply_move(parse_word("a a"), mv(Move::O1, Direction::Backward, 1));
  EXPECT_EQ(r.size(), 4u);
  EXPECT_EQ(corner_trace_euler(r), 1);
}

TEST(ApplyMove, InverseMoveRestoresWord) {
  for (const char* text : {"a b a- b- c c", "a b c a b c", "x a y x- a- y-", "a b b- a-"}) {
    const auto w = parse_word(text);
    for (const auto& m : enumerate_moves(w)) {
      const auto r = apply_move(w, m);
      const auto back = apply_move(r, inverse_move(w, m));
      EXPECT_TRUE(back.equivalent(w)) << text << " via " << m.to_string();
    }
  }
}

TEST(CornerTrace, EulerCharacteristics) {
  EXPECT_EQ(corner_trace_euler(parse_word("a a-")), 2);
  EXPECT_EQ(corner_trace_euler(parse_word("a b a- b-")), 0);
  EXPECT_EQ(corner_trace_euler(parse_word("a a")), 1);
  EXPECT_EQ(corner_class_count(parse_word("a a-")), 2u);
}

TEST(CornerTrace, AgreesWithGluingOracle) {
  for (const char* text : {"a b c a- b- c-", "a b a c b c", "a b c c- b- a-", "a a b c b- c-"}) {
    const auto w = parse_word(text);
    EXPECT_EQ(corner_trace_euler(w), oracle::word_euler(oracle::raw(w))) << text;
  }
}

TEST(Orientability, SameExponentPairMakesTwist) {
  EXPECT_TRUE(is_orientable_word(parse_word("a b a- b-")));
  EXPECT_FALSE(is_orientable_word(parse_word("a a")));
  EXPECT_FALSE(is_orientable_word(parse_word("a b a b-")));
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(parse_word("a a-")), StandardForm::sphere());
  EXPECT_EQ(classify(parse_word("a1 b1 a1- b1- a2 b2 a2- b2-")), StandardForm::orientable(2));
  EXPECT_EQ(classify(parse_word("a b a b")), StandardForm::non_orientable(1));
}

TEST(StandardForm, EulerCharacteristicAndText) {
  EXPECT_EQ(StandardForm::orientable(3).euler_characteristic(), -4);
  EXPECT_EQ(StandardForm::non_orientable(3).euler_characteristic(), -1);
  EXPECT_EQ(StandardForm::sphere().to_string(), "sphere");
  EXPECT_THROW(StandardForm::orientable(0), Error);
}

TEST(StandardWord, Shapes) {
  EXPECT_EQ(standard_word(StandardForm::sphere()).to_string(), "a a-");
  EXPECT_EQ(standard_word(StandardForm::orientable(1)).to_string(), "a1 b1 a1- b1-");
  EXPECT_EQ(standard_word(StandardForm::non_orientable(2)).to_string(), "a1 a1 a2 a2");
}

TEST(StandardWord, ClassifiesBackToItsForm) {
  EXPECT_EQ(classify(standard_word(StandardForm::sphere())), StandardForm::sphere());
  for (int n = 1; n <= 8; ++n) {
    EXPECT_EQ(classify(standard_word(StandardForm::orientable(n))), StandardForm::orientable(n));
    EXPECT_EQ(classify(standard_word(StandardForm::non_orientable(n))), StandardForm::non_orientable(n));
  }
}

TEST(ConnectedSum, ConcatenatesWithFreshNames) {
  const auto s = connected_sum(parse_word("a a-"), parse_word("b b"));
  EXPECT_EQ(s.to_string(), "a a- b b");
  const auto clash = connected_sum(parse_word("a a"), parse_word("a a"));
  EXPECT_EQ(clash.symbol_count(), 2u);
}

TEST(ConnectedSum, TorusPlusCrosscapIsThreeCrosscaps) {
  const auto p1 = standard_word(StandardForm::orientable(1));
  const auto q1 = standard_word(StandardForm::non_orientable(1));
  EXPECT_EQ(classify(connected_sum(p1, q1)), StandardForm::non_orientable(3));
  EXPECT_EQ(classify(connected_sum(q1, q1)), StandardForm::non_orientable(2));
  EXPECT_EQ(classify(connected_sum(connected_sum(q1, q1), q1)), StandardForm::non_orientable(3));
}

TEST(Normalize, SphereTraceStartsByCancelling) {
  const auto w = parse_word("a b b- a-");
  const auto n = normalize_with_trace(w);
  EXPECT_EQ(n.form, StandardForm::sphere());
  ASSERT_FALSE(n.trace.empty());
  EXPECT_EQ(n.trace.front().move, Move::O1);
  EXPECT_TRUE(replay(w, n.trace).equivalent(parse_word("a a-")));
}

TEST(Normalize, RepeatedPairNeedsOneMerge) {
  const auto n = normalize_with_trace(parse_word("a b a b"));
  EXPECT_EQ(n.form, StandardForm::non_orientable(1));
  ASSERT_EQ(n.trace.size(), 1u);
  EXPECT_EQ(n.trace[0].move, Move::O2ii);
}

TEST(Normalize, StandardWordHasEmptyTrace) {
  const auto n = normalize_with_trace(standard_word(StandardForm::non_orientable(3)));
  EXPECT_EQ(n.form, StandardForm::non_orientable(3));
  EXPECT_TRUE(n.trace.empty());
  EXPECT_TRUE(n.complete);
}

TEST(Normalize, ReplayReachesStandardWord) {
  for (const char* text : {"a b c a- b- c-", "a b a c b c", "a b a- c b- c", "a b c d a- b- c- d-",
                           "x y x- z z y-", "a b c a b c"}) {
    const auto w = parse_word(text);
    const auto n = normalize_with_trace(w);
    EXPECT_TRUE(n.complete);
    EXPECT_EQ(n.form, classify(w)) << text;
    EXPECT_TRUE(replay(w, n.trace).equivalent(standard_word(n.form))) << text;
  }
}

TEST(Normalize, StepLimitFallsBackToInvariants) {
  const auto w = parse_word("a b c a- b- c-");
  const auto full = normalize_with_trace(w);
  ASSERT_GT(full.trace.size(), 1u);
  const auto cut = normalize_with_trace(w, 1);
  EXPECT_FALSE(cut.complete);
  EXPECT_TRUE(cut.trace.empty());
  EXPECT_EQ(cut.form, full.form);
}
