#include <gtest/gtest.h>

#include <random>

#include "fodef/algebra.hpp"
#include "fodef/twoway.hpp"
#include "support.hpp"

using namespace fodef;
using namespace fodef::testing;

TEST(Figure1, BehaviourOfAb) {
  Figure1 f;
  Behavior b = behavior_of_word(f.t, f.t.alphabet.parse_word("ab"));
  EXPECT_EQ(b.lr, f.rel({{"q0", "s"}, {"s", "q"}, {"t", "q"}, {"w", "q"}, {"y", "p"}}));
  EXPECT_EQ(b.rl, f.rel({{"v", "u"}, {"u", "h"}}));
  // the published listing omits (x,q) and (g,h); both are single moves on the
  // boundary letter and (x,q) reappears in the converted state after ab
  EXPECT_EQ(b.rr, f.rel({{"r", "s"}, {"u", "y"}, {"v", "q"}, {"z", "p"}, {"x", "q"}}));
  EXPECT_EQ(b.ll, f.rel({{"s", "u"}, {"t", "u"}, {"w", "u"}, {"g", "h"}}));
}

TEST(Figure1, BehaviourOfAbab) {
  Figure1 f;
  Behavior ab = behavior_of_word(f.t, f.t.alphabet.parse_word("ab"));
  Behavior b = behavior_compose(ab, ab);
  EXPECT_EQ(b, behavior_of_word(f.t, f.t.alphabet.parse_word("abab")));
  EXPECT_EQ(b.lr, f.rel({{"q0", "p"}, {"q0", "q"}}));
  EXPECT_EQ(b.rl, f.rel({{"v", "h"}}));
  // listed values plus (z,p), (x,q) from b_rr(ab) ⊆ b_rr(abab), and (g,h)
  EXPECT_EQ(b.rr, f.rel({{"r", "s"}, {"u", "y"}, {"v", "q"}, {"v", "p"}, {"z", "p"}, {"x", "q"}}));
  EXPECT_EQ(b.ll, f.rel({{"q0", "h"}, {"s", "u"}, {"t", "u"}, {"w", "u"}, {"g", "h"}}));
}

TEST(Figure1, ConvertedRun) {
  Figure1 f;
  Behavior a = behavior_of_letter(f.t, 0), b = behavior_of_letter(f.t, 1);
  auto s0 = behavior_dfa_start(f.t);
  auto s1 = behavior_dfa_step(s0, a);
  EXPECT_EQ(s1.blr, f.rel({{"q0", "r"}}));
  EXPECT_EQ(s1.brr, f.rel({{"q0", "r"}, {"s", "v"}, {"t", "v"}, {"w", "x"}, {"y", "z"}}));
  auto s2 = behavior_dfa_step(s1, b);
  EXPECT_EQ(s2.blr, f.rel({{"q0", "s"}}));
  EXPECT_EQ(s2.brr, f.rel({{"r", "s"}, {"u", "y"}, {"x", "q"}, {"z", "p"}, {"v", "q"}}));
  Dfa d = twonfa_to_dfa(f.t);
  EXPECT_TRUE(d.accepts(d.alphabet.parse_word("abab")));
  EXPECT_FALSE(d.accepts(d.alphabet.parse_word("ab")));
  EXPECT_TRUE(twonfa_accepts(f.t, f.t.alphabet.parse_word("abab")));
  EXPECT_FALSE(twonfa_accepts(f.t, f.t.alphabet.parse_word("ab")));
}

TEST(Figure1, ConvertedStatesAfterAbaAndAbab) {
  Figure1 f;
  auto s = behavior_dfa_start(f.t);
  for (int a : {0, 1, 0}) s = behavior_dfa_step(s, behavior_of_letter(f.t, a));
  EXPECT_EQ(s.blr, f.rel({{"q0", "z"}, {"q0", "v"}}));
  EXPECT_EQ(s.brr, f.rel({{"q0", "r"}, {"s", "v"}, {"t", "v"}, {"w", "x"}, {"y", "z"}, {"s", "z"}, {"w", "z"}, {"t", "z"}}));
  s = behavior_dfa_step(s, behavior_of_letter(f.t, 1));
  EXPECT_EQ(s.blr, f.rel({{"q0", "q"}, {"q0", "p"}}));
  EXPECT_EQ(s.brr, f.rel({{"r", "s"}, {"u", "y"}, {"x", "q"}, {"z", "p"}, {"v", "q"}, {"v", "p"}}));
  EXPECT_EQ(s, behavior_dfa_apply(behavior_dfa_start(f.t), behavior_of_word(f.t, {0, 1, 0, 1})));
}

TEST(Behavior, EmptyWordAndUnit) {
  Figure1 f;
  EXPECT_EQ(behavior_of_word(f.t, {}), identity_behavior(14));
  Behavior e = neutral_behavior(14);
  Behavior ab = behavior_of_word(f.t, {0, 1});
  EXPECT_EQ(behavior_compose(e, ab), ab);
  EXPECT_EQ(behavior_compose(ab, e), ab);
}

TEST(Behavior, ForwardOnly) {
  TwoNfa t(letters(1), 2);
  t.add(0, 0, 1, 1);
  Behavior b = behavior_of_letter(t, 0);
  EXPECT_TRUE(b.rl.empty());
  EXPECT_TRUE(b.ll.empty());
  Relation one(2);
  one.set(0, 1);
  EXPECT_EQ(b.lr, one);
}

TEST(Behavior, StayLoopSaturation) {
  TwoNfa t(letters(1), 2);
  t.add(0, 0, 0, 0);
  t.add(0, 0, 1, 0);
  t.add(1, 0, 1, 1);
  Behavior b = behavior_of_letter(t, 0);
  EXPECT_TRUE(b.lr.test(0, 1));
  EXPECT_TRUE(b.lr.test(1, 1));
  EXPECT_FALSE(b.lr.test(1, 0));
}

TEST(Behavior, FoldAgreesWithConfigurationSearch) {
  std::mt19937 rng(17);
  for (int it = 0; it < 150; ++it) {
    int n = 1 + int(rng() % 4), k = 1 + int(rng() % 2);
    TwoNfa t = random_twonfa(rng, n, k, 2 * n + int(rng() % 4));
    for (auto& w : all_words(k, 4)) ASSERT_EQ(behavior_of_word(t, w), behavior_by_search(t, w)) << it;
  }
}

TEST(Behavior, Homomorphism) {
  std::mt19937 rng(19);
  for (int it = 0; it < 60; ++it) {
    int n = 1 + int(rng() % 4);
    TwoNfa t = random_twonfa(rng, n, 2, 3 * n);
    auto ws = all_words(2, 3);
    for (auto& u : ws)
      for (auto& v : ws) {
        if (u.empty() || v.empty()) continue;
        Word uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        ASSERT_EQ(behavior_compose(behavior_of_word(t, u), behavior_of_word(t, v)), behavior_of_word(t, uv));
      }
  }
}

TEST(Convert, ClosedFormMatchesFold) {
  std::mt19937 rng(23);
  for (int it = 0; it < 60; ++it) {
    TwoNfa t = random_twonfa(rng, 4, 2, 9);
    auto s0 = behavior_dfa_start(t);
    for (auto& w : all_words(2, 5)) {
      if (w.empty()) continue;
      auto s = s0;
      for (int a : w) s = behavior_dfa_step(s, behavior_of_letter(t, a));
      ASSERT_EQ(s, behavior_dfa_apply(s0, behavior_of_word(t, w)));
    }
  }
}

TEST(Convert, OneWayAgreesWithSubsetConstruction) {
  std::mt19937 rng(29);
  for (int it = 0; it < 100; ++it) {
    Nfa m = random_nfa(rng, 1 + int(rng() % 4), 2, 0.35, 0.0);
    Dfa a = twonfa_to_dfa(TwoNfa::from_nfa(m)), b = determinize(m);
    for (auto& w : all_words(2, 6)) ASSERT_EQ(a.accepts(w), b.accepts(w));
  }
}

TEST(Convert, LanguagePreservedRandom) {
  std::mt19937 rng(31);
  for (int it = 0; it < 200; ++it) {
    int n = 1 + int(rng() % 4);
    TwoNfa t = random_twonfa(rng, n, 2, 2 * n + int(rng() % 5));
    Dfa d = twonfa_to_dfa(t);
    for (auto& w : all_words(2, 7)) ASSERT_EQ(d.accepts(w), twonfa_accepts(t, w)) << it;
  }
}

TEST(Accepts, NoFinalsRejects) {
  Figure1 f;
  f.t.finals.assign(14, false);
  for (auto& w : all_words(2, 5)) EXPECT_FALSE(twonfa_accepts(f.t, w));
}

TwoNfa twonfa_of(const Dfa& d) { return TwoNfa::from_nfa(Nfa::from_dfa(d)); }

TEST(Definability, Examples) {
  EXPECT_EQ(twonfa_definability(twonfa_of(parity())).verdict.lowest, DefClass::FO_LT_EQ);
  EXPECT_EQ(twonfa_definability(twonfa_of(astar_bstar())).verdict.lowest, DefClass::FO_LT);
  EXPECT_EQ(twonfa_definability(twonfa_of(make_bp_automaton(BpKind::LT, 7))).verdict.lowest, DefClass::FO_LT_EQ);
  EXPECT_EQ(twonfa_definability(twonfa_of(make_bp_automaton(BpKind::EQ, 7))).verdict.lowest, DefClass::FO_LT_MOD);
}

TEST(Definability, ModFixtureRprOnly) {
  auto v = twonfa_definability(twonfa_of(make_bp_automaton(BpKind::MOD, 7)));
  EXPECT_EQ(v.verdict.lowest, DefClass::FO_RPR_ONLY);
}

TEST(Definability, AgreesWithAlgebraRoute) {
  std::mt19937 rng(37);
  for (int it = 0; it < 120; ++it) {
    int n = 1 + int(rng() % 3);
    TwoNfa t = random_twonfa(rng, n, 2, 2 * n + int(rng() % 4));
    auto v = twonfa_definability(t);
    auto w = definability_verdict(minimize(twonfa_to_dfa(t)).minimal);
    ASSERT_EQ(v.verdict.lowest, w.lowest) << it;
  }
}

TEST(Definability, StateCap) {
  TwoNfa t(letters(1), 13);
  try {
    twonfa_definability(t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::CapExceeded);
  }
}
