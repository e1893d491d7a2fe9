#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fodef/algebra.hpp"
#include "support.hpp"

using namespace fodef;
using namespace fodef::testing;

Dfa even_a() {  // (aa)* over {a}
  return parity();
}

Dfa astar2() {  // a* over {a,b}
  Dfa d(letters(2), 2);
  d.set(0, 0, 0), d.set(0, 1, 1), d.set(1, 0, 1), d.set(1, 1, 1);
  d.finals = {true, false};
  return d;
}

TEST(Monoid, Sizes) {
  auto p = TransitionMonoid::of(parity());
  EXPECT_EQ(p.size(), 2u);
  Dfa one(letters(1), 1);
  EXPECT_EQ(TransitionMonoid::of(one).size(), 1u);
  auto lt = TransitionMonoid::of(make_bp_automaton(BpKind::LT, 7));
  EXPECT_EQ(lt.size(), 7u);
  EXPECT_EQ(TransitionMonoid::of(make_bp_automaton(BpKind::EQ, 7)).size(), 7u);
}

TEST(Monoid, ProductConvention) {
  std::mt19937 rng(41);
  Dfa d = random_dfa(rng, 4, 2);
  auto m = TransitionMonoid::of(d);
  for (size_t x = 0; x < m.size(); ++x)
    for (size_t y = 0; y < m.size(); ++y) {
      Word w = m.witness(int(x));
      w.insert(w.end(), m.witness(int(y)).begin(), m.witness(int(y)).end());
      int z = m.mul(int(x), int(y));
      for (int q = 0; q < d.num_states; ++q) EXPECT_EQ(m.map(z)[size_t(q)], d.run_from(q, w));
    }
}

// s^n is idempotent for n = |M|!-ish; we check s^{|M|} idempotent-power facts
TEST(Monoid, IdempotentPowerAndPermutation) {
  std::mt19937 rng(43);
  for (int it = 0; it < 50; ++it) {
    auto m = TransitionMonoid::of(random_dfa(rng, 5, 2));
    for (size_t s = 0; s < m.size(); ++s) {
      auto [i, p] = m.index_period(int(s));
      long long n = (long long)((i + p - 1) / p) * p;  // multiple of p, ≥ i
      int e = m.power(int(s), std::max<long long>(n, 1));
      if (n >= 1) EXPECT_TRUE(m.idempotent(e));
      // δ restricted to the image of e is a permutation
      int se = m.mul(e, int(s));
      std::set<int> image, moved;
      for (int q = 0; q < m.num_states(); ++q) image.insert(m.map(e)[size_t(q)]);
      for (int q : image) moved.insert(m.map(se)[size_t(q)]);
      EXPECT_EQ(image, moved);
    }
  }
}

TEST(LengthImages, ParityAlternates) {
  auto m = TransitionMonoid::of(even_a());
  auto li = length_images(m);
  int id = m.identity(), sw = m.generator(0);
  EXPECT_TRUE(li.at(1).test(size_t(sw)));
  EXPECT_FALSE(li.at(1).test(size_t(id)));
  EXPECT_TRUE(li.at(2).test(size_t(id)));
  EXPECT_TRUE(li.at(1001).test(size_t(sw)));
  EXPECT_EQ(li.word_for(1, id).size(), 2u);
}

TEST(LengthImages, MatchesEnumeration) {
  std::mt19937 rng(47);
  for (int it = 0; it < 30; ++it) {
    Dfa d = random_dfa(rng, 4, 2);
    auto m = TransitionMonoid::of(d);
    auto li = length_images(m);
    for (int t = 1; t <= 7; ++t) {
      BitSet s(m.size());
      for (auto& w : all_words(2, t))
        if (int(w.size()) == t) {
          StateMap f(size_t(d.num_states), 0);
          for (int q = 0; q < d.num_states; ++q) f[size_t(q)] = d.run_from(q, w);
          s.set(size_t(m.find(f)));
        }
      EXPECT_EQ(s, li.at(t));
      if (size_t(t) <= li.sets.size())
        s.for_each([&](size_t x) {
          Word w = li.word_for(t - 1, int(x));
          EXPECT_EQ(int(w.size()), t);
        });
    }
  }
}

TEST(Groups, ContainsNontrivialGroup) {
  auto p = TransitionMonoid::of(parity());
  BitSet all(2);
  all.set(0), all.set(1);
  EXPECT_TRUE(contains_nontrivial_group(p, all).has_value());
  BitSet ids(2);
  ids.set(size_t(p.identity()));
  EXPECT_FALSE(contains_nontrivial_group(p, ids).has_value());

  auto sd = syntactic_data(make_bp_automaton(BpKind::EQ, 7));
  EXPECT_FALSE(contains_nontrivial_group(sd.monoid, sd.images.at(1)).has_value());
  EXPECT_TRUE(contains_nontrivial_group(sd.monoid, sd.images.at(7)).has_value());
}

TEST(Groups, QuasiAperiodic) {
  EXPECT_TRUE(is_quasi_aperiodic(syntactic_data(even_a())));
  EXPECT_FALSE(is_quasi_aperiodic(syntactic_data(make_bp_automaton(BpKind::EQ, 7))));
  EXPECT_TRUE(is_quasi_aperiodic(syntactic_data(astar2())));
}

TEST(Groups, MaximalSubgroups) {
  auto p = TransitionMonoid::of(parity());
  auto gs = maximal_subgroups(p);
  size_t nontrivial = 0;
  for (auto& g : gs)
    if (g.size() > 1) {
      ++nontrivial;
      EXPECT_EQ(g.size(), 2u);
      EXPECT_EQ(g.identity, p.identity());
    }
  EXPECT_EQ(nontrivial, 1u);
  for (auto& g : maximal_subgroups(TransitionMonoid::of(astar_bstar()))) EXPECT_EQ(g.size(), 1u);
}

TEST(Groups, ModFixturePsl27) {
  auto m = TransitionMonoid::of(make_bp_automaton(BpKind::MOD, 7));
  std::vector<GroupSubset> big;
  for (auto& g : maximal_subgroups(m))
    if (g.size() > 1) big.push_back(g);
  ASSERT_EQ(big.size(), 1u);
  EXPECT_EQ(big[0].size(), 168u);
  EXPECT_EQ(big[0].identity, m.identity());
  EXPECT_FALSE(is_solvable(m, big[0]));
  auto kl = kaplan_levy(m, big[0]);
  ASSERT_TRUE(kl.has_value());
  EXPECT_EQ(big[0].order.at(kl->a), 2);
  EXPECT_EQ(big[0].order.at(kl->b), 7);
  EXPECT_EQ(big[0].order.at(kl->c), 3);
  EXPECT_EQ(m.mul(m.mul(kl->a, kl->b), kl->c), m.identity());
}

TEST(Groups, SolvableCyclic) {
  auto m = TransitionMonoid::of(make_bp_automaton(BpKind::LT, 7));
  for (auto& g : maximal_subgroups(m)) {
    EXPECT_TRUE(is_solvable(m, g));
    EXPECT_FALSE(kaplan_levy(m, g).has_value());
  }
}

// Kaplan–Levy and the derived series agree on symmetric-group actions
TEST(Groups, KaplanLevyMatchesDerivedSeries) {
  std::mt19937 rng(53);
  for (int it = 0; it < 40; ++it) {
    int n = 3 + int(rng() % 3);
    Dfa d(letters(2), n);
    std::vector<int> p1(size_t(n), 0), p2(size_t(n), 0);
    for (int i = 0; i < n; ++i) p1[size_t(i)] = p2[size_t(i)] = i;
    std::shuffle(p1.begin(), p1.end(), rng);
    std::shuffle(p2.begin(), p2.end(), rng);
    for (int q = 0; q < n; ++q) d.set(q, 0, p1[size_t(q)]), d.set(q, 1, p2[size_t(q)]);
    auto m = TransitionMonoid::of(d);
    for (auto& g : maximal_subgroups(m)) EXPECT_EQ(is_solvable(m, g), !kaplan_levy(m, g).has_value());
  }
}

TEST(Verdict, Ladder) {
  EXPECT_EQ(definability_verdict(astar_bstar()).lowest, DefClass::FO_LT);
  EXPECT_EQ(definability_verdict(even_a()).lowest, DefClass::FO_LT_EQ);
  EXPECT_EQ(definability_verdict(make_bp_automaton(BpKind::LT, 7)).lowest, DefClass::FO_LT_EQ);
  EXPECT_EQ(definability_verdict(make_bp_automaton(BpKind::EQ, 7)).lowest, DefClass::FO_LT_MOD);
  auto mod = definability_verdict(make_bp_automaton(BpKind::MOD, 7));
  EXPECT_EQ(mod.lowest, DefClass::FO_RPR_ONLY);
  EXPECT_EQ(mod.unsolvable_group_size.value_or(0), 168u);
}

TEST(Criteria, FoExamples) {
  auto w = criterion_fo(parity());
  ASSERT_TRUE(w);
  EXPECT_EQ(w->u, Word{0});
  EXPECT_EQ(w->k, 2);
  EXPECT_TRUE(check_fo_witness(parity(), *w));
  EXPECT_FALSE(criterion_fo(astar_bstar()));
  Dfa b = make_bp_automaton(BpKind::LT, 7);
  auto wb = criterion_fo(b);
  ASSERT_TRUE(wb);
  EXPECT_EQ(wb->u, Word{0});
  EXPECT_EQ(wb->k, 7);
  EXPECT_TRUE(check_fo_witness(b, *wb));
}

TEST(Criteria, FoEqExamples) {
  Dfa b = make_bp_automaton(BpKind::EQ, 7);
  auto w = criterion_fo_eq(b);
  ASSERT_TRUE(w);
  EXPECT_EQ(b.alphabet.format(w->u), "a");
  EXPECT_EQ(b.alphabet.format(w->v), "nat");
  EXPECT_TRUE(check_fo_eq_witness(b, *w));
  EXPECT_FALSE(criterion_fo_eq(even_a()));
  EXPECT_FALSE(criterion_fo_eq(astar_bstar()));
}

TEST(Criteria, FoModExamples) {
  Dfa b = make_bp_automaton(BpKind::MOD, 7);
  auto w = criterion_fo_mod(b);
  ASSERT_TRUE(w);
  EXPECT_EQ(b.alphabet.format(w->u), "nat");
  EXPECT_EQ(b.alphabet.format(w->v), "a");
  EXPECT_EQ(w->q, 0);
  EXPECT_EQ(w->k, 7);
  EXPECT_EQ(w->l, 3);
  EXPECT_TRUE(check_fo_mod_witness(b, *w));
  EXPECT_FALSE(criterion_fo_mod(make_bp_automaton(BpKind::EQ, 7)));
  Dfa one(letters(1), 1);
  EXPECT_FALSE(criterion_fo_mod(one));
}

TEST(Criteria, AgreeWithAlgebraRandom) {
  std::mt19937 rng(59);
  for (int it = 0; it < 150; ++it) {
    Dfa d = random_dfa(rng, 2 + int(rng() % 4), 1 + int(rng() % 2));
    auto v = definability_verdict(d);
    auto fo = criterion_fo(d);
    auto eq = criterion_fo_eq(d);
    auto mod = criterion_fo_mod(d);
    EXPECT_EQ(fo.has_value(), v.lowest != DefClass::FO_LT);
    EXPECT_EQ(eq.has_value(), v.lowest > DefClass::FO_LT_EQ);
    EXPECT_EQ(mod.has_value(), v.lowest == DefClass::FO_RPR_ONLY);
    if (fo) EXPECT_TRUE(check_fo_witness(d, *fo));
    if (eq) EXPECT_TRUE(check_fo_eq_witness(d, *eq));
    if (mod) EXPECT_TRUE(check_fo_mod_witness(d, *mod));
  }
}

TEST(Expand, ParityExample) {
  Dfa e = expand_language(parity(), {"a", "x", "y"}, {"a", "x", "y"});
  EXPECT_TRUE(e.accepts(e.alphabet.parse_word("xaay")));
  EXPECT_FALSE(e.accepts(e.alphabet.parse_word("xay")));
  EXPECT_TRUE(e.accepts(e.alphabet.parse_word("xy")));
}

TEST(Expand, PreservesVerdict) {
  std::vector<Dfa> ds = {make_bp_automaton(BpKind::LT, 7), make_bp_automaton(BpKind::EQ, 7),
                         make_bp_automaton(BpKind::MOD, 7), parity(), astar_bstar()};
  std::mt19937 rng(61);
  for (int i = 0; i < 30; ++i) ds.push_back(random_dfa(rng, 2 + int(rng() % 4), 2));
  for (auto& d : ds) {
    auto syms = d.alphabet.symbols();
    auto gamma = syms;
    gamma.push_back("x"), gamma.push_back("y");
    Dfa e = expand_language(d, gamma, gamma);
    EXPECT_EQ(definability_verdict(d).lowest, definability_verdict(e).lowest);
  }
}

TEST(Fixtures, Shapes) {
  Dfa mod = make_bp_automaton(BpKind::MOD, 7);
  int nat = mod.alphabet.index("nat");
  EXPECT_EQ(mod.next(1, nat), 6);
  Dfa lt = make_bp_automaton(BpKind::LT, 7);
  for (int n = 0; n <= 13; ++n) EXPECT_EQ(lt.accepts(Word(size_t(n), 0)), n == 0 || n == 7);
  Dfa eq = make_bp_automaton(BpKind::EQ, 7);
  EXPECT_TRUE(eq.accepts(eq.alphabet.parse_word("nat nat nat nat nat a a a a a a a")));
  for (int p : {1, 4, 9}) EXPECT_THROW(make_bp_automaton(BpKind::LT, p), Error);
  EXPECT_THROW(make_bp_automaton(BpKind::MOD, 11), Error);
  EXPECT_THROW(make_bp_automaton(BpKind::MOD, 5), Error);
}

TEST(Criteria, ModAgreesOnPermutationAutomata) {
  std::mt19937 rng(67);
  int unsolvable = 0;
  for (int it = 0; it < 60; ++it) {
    int n = 5 + int(rng() % 2);
    Dfa d(letters(2), n);
    for (int a = 0; a < 2; ++a) {
      std::vector<int> p(size_t(n), 0);
      for (int i = 0; i < n; ++i) p[size_t(i)] = i;
      std::shuffle(p.begin(), p.end(), rng);
      for (int q = 0; q < n; ++q) d.set(q, a, p[size_t(q)]);
    }
    d.finals.assign(size_t(n), false);
    d.finals[0] = true;
    auto v = definability_verdict(d);
    auto w = criterion_fo_mod(d);
    unsolvable += v.lowest == DefClass::FO_RPR_ONLY;
    ASSERT_EQ(w.has_value(), v.lowest == DefClass::FO_RPR_ONLY) << it;
    if (w) EXPECT_TRUE(check_fo_mod_witness(d, *w));
  }
  EXPECT_GT(unsolvable, 10);
}
