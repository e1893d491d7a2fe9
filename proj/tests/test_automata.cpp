#include <gtest/gtest.h>

#include <random>

#include "fodef/algebra.hpp"
#include "fodef/automata.hpp"
#include "fodef/automaton_io.hpp"
#include "support.hpp"

using namespace fodef;
using namespace fodef::testing;

TEST(DfaRun, ParityAndEmptyWord) {
  Dfa d = parity();
  EXPECT_EQ(dfa_run(d, {0, 0}), 0);
  EXPECT_EQ(dfa_run(d, {}), 0);
  EXPECT_EQ(dfa_run(d, {0}), 1);
}

TEST(DfaRun, CyclicFixtureReturnsToStart) {
  Dfa b = make_bp_automaton(BpKind::LT, 7);
  EXPECT_EQ(dfa_run(b, Word(7, 0)), 0);
}

TEST(DfaRun, UnknownSymbol) {
  Dfa d = parity();
  EXPECT_THROW(d.alphabet.parse_word("ab"), Error);
  try {
    dfa_run(d, {3});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnknownSymbol);
  }
}

Nfa astar_b() {
  Nfa n(letters(2), 2);
  n.add(0, 0, 0);
  n.add(0, 1, 1);
  n.initials = {0};
  n.finals = {false, true};
  return n;
}

TEST(NfaAccepts, AStarB) {
  Nfa n = astar_b();
  EXPECT_TRUE(nfa_accepts(n, n.alphabet.parse_word("aab")));
  EXPECT_FALSE(nfa_accepts(n, n.alphabet.parse_word("ba")));
}

TEST(NfaAccepts, EpsilonChains) {
  // ε-NFA over {a}: 0 -ε-> 1 -a-> 2 -ε-> 0, final 1 : accepts all a^n
  Nfa n(letters(1), 3);
  n.add_eps(0, 1);
  n.add(1, 0, 2);
  n.add_eps(2, 0);
  n.initials = {0};
  n.finals = {false, true, false};
  for (int len = 0; len < 5; ++len) EXPECT_TRUE(nfa_accepts(n, Word(size_t(len), 0)));
}

TEST(Minimize, ParityAlreadyMinimal) {
  auto md = minimize(parity());
  EXPECT_EQ(md.classes.size(), 2u);
}

TEST(Minimize, DuplicatedAcceptingState) {
  Dfa d(letters(1), 3);
  d.set(0, 0, 1);
  d.set(1, 0, 2);
  d.set(2, 0, 1);
  d.finals = {true, true, true};
  auto md = minimize(d);
  // 0 and the 1/2 loop are all accepting forever: a single class
  EXPECT_EQ(md.classes.size(), 1u);
  Dfa e(letters(2), 3);  // a* with duplicate accepting state and a sink
  e.set(0, 0, 1), e.set(0, 1, 2);
  e.set(1, 0, 0), e.set(1, 1, 2);
  e.set(2, 0, 2), e.set(2, 1, 2);
  e.finals = {true, true, false};
  EXPECT_EQ(minimize(e).classes.size(), 2u);
}

TEST(Minimize, ModFixtureMinimal) {
  EXPECT_EQ(minimize(make_bp_automaton(BpKind::MOD, 7)).classes.size(), 8u);
}

// ∼ by word enumeration: q ∼ q' iff they agree on every word of length ≤ 2|Q|
TEST(Minimize, SoundnessExhaustiveWords) {
  std::mt19937 rng(7);
  for (int it = 0; it < 300; ++it) {
    int n = 1 + int(rng() % 5), k = 1 + int(rng() % 3);
    Dfa d = random_dfa(rng, n, k);
    auto md = minimize(d);
    auto words = all_words(k, std::min(2 * n, 7));
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) {
        if (!md.reachable.test(size_t(p)) || !md.reachable.test(size_t(q))) continue;
        bool same = true;
        for (auto& w : words) same = same && d.finals[size_t(d.run_from(p, w))] == d.finals[size_t(d.run_from(q, w))];
        EXPECT_EQ(same, md.class_of[size_t(p)] == md.class_of[size_t(q)]);
      }
    for (auto& w : words) EXPECT_EQ(d.accepts(w), md.minimal.accepts(w));
  }
}

TEST(Determinize, DeterministicInputSingletonSubsets) {
  Dfa d = astar_bstar();
  Dfa e = determinize(Nfa::from_dfa(d));
  EXPECT_EQ(e.num_states, d.num_states);
  EXPECT_TRUE(equivalent(d, e));
}

TEST(Determinize, SuffixB) {
  Nfa n(letters(2), 2);
  n.add(0, 0, 0), n.add(0, 1, 0), n.add(0, 1, 1);
  n.initials = {0};
  n.finals = {false, true};
  EXPECT_EQ(minimize(determinize(n)).minimal.num_states, 2);
}

TEST(Determinize, RandomNfasUpToLength8) {
  std::mt19937 rng(11);
  for (int it = 0; it < 200; ++it) {
    int n = 1 + int(rng() % 4), k = 1 + int(rng() % 2);
    Nfa m = random_nfa(rng, n, k);
    Dfa d = determinize(m);
    for (auto& w : all_words(k, 8)) ASSERT_EQ(d.accepts(w), nfa_accepts(m, w));
  }
}

TEST(Product, BooleanLaws) {
  std::mt19937 rng(3);
  for (int it = 0; it < 100; ++it) {
    Dfa a = random_dfa(rng, 3, 2), b = random_dfa(rng, 4, 2);
    Dfa i = product_intersect(a, b), aa = product_intersect(a, a);
    Dfa dm = complement(product_union(complement(a), complement(b)));
    for (auto& w : all_words(2, 6)) {
      EXPECT_EQ(i.accepts(w), a.accepts(w) && b.accepts(w));
      EXPECT_EQ(aa.accepts(w), a.accepts(w));
      EXPECT_EQ(dm.accepts(w), i.accepts(w));
      EXPECT_EQ(complement(complement(a)).accepts(w), a.accepts(w));
    }
  }
}

TEST(Product, AlphabetMismatch) {
  try {
    product_intersect(parity(), astar_bstar());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::AlphabetMismatch);
  }
}

TEST(Product, ParityTimesAStar) {
  Dfa astar(letters(1), 1);
  astar.finals = {true};
  Dfa p = product_intersect(parity(), astar);
  for (int n = 0; n < 8; ++n) EXPECT_EQ(p.accepts(Word(size_t(n), 0)), n % 2 == 0);
}

TEST(Product, CyclicFixtureSmallestNonemptyWitness) {
  Dfa b = make_bp_automaton(BpKind::LT, 7);
  Dfa plus(b.alphabet, 2);  // a·a*
  plus.set(0, 0, 1), plus.set(1, 0, 1);
  plus.finals = {false, true};
  auto ws = enumerate_language(product_intersect(b, plus), 12);
  ASSERT_FALSE(ws.empty());
  EXPECT_EQ(ws[0], Word(7, 0));
}

TEST(Complement, Basics) {
  Dfa astar(letters(2), 2);  // a* over {a,b}
  astar.set(0, 0, 0), astar.set(0, 1, 1), astar.set(1, 0, 1), astar.set(1, 1, 1);
  astar.finals = {true, false};
  EXPECT_TRUE(complement(astar).accepts({1}));
  Dfa c = complement(parity());
  for (int n = 0; n < 7; ++n) EXPECT_EQ(c.accepts(Word(size_t(n), 0)), n % 2 == 1);
}

TEST(Enumerate, Examples) {
  auto ws = enumerate_language(parity(), 4);
  ASSERT_EQ(ws.size(), 3u);
  EXPECT_EQ(ws[1], Word(2, 0));
  Dfa empty(letters(1), 1);
  EXPECT_TRUE(enumerate_language(empty, 5).empty());
  auto bs = enumerate_language(make_bp_automaton(BpKind::LT, 7), 8);
  ASSERT_EQ(bs.size(), 2u);
  EXPECT_EQ(bs[1], Word(7, 0));
  EXPECT_THROW(enumerate_language(parity(), 13), Error);
}

TEST(Enumerate, LengthLexOrder) {
  auto ws = enumerate_language(astar_bstar(), 3);
  for (size_t i = 1; i < ws.size(); ++i)
    EXPECT_TRUE(ws[i - 1].size() < ws[i].size() || (ws[i - 1].size() == ws[i].size() && ws[i - 1] < ws[i]));
}

Nfa unary_from(std::vector<int> accepted_lengths, int max_len) {
  Nfa n(letters(1), max_len + 1);
  for (int i = 0; i < max_len; ++i) n.add(i, 0, i + 1);
  for (int l : accepted_lengths) n.finals[size_t(l)] = true;
  n.initials = {0};
  return n;
}

TEST(Unary, Classification) {
  Nfa even(letters(1), 2);
  even.add(0, 0, 1), even.add(1, 0, 0);
  even.initials = {0};
  even.finals = {true, false};
  EXPECT_EQ(unary_eventually_constant(even).kind, UnaryClass::Neither);

  Nfa aaa(letters(1), 3);  // a·a·a*
  aaa.add(0, 0, 1), aaa.add(1, 0, 2), aaa.add(2, 0, 2);
  aaa.initials = {0};
  aaa.finals = {false, false, true};
  auto c = unary_eventually_constant(aaa);
  EXPECT_EQ(c.kind, UnaryClass::Cofinite);
  EXPECT_EQ(c.exceptions, (std::vector<int>{0, 1}));

  auto f = unary_eventually_constant(unary_from({3}, 3));
  EXPECT_EQ(f.kind, UnaryClass::Finite);
  EXPECT_EQ(f.exceptions, (std::vector<int>{3}));
  EXPECT_THROW(unary_eventually_constant(Nfa(letters(2), 1)), Error);
}

// Neither iff the minimal DFA is not aperiodic
TEST(Unary, AgreesWithAperiodicity) {
  std::mt19937 rng(5);
  for (int it = 0; it < 200; ++it) {
    Nfa m = random_nfa(rng, 1 + int(rng() % 5), 1);
    auto c = unary_eventually_constant(m);
    bool ap = is_aperiodic(TransitionMonoid::of(minimize(determinize(m)).minimal));
    EXPECT_EQ(c.kind == UnaryClass::Neither, !ap);
  }
}

TEST(Io, RoundTripAndRejection) {
  Dfa d = astar_bstar();
  auto back = std::get<Dfa>(parse_automaton(to_json(d)));
  EXPECT_TRUE(equivalent(d, back));
  EXPECT_THROW(parse_automaton(R"({"type":"dfa","alphabet":["a"],"states":1,"initial":0,"finals":[],"transitions":[[0,"a",0]],"extra":1})"), Error);
  EXPECT_THROW(parse_automaton(R"({"type":"dfa","alphabet":["a","b"],"states":1,"initial":0,"finals":[],"transitions":[[0,"a",0]]})"), Error);
  auto n = std::get<Nfa>(parse_automaton(R"({"type":"nfa","alphabet":["a"],"states":2,"initials":[0],"finals":[1],"transitions":[[0,"eps",1]]})"));
  EXPECT_TRUE(nfa_accepts(n, {}));
}
