#pragma once
// Two-way NFAs, their behaviour quadruples and the conversion to one-way DFAs.
#include <utility>
#include <vector>

#include "fodef/algebra.hpp"
#include "fodef/automata.hpp"

namespace fodef {

struct TwoNfa {
  Alphabet alphabet;
  int num_states = 0;
  // trans[q][a] = list of (target, direction ∈ {-1,0,1})
  std::vector<std::vector<std::vector<std::pair<int, int>>>> trans;
  std::vector<int> initials;
  std::vector<bool> finals;

  TwoNfa() = default;
  TwoNfa(Alphabet a, int n);
  void add(int q, int a, int r, int dir);
  int add_state(bool final = false);
  void validate() const;
  static TwoNfa from_nfa(const Nfa& n);  // ε-free NFAs only
};

struct Behavior {
  Relation lr, rl, rr, ll;
  bool operator==(const Behavior& o) const { return lr == o.lr && rl == o.rl && rr == o.rr && ll == o.ll; }
  size_t hash() const { return ((lr.hash() * 31 + rl.hash()) * 31 + rr.hash()) * 31 + ll.hash(); }
};
struct BehaviorHash {
  size_t operator()(const Behavior& b) const { return b.hash(); }
};

// behaviour assigned to ε by convention: all four components the identity
Behavior identity_behavior(int n);
// two-sided unit of behavior_compose: (id, id, ∅, ∅)
Behavior neutral_behavior(int n);
Behavior behavior_of_letter(const TwoNfa& t, int a);
Behavior behavior_compose(const Behavior& b, const Behavior& b2);
Behavior behavior_of_word(const TwoNfa& t, const Word& w);
// Direct definition of the four behaviours by configuration search on w
// (padding letter for b_rl/b_ll taken from the alphabet, unioned).
Behavior behavior_by_search(const TwoNfa& t, const Word& w);

struct BehaviorDfaState {
  Relation blr;  // rows outside Q0 are empty
  Relation brr;
  bool operator==(const BehaviorDfaState& o) const { return blr == o.blr && brr == o.brr; }
};

BehaviorDfaState behavior_dfa_start(const TwoNfa& t);
BehaviorDfaState behavior_dfa_step(const BehaviorDfaState& s, const Behavior& letter);
// closed form: apply a whole word's behaviour to a state
BehaviorDfaState behavior_dfa_apply(const BehaviorDfaState& s, const Behavior& word);

struct TwoNfaDfa {
  Dfa dfa;
  std::vector<BehaviorDfaState> states;
};
TwoNfaDfa twonfa_to_dfa_full(const TwoNfa& t, size_t cap = 1u << 20);
Dfa twonfa_to_dfa(const TwoNfa& t);

bool twonfa_accepts(const TwoNfa& t, const Word& w);

constexpr int kDefaultTwoNfaCap = 12;
struct TwoNfaVerdict {
  DefinabilityVerdict verdict;
  size_t behavior_monoid_size = 0;
  size_t dfa_states = 0;
  std::optional<Word> fo_u, fo_eq_v, mod_v;
  std::optional<Word> fo_eq_u, mod_u;
};
// Witness search over the monoid of behaviours (no minimization of the
// converted DFA is involved).
TwoNfaVerdict twonfa_definability(const TwoNfa& t, int state_cap = kDefaultTwoNfaCap, size_t monoid_cap = 200000);

}  // namespace fodef
