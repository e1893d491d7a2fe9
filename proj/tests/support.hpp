#pragma once
#include <random>

#include "fodef/automata.hpp"
#include "fodef/twoway.hpp"

namespace fodef::testing {

inline Alphabet letters(int k) {
  std::vector<std::string> s;
  for (int i = 0; i < k; ++i) s.push_back(std::string(1, char('a' + i)));
  return Alphabet(s);
}

inline Dfa parity() {
  Dfa d(letters(1), 2);
  d.set(0, 0, 1);
  d.set(1, 0, 0);
  d.finals = {true, false};
  return d;
}

// a*b*
inline Dfa astar_bstar() {
  Dfa d(letters(2), 3);
  d.set(0, 0, 0), d.set(0, 1, 1);
  d.set(1, 0, 2), d.set(1, 1, 1);
  d.set(2, 0, 2), d.set(2, 1, 2);
  d.finals = {true, true, false};
  return d;
}

inline Dfa random_dfa(std::mt19937& rng, int n, int k, double pf = 0.4) {
  Dfa d(letters(k), n);
  std::uniform_int_distribution<int> st(0, n - 1);
  std::bernoulli_distribution fin(pf);
  for (int q = 0; q < n; ++q) {
    for (int a = 0; a < k; ++a) d.set(q, a, st(rng));
    d.finals[size_t(q)] = fin(rng);
  }
  d.initial = 0;
  return d;
}

inline Nfa random_nfa(std::mt19937& rng, int n, int k, double pe = 0.35, double peps = 0.1) {
  Nfa m(letters(k), n);
  std::bernoulli_distribution e(pe), ep(peps), fin(0.4);
  for (int q = 0; q < n; ++q) {
    for (int a = 0; a < k; ++a)
      for (int r = 0; r < n; ++r)
        if (e(rng)) m.add(q, a, r);
    for (int r = 0; r < n; ++r)
      if (r != q && ep(rng)) m.add_eps(q, r);
    m.finals[size_t(q)] = fin(rng);
  }
  m.initials = {0};
  return m;
}

inline TwoNfa random_twonfa(std::mt19937& rng, int n, int k, int transitions) {
  TwoNfa t(letters(k), n);
  std::uniform_int_distribution<int> st(0, n - 1), let(0, k - 1), dir(-1, 1);
  std::bernoulli_distribution fin(0.4);
  for (int i = 0; i < transitions; ++i) t.add(st(rng), let(rng), st(rng), dir(rng));
  for (int q = 0; q < n; ++q) t.finals[size_t(q)] = fin(rng);
  t.initials = {0};
  return t;
}

// The two-way automaton of the worked behaviour example (states named as there).
struct Figure1 {
  TwoNfa t;
  std::vector<std::string> names{"q0", "r", "s", "t", "v", "w", "u", "y", "z", "p", "g", "h", "x", "q"};
  int id(const std::string& s) const {
    for (size_t i = 0; i < names.size(); ++i)
      if (names[i] == s) return int(i);
    throw std::runtime_error("no state " + s);
  }
  Figure1() : t(letters(2), 14) {
    auto add = [&](const char* a, const char* sym, const char* b, int d) { t.add(id(a), sym[0] - 'a', id(b), d); };
    add("q0", "a", "r", 1);
    add("r", "b", "s", 1);
    add("s", "a", "t", 0);
    add("t", "a", "v", 1);
    add("t", "a", "u", -1);
    add("v", "b", "w", -1);
    add("w", "a", "u", -1);
    add("u", "b", "y", 1);
    add("y", "a", "z", 1);
    add("z", "b", "p", 1);
    add("u", "b", "g", -1);
    add("g", "a", "h", -1);
    add("w", "a", "x", 1);
    add("x", "b", "q", 1);
    t.initials = {id("q0")};
    t.finals[size_t(id("q"))] = true;
  }
  Relation rel(std::initializer_list<std::pair<const char*, const char*>> ps) const {
    Relation r(14);
    for (auto& [a, b] : ps) r.set(size_t(id(a)), size_t(id(b)));
    return r;
  }
};

}  // namespace fodef::testing

namespace fodef {
inline void PrintTo(const Relation& r, std::ostream* os) {
  *os << "{";
  for (auto [a, b] : r.pairs()) *os << "(" << a << "," << b << ")";
  *os << "}";
}
inline void PrintTo(const Behavior& b, std::ostream* os) {
  *os << "lr=", PrintTo(b.lr, os), *os << " rl=", PrintTo(b.rl, os);
  *os << " rr=", PrintTo(b.rr, os), *os << " ll=", PrintTo(b.ll, os);
}
inline void PrintTo(const BehaviorDfaState& s, std::ostream* os) {
  *os << "blr=", PrintTo(s.blr, os), *os << " brr=", PrintTo(s.brr, os);
}
}  // namespace fodef
