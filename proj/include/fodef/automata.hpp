#pragma once
// One-way automata: DFAs, ε-NFAs, minimization, determinization, products.
#include <optional>
#include <string>
#include <vector>

#include "fodef/bitset.hpp"
#include "fodef/error.hpp"

namespace fodef {

using Word = std::vector<int>;

class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  size_t size() const { return symbols_.size(); }
  const std::string& symbol(int i) const { return symbols_[size_t(i)]; }
  const std::vector<std::string>& symbols() const { return symbols_; }
  // -1 if absent
  int find(const std::string& s) const;
  int index(const std::string& s) const;  // throws UnknownSymbol
  bool operator==(const Alphabet& o) const { return symbols_ == o.symbols_; }

  Word parse_word(const std::string& text) const;
  std::string format(const Word& w) const;

 private:
  std::vector<std::string> symbols_;
};

struct Dfa {
  Alphabet alphabet;
  int num_states = 0;
  std::vector<int> delta;  // delta[q * |Σ| + a]
  int initial = 0;
  std::vector<bool> finals;

  Dfa() = default;
  Dfa(Alphabet a, int n);
  int k() const { return int(alphabet.size()); }
  int next(int q, int a) const { return delta[size_t(q) * alphabet.size() + size_t(a)]; }
  void set(int q, int a, int r) { delta[size_t(q) * alphabet.size() + size_t(a)] = r; }
  int run_from(int q, const Word& w) const;
  bool accepts(const Word& w) const { return finals[size_t(run_from(initial, w))]; }
  void validate() const;
};

struct Nfa {
  Alphabet alphabet;
  int num_states = 0;
  std::vector<std::vector<std::vector<int>>> trans;  // trans[q][a]
  std::vector<std::vector<int>> eps;                 // eps[q]
  std::vector<int> initials;
  std::vector<bool> finals;

  Nfa() = default;
  Nfa(Alphabet a, int n);
  void add(int q, int a, int r) { trans[size_t(q)][size_t(a)].push_back(r); }
  void add_eps(int q, int r) { eps[size_t(q)].push_back(r); }
  int add_state(bool final = false);
  BitSet closure(const BitSet& s) const;
  BitSet step(const BitSet& s, int a) const;  // includes ε-closure of the result
  static Nfa from_dfa(const Dfa& d);
};

int dfa_run(const Dfa& d, const Word& w);
bool nfa_accepts(const Nfa& n, const Word& w);

struct MinimizationData {
  BitSet reachable;
  std::vector<std::vector<int>> classes;  // each class sorted ascending
  std::vector<int> class_of;              // -1 for unreachable states
  Dfa minimal;
};

BitSet reachable_states(const Dfa& d);
MinimizationData minimize(const Dfa& d);
Dfa determinize(const Nfa& n);
Dfa product_intersect(const Dfa& a, const Dfa& b);
Dfa product_union(const Dfa& a, const Dfa& b);
Dfa complement(const Dfa& d);
// every state reachable; states renumbered in BFS order
Dfa trim_reachable(const Dfa& d);

constexpr int kDefaultEnumerateCap = 12;
std::vector<Word> enumerate_language(const Dfa& d, int max_len, int cap = kDefaultEnumerateCap);
// all words over k letters of length ≤ max_len in length-lexicographic order
std::vector<Word> all_words(int k, int max_len);

// language equality via product reachability
bool equivalent(const Dfa& a, const Dfa& b);
// shortest word in the symmetric difference, if any
std::optional<Word> distinguishing_word(const Dfa& a, const Dfa& b);

struct UnaryClass {
  enum Kind { Finite, Cofinite, Neither } kind;
  std::vector<int> exceptions;  // accepted lengths (Finite) or rejected lengths (Cofinite)
  int prefix = 0, period = 1;   // lasso of the minimal DFA
};
UnaryClass unary_eventually_constant(const Nfa& n);

}  // namespace fodef
