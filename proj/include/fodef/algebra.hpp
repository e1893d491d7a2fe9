#pragma once
// Transition/syntactic monoids, group detection and the definability ladder.
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "fodef/automata.hpp"

namespace fodef {

using StateMap = std::vector<int>;

struct StateMapHash {
  size_t operator()(const StateMap& m) const {
    size_t h = m.size();
    for (int x : m) h = h * 1000003u + size_t(x);
    return h;
  }
};

constexpr size_t kDefaultMonoidCap = 20000;
constexpr size_t kDefaultGroupCap = 10000;

// Elements are indexed in discovery order; element i carries a shortest,
// length-lexicographically least word realizing it. Products follow the
// global convention: element x·y maps q to y(x(q)).
class TransitionMonoid {
 public:
  static TransitionMonoid of(const Dfa& d, size_t cap = kDefaultMonoidCap);

  size_t size() const { return maps_.size(); }
  int num_states() const { return n_; }
  int num_letters() const { return k_; }
  const StateMap& map(int x) const { return maps_[size_t(x)]; }
  const Word& witness(int x) const { return witness_[size_t(x)]; }
  int identity() const { return 0; }
  int generator(int a) const { return gen_[size_t(a)]; }
  int right(int x, int a) const { return right_[size_t(x) * size_t(k_) + size_t(a)]; }
  int find(const StateMap& m) const;  // -1 if not an element
  int mul(int x, int y) const;
  int power(int x, long long e) const;
  bool idempotent(int x) const { return mul(x, x) == x; }
  // index/period of the cyclic subsemigroup generated by x
  std::pair<int, int> index_period(int x) const;

 private:
  int n_ = 0, k_ = 0;
  std::vector<StateMap> maps_;
  std::vector<Word> witness_;
  std::vector<int> gen_;
  std::vector<int> right_;
  std::unordered_map<StateMap, int, StateMapHash> index_;
};

// Eventually periodic sequence S_t = η(Σ^t), t ≥ 1, with length-t witnesses.
struct LengthImages {
  std::vector<BitSet> sets;  // sets[i] = S_{i+1}
  int prefix = 0;            // S_{prefix+1+j} = S_{prefix+1+j+cycle}
  int cycle = 0;
  // word of length i+1 realizing element x in S_{i+1} (i < sets.size())
  std::vector<std::unordered_map<int, std::pair<int, int>>> parent;  // x -> (prev element, letter)
  Word word_for(int i, int x) const;
  const BitSet& at(long long t) const;  // t ≥ 1
};
LengthImages length_images(const TransitionMonoid& m);

struct SyntacticData {
  MinimizationData minimal;
  TransitionMonoid monoid;
  LengthImages images;
};
SyntacticData syntactic_data(const Dfa& d, size_t cap = kDefaultMonoidCap);

// s with all positive powers in S and s^n ≠ s^{n+1} for every n
std::optional<int> contains_nontrivial_group(const TransitionMonoid& m, const BitSet& s);
bool is_aperiodic(const TransitionMonoid& m);
bool is_quasi_aperiodic(const SyntacticData& sd);

struct GroupSubset {
  std::vector<int> members;  // monoid element indices, ascending
  int identity = 0;
  std::unordered_map<int, int> inverse;
  std::unordered_map<int, int> order;
  size_t size() const { return members.size(); }
};
GroupSubset make_group(const TransitionMonoid& m, std::vector<int> members, int identity);
std::vector<GroupSubset> maximal_subgroups(const TransitionMonoid& m);
bool is_solvable(const TransitionMonoid& m, const GroupSubset& g, size_t cap = kDefaultGroupCap);

struct KaplanLevyTriple {
  int a, b, c;
};
std::optional<KaplanLevyTriple> kaplan_levy(const TransitionMonoid& m, const GroupSubset& g);

enum class DefClass { FO_LT, FO_LT_EQ, FO_LT_MOD, FO_RPR_ONLY };
const char* def_class_name(DefClass c);
std::string def_class_key(DefClass c);

struct DefinabilityVerdict {
  DefClass lowest = DefClass::FO_LT;
  std::optional<int> aperiodicity_witness;     // element of M(L) with period > 1
  std::optional<int> quasi_length;             // t with a group inside η(Σ^t)
  std::optional<size_t> unsolvable_group_size;
};
DefinabilityVerdict definability_verdict(const Dfa& d, size_t cap = kDefaultMonoidCap);
DefinabilityVerdict verdict_from_syntactic(const SyntacticData& sd, size_t group_cap = kDefaultGroupCap);

struct FoWitness {
  Word u;
  int q, k;
};
struct FoEqWitness {
  Word u, v;
  int q, k;
};
struct FoModWitness {
  Word u, v;
  int q, k, l;
};
std::optional<FoWitness> criterion_fo(const Dfa& d, size_t cap = kDefaultMonoidCap);
std::optional<FoEqWitness> criterion_fo_eq(const Dfa& d, size_t cap = kDefaultMonoidCap);
std::optional<FoModWitness> criterion_fo_mod(const Dfa& d, size_t cap = kDefaultMonoidCap);

// Literal replay of the criterion conditions through dfa runs.
bool check_fo_witness(const Dfa& d, const FoWitness& w);
bool check_fo_eq_witness(const Dfa& d, const FoEqWitness& w);
bool check_fo_mod_witness(const Dfa& d, const FoModWitness& w);

Dfa expand_language(const Dfa& d, const std::vector<std::string>& gamma, const std::vector<std::string>& delta,
                    const std::string& x = "x", const std::string& y = "y");

enum class BpKind { LT, EQ, MOD };
Dfa make_bp_automaton(BpKind kind, int p);
bool is_prime(long long n);

}  // namespace fodef
