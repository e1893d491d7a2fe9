#pragma once
// Linear Horn ○-ontologies: the gadget 2NFA, atomic types from behaviours,
// the OMAQ language DFA, the type-set DFA and the OMPQ criteria.
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fodef/ltl.hpp"
#include "fodef/twoway.hpp"

namespace fodef::horn {

// ○^offset atom
struct Literal {
  int offset = 0;
  std::string atom;
};

// edb ∧ (idb) → head; the IDB literal, if any, has offset in {−1, 0, 1}
struct LinearAxiom {
  std::vector<Literal> edb;
  std::optional<Literal> idb;
  std::string head;
};

struct LinearHornNormal {
  std::vector<LinearAxiom> axioms;
  std::set<std::string> idb;
  int M = 0;  // ○ occurrences
  int N = 0;  // padding M + 2M²
};

// Reads an ontology already in normal form (NotNormalized / NotLinear otherwise).
LinearHornNormal linear_normal_form(const ltl::Ontology& o);
// normalize_horn, then linear_normal_form
LinearHornNormal normalize_linear(const ltl::Ontology& o);

struct HornTwoNfa {
  TwoNfa t;
  std::vector<std::string> xi;
  int q0 = 0, qh = 1;
  std::map<std::string, int> q_atom;  // q_A; entered by a right move off the position where A holds
  int qB = -1;                         // accepting copy for the query atom, if any
  int N = 0;
};

// No final states. Atoms of Ξ that are IDB (or the query atom) also get a
// direct fact transition q0 → q_A on letters containing them.
HornTwoNfa build_A_O(const LinearHornNormal& o, const std::vector<std::string>& xi,
                     const std::string& query_atom = "");
// adds the accepting state q_B looping right
HornTwoNfa build_A_q(const LinearHornNormal& o, const std::vector<std::string>& xi, const std::string& query_atom);

// IDB atoms A with (q0, q_A) ∈ b_lr(w≤ℓ) ∘ X_w(ℓ), plus the atoms of w[ℓ]
std::set<std::string> atomic_types_via_behaviors(const HornTwoNfa& h, const Word& w, int ell);
// every position at once, from prefix and suffix behaviours
std::vector<std::set<std::string>> atomic_types_all(const HornTwoNfa& h, const Word& w);
// the same set by direct configuration search
std::set<std::string> atomic_types_via_runs(const HornTwoNfa& h, const Word& w, int ell);

// Boolean ⊥-free linear Horn ○ OMAQ → minimal DFA of its language, with ∅^N
// absorbed into the start and final data.
struct LinearOmaqDfa {
  Dfa dfa;            // minimal
  size_t raw_states;  // before minimization
  HornTwoNfa automaton;
};
LinearOmaqDfa omaq_language_dfa_linear(const ltl::OmqSpec& q, size_t cap = 1u << 16);

// Specific OMAQ simulating a DFA: Ξ = letters ∪ {X, Y}, query F_end.
ltl::OmqSpec dfa_simulation_omaq(const Dfa& d);

// ---- type-set DFA ----
constexpr int kTypeSetCap = 4096;

struct TypeSetDfa {
  ltl::TypeSystem ts;
  std::vector<int> universe;          // type indices with good past and future
  std::vector<BitSet> sets;           // DFA state -> subset of universe
  Dfa dfa;                            // state 0 = the full universe (position −1)
  std::vector<BitSet> succ;           // per universe index
  std::vector<BitSet> letter_ok;      // per letter: types containing it
  int kappa = -1;                     // node of the (◇P◇F-wrapped) query
  // τ_{O,w}(p) for p = −1..|w|−1 at index p+1, as elementary-formula masks
  std::vector<uint32_t> canonical_types(const Word& w) const;
};

// ⊥-removal, Specific→Boolean and the ◇P◇F wrap, as needed
ltl::OmqSpec prepare_ompq(const ltl::OmqSpec& q);
TypeSetDfa build_typeset_dfa(const ltl::OmqSpec& prepared, int cap = kTypeSetCap, size_t state_cap = 1u << 16);

// ---- OMPQ criteria ----
enum class Outcome { Witness, None, Unknown };
const char* outcome_name(Outcome o);

struct OmpqWitness {
  Word a, b, d;
  int k = 0;
  Word v, u;  // b = v·u, |v| = |u| (FO(<,≡) criterion only)
};

struct OmpqCriterion {
  Outcome outcome = Outcome::Unknown;
  std::optional<OmpqWitness> witness;
  std::string note;
};

struct OmpqOptions {
  int type_cap = kTypeSetCap;
  size_t state_cap = 1u << 16;
  int length_cap = 64;  // |A|, |B|, |D|, k
};

OmpqCriterion criterion_ompq_fo(const ltl::OmqSpec& q, const OmpqOptions& opt = {});
OmpqCriterion criterion_ompq_fo_eq(const ltl::OmqSpec& q, const OmpqOptions& opt = {});
// conditions replayed on canonical types
bool check_ompq_fo_witness(const TypeSetDfa& t, const OmpqWitness& w);
bool check_ompq_fo_eq_witness(const TypeSetDfa& t, const OmpqWitness& w);

}  // namespace fodef::horn
