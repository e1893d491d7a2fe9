#pragma once
// Fragment-specific FO(<)-rewritability procedures and the dispatcher:
// Krom ○-OMAQs (unary languages over the literal graph), core ○-OMPEQs
// (layered automata per data pattern), core → linear Horn, and the generic
// language-automaton route.
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fodef/algebra.hpp"
#include "fodef/fo_formula.hpp"
#include "fodef/horn_linear.hpp"
#include "fodef/ltl.hpp"

namespace fodef {

// ---- Krom ----

// Literals 2i (atom i) and 2i+1 (¬atom i). Offsets beyond a difference of one
// per clause are split with fresh atoms Z ↔ ○Z', so every edge has d ∈ {−1,0,1}.
struct LiteralGraph {
  std::vector<std::string> atoms;
  std::vector<std::vector<std::pair<int, int>>> edges;  // lit -> (lit', d)
  int W = 0;                                            // clamp 2·|lit|² + 1
  bool empty_clause = false;                            // ⊤ → ⊥ present

  int num_literals() const { return int(2 * atoms.size()); }
  int literal(const std::string& atom, bool negated) const;  // throws BadInput
  // "A" or "~A"
  int parse_literal(const std::string& s) const;
  std::string name(int lit) const;
  static int neg(int lit) { return lit ^ 1; }

  // (lit', w) reachable from (lit, 0) with every intermediate |w| ≤ W
  bool reaches(int from, int to, int w) const;
  bool unsatisfiable(int lit) const;  // {lit(0)} inconsistent with O
  bool inconsistent() const;          // O has no model
  // O ⊨ L → ○^d L'
  bool entails(int l, int l2, int d) const;

 private:
  mutable std::map<int, std::vector<char>> reach_;
  mutable std::vector<signed char> unsat_;
  mutable signed char incons_ = -1;
  const std::vector<char>& reach_from(int l) const;
};

// extra: atoms to include besides sig(O) (the query atom, Ξ)
LiteralGraph literal_graph(const ltl::Ontology& o, const std::vector<std::string>& extra = {});
bool krom_entailment(const LiteralGraph& g, int l, int l2, int d);
// unary NFA for {aⁿ | O ⊨ L1 → ○ⁿ L2}, states = literals
Nfa krom_unary_nfa(const LiteralGraph& g, int l1, int l2);

// Boolean (Specific) Krom OMAQ with data atoms X, Y: inconsistent (an
// answer) iff X(i), Y(j) with a^{j−i−1} ∈ L(n); query atom fresh.
ltl::OmqSpec krom_hardness_omaq(const Nfa& n);

struct KromClassification {
  std::vector<std::string> exists_set, forall_set;  // Ξ^∃_A, Ξ^∀_A
  // "L1,L2" (literal names) -> class of L_{L1L2}
  std::map<std::string, UnaryClass> per_pair;
};

struct KromDecision {
  bool rewritable = false;
  KromClassification cls;
  std::optional<fo::FPtr> rewriting;  // when rewritable
  std::string reason;                 // failing language when not
};
KromDecision krom_decide_fo(const ltl::OmqSpec& q);

// ---- core ----

// core ○ OMPQ → Ξ-equivalent linear Horn OMPQ
ltl::OmqSpec core_to_linear(const ltl::OmqSpec& q);

// letterwise upward closure over a powerset alphabet Σ_Ξ
Dfa upward_closure_dfa(const Dfa& d);
// data patterns a_1…a_k of non-empty letters with Σ|a_i| ≤ n
std::vector<Word> data_patterns(size_t n_xi, int n);
// L((∅* a_1) … (∅* a_k) ∅*)
Dfa pattern_dfa(const Word& w, const Alphabet& sigma);

struct CoreOmpeqDecision {
  bool rewritable = false;
  int bound = 0;                   // n in W_{n,Ξ}
  std::vector<Word> patterns;      // W_{n,Ξ}
  std::optional<Word> failing;     // a pattern whose L_w is not FO(<)-definable
  std::vector<std::string> xi;     // Ξ of the Boolean OMQ the patterns range over
};
struct CoreOmpeqOptions {
  int max_bound = 6;
  size_t max_patterns = 5000;
  int type_cap = horn::kTypeSetCap;
};
// the layered automaton A_w: one copy of the type-set DFA per gap, ∅ inside,
// a_j between consecutive copies
Dfa layered_automaton(const horn::TypeSetDfa& t, const Word& w);
CoreOmpeqDecision core_ompeq_decide_fo(const ltl::OmqSpec& q, const CoreOmpeqOptions& opt = {});

// ---- dispatch ----

enum class Target { FO, FO_EQ, FO_MOD, Ladder };
const char* target_name(Target t);
Target parse_target(const std::string& s);
enum class Verdict { Yes, No, Unknown };
const char* verdict_name(Verdict v);

struct DecideOptions {
  std::string route = "auto";  // auto | generic | krom | core-ompeq | core-linear | linear-omaq | linear-ompq
  int type_cap = ltl::kDefaultTypeCap;
  size_t monoid_cap = kDefaultMonoidCap;
  int gap_cap = 64;
  bool cross_check = false;
};

struct DecisionReport {
  Target target = Target::FO;
  Verdict verdict = Verdict::Unknown;
  std::string route;
  std::optional<DefClass> lowest;  // ladder target, or when a route determines it
  std::optional<std::string> rewriting;
  std::map<std::string, std::string> evidence;  // witnesses and notes, sorted
  std::vector<std::string> caps_hit;
  std::optional<Verdict> generic;  // cross-check verdict
};
// route "auto" resolves to this: the most specific fragment procedure for q
std::string pick_route(const ltl::OmqSpec& q, Target target);
DecisionReport decide_rewritability(const ltl::OmqSpec& q, Target target, const DecideOptions& opt = {});

}  // namespace fodef
