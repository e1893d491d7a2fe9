#pragma once
// LTL ontologies, OMQs, ABox words, the Horn chase and the type automata.
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "fodef/automata.hpp"

namespace fodef::ltl {

enum class Kind { Atom, Top, Bot, Not, And, Or, NextF, NextP, BoxF, BoxP, DiaF, DiaP };

struct Concept;
using CPtr = std::shared_ptr<const Concept>;

struct Concept {
  Kind kind = Kind::Atom;
  std::string name;  // atoms only
  CPtr a, b;
  int line = 0, col = 0;
};

CPtr atom(const std::string& name);
CPtr top();
CPtr bot();
CPtr unary(Kind k, CPtr c);
CPtr binary(Kind k, CPtr a, CPtr b);
CPtr conj(const std::vector<CPtr>& cs);  // top for an empty list
CPtr disj(const std::vector<CPtr>& cs);  // bot for an empty list
// ○^j A for an integer offset j
CPtr shifted(const std::string& a, int j);

std::string to_string(const CPtr& c);
bool is_temporal(Kind k);
bool is_future(Kind k);
bool is_positive(const CPtr& c);
bool is_positive_existential(const CPtr& c);
bool has_box(const CPtr& c);
bool has_next(const CPtr& c);
void collect_atoms(const CPtr& c, std::set<std::string>& out);
// atoms under nests of Of/Op/Bf/Bp only
bool is_basic(const CPtr& c);
// (offset, atom) of a ○-only basic concept
std::optional<std::pair<int, std::string>> next_offset(const CPtr& c);
int count_next(const CPtr& c);

struct Axiom {
  std::vector<CPtr> lhs;  // empty: ⊤
  std::vector<CPtr> rhs;  // empty: ⊥
};
std::string to_string(const Axiom& a);

struct Ontology {
  std::vector<Axiom> axioms;
};

enum class Fragment { Core, Krom, Horn, Bool };
enum class OpClass { Box, Next, BoxNext };
const char* fragment_name(Fragment f);
const char* opclass_name(OpClass o);

struct Classification {
  Fragment c = Fragment::Core;
  OpClass o = OpClass::Next;
  bool has_box = false, has_next = false;
  bool linear = false;  // Horn and every axiom has at most one IDB concept on the left
  bool bot_free = true;
  std::set<std::string> idb;
};
Classification classify(const Ontology& o);
std::set<std::string> signature(const Ontology& o);

enum class Mode { Boolean, Specific };
enum class QueryKind { OMAQ, OMPEQ, OMPQ, OMQ };
const char* query_kind_name(QueryKind k);

struct OmqSpec {
  Ontology ontology;
  CPtr query;
  Mode mode = Mode::Boolean;
  std::vector<std::string> signature;  // Ξ, sorted
};
QueryKind query_kind(const OmqSpec& q);
std::set<std::string> signature(const OmqSpec& q);
std::string to_text(const OmqSpec& q);

CPtr parse_concept(const std::string& text);
Axiom parse_axiom(const std::string& line, int line_no = 1);
Ontology parse_ontology(const std::string& text);
// sections [ontology] [query] [mode boolean|specific] [signature A B]
OmqSpec parse_omq(const std::string& text);
OmqSpec load_omq(const std::string& path);

// ---- ABoxes as words over Σ_Ξ = 2^Ξ ----
using Letter = uint32_t;  // bitmask over Ξ

struct AboxWord {
  std::vector<Letter> letters;
  std::optional<int> mark;
  size_t size() const { return letters.size(); }
};
// lines `Atom@pos`, `window lo hi`, `mark pos`; positions shifted so tem starts at 0
AboxWord parse_abox(const std::string& text, const std::vector<std::string>& xi);
AboxWord load_abox(const std::string& path, const std::vector<std::string>& xi);
std::string abox_to_string(const AboxWord& a, const std::vector<std::string>& xi);

std::string letter_name(Letter a, const std::vector<std::string>& xi);
// Σ_Ξ (unmarked letters 0..2^n−1) or Γ_Ξ (marked letters 2^n + a)
Alphabet sigma_alphabet(const std::vector<std::string>& xi, bool marked);
Word encode(const AboxWord& a, size_t n_xi);
AboxWord decode(const Word& w, size_t n_xi);
// every Ξ-ABox word of length ≤ max_len (and, if marked, every mark position)
std::vector<AboxWord> all_aboxes(size_t n_xi, int max_len, bool marked);

// ---- reductions ----
std::string fresh_atom(const std::set<std::string>& used, const std::string& base);
Ontology normalize_horn(const Ontology& o);
OmqSpec normalize_horn(const OmqSpec& q);
OmqSpec remove_bot(const OmqSpec& q);
OmqSpec specific_to_boolean(const OmqSpec& q);
// the fresh atom X added to Ξ by specific_to_boolean
std::string marker_atom(const OmqSpec& specific, const OmqSpec& boolean);

// ---- canonical models ----
struct ChaseOptions {
  int period = 12;
  int padding = -1;  // default 2·period + M + 2M²
  int max_doublings = 3;
};

// Lasso window: positions 0..W−1 stand for z = lo − padding + i; the first
// and last `period` positions are the periodic tails.
struct CanonicalWindow {
  std::vector<std::string> atoms;
  int padding = 0, period = 0, length = 0;  // length = |tem(A)|
  std::vector<BitSet> at;                     // at[i] over atoms
  int size() const { return int(at.size()); }
  int index_of(int z) const;                  // lasso position of Z-position z
  int atom_index(const std::string& a) const;  // -1 if absent
  bool holds(const std::string& a, int z) const;
  bool eval(const CPtr& c, int i) const;  // at lasso position i
  std::vector<char> eval(const CPtr& c) const;  // at every lasso position
};
CanonicalWindow chase_canonical(const Ontology& o, const AboxWord& a, const std::vector<std::string>& xi,
                                ChaseOptions opt = {}, const CPtr& query = nullptr);

struct Answer {
  bool yes = false;
  std::vector<int> positions;  // Specific mode, ascending
  bool operator==(const Answer& o) const { return yes == o.yes && positions == o.positions; }
};
// canonical model of a ⊥-free Horn ontology, positive query
Answer certain_answer_chase(const OmqSpec& q, const AboxWord& a, ChaseOptions opt = {});
// any ontology and query, via the type automaton
Answer certain_answer_types(const OmqSpec& q, const AboxWord& a);
// same, reusing a prebuilt type_nfa(q)
Answer certain_answer_nfa(const OmqSpec& q, const Nfa& complement_nfa, const AboxWord& a);
// chase when applicable (⊥ handled as inconsistency), types otherwise
Answer certain_answer(const OmqSpec& q, const AboxWord& a);

// ---- types ----
constexpr int kDefaultTypeCap = 18;

// Subformulas are numbered bottom-up; elementary ones (atoms, temporal
// formulas) carry a bit of the type mask.
struct FormulaTable {
  struct Node {
    Kind kind;
    std::string name;
    int a = -1, b = -1;
    int elem = -1;
  };
  std::vector<Node> nodes;
  std::vector<int> elementary;  // node ids, by bit
  int add(const CPtr& c);
  int find(const CPtr& c) const;
  std::vector<char> eval(uint32_t mask) const;
  std::string key(const CPtr& c) const;

 private:
  std::vector<std::pair<std::string, int>> keys_;
};

struct TypeSystem {
  FormulaTable table;
  std::vector<std::string> xi;
  int kappa = -1;                       // node of the query
  std::vector<int> xi_node;             // node of each Ξ atom
  std::vector<uint32_t> types;          // locally consistent masks, ascending
  std::vector<std::vector<int>> succ;   // type successor lists
  std::vector<std::vector<int>> pred;
  std::vector<uint64_t> fut_asserted, fut_fulfilled, past_asserted, past_fulfilled;
  bool value(int type, int node) const;
  Letter xi_letter(int type) const;  // Ξ-atoms true in the type
  std::string describe(int type) const;
};
TypeSystem enumerate_type_system(const OmqSpec& q, int cap = kDefaultTypeCap);

struct GoodSets {
  BitSet fut, past;
};
// nodes with an infinite future (past) inside `allowed` meeting all eventualities
GoodSets good_sets(const TypeSystem& ts, const BitSet& allowed);
// types occurring in some model of the ontology
std::vector<uint32_t> enumerate_types(const OmqSpec& q, int cap = kDefaultTypeCap);

// NFA for the complement of L_Ξ(q) (restricted to well-formed marked words
// in Specific mode).
Nfa type_nfa(const OmqSpec& q, int cap = kDefaultTypeCap);
Nfa type_nfa(const OmqSpec& q, const TypeSystem& ts);
// minimal DFA of L_Ξ(q) over Σ_Ξ (Boolean) or Γ_Ξ (Specific)
Dfa omq_language_dfa(const OmqSpec& q, int cap = kDefaultTypeCap);
// DFA of marked words with exactly one mark
Dfa well_marked_dfa(size_t n_xi);

}  // namespace fodef::ltl
