#include "fodef/horn_linear.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace fodef::horn {

using ltl::CPtr;
using ltl::Kind;

namespace {

int count_next_ontology(const ltl::Ontology& o) {
  int m = 0;
  for (auto& ax : o.axioms) {
    for (auto& c : ax.lhs) m += ltl::count_next(c);
    for (auto& c : ax.rhs) m += ltl::count_next(c);
  }
  return m;
}

}  // namespace

LinearHornNormal linear_normal_form(const ltl::Ontology& o) {
  ltl::Classification cl = ltl::classify(o);
  if (cl.c != ltl::Fragment::Core && cl.c != ltl::Fragment::Horn) throw Error(ErrorKind::NotLinear, "ontology is not Horn");
  if (!cl.bot_free) throw Error(ErrorKind::PreconditionViolated, "ontology contains ⊥");
  if (cl.has_box) throw Error(ErrorKind::PreconditionViolated, "ontology contains □");
  LinearHornNormal out;
  out.idb = cl.idb;
  for (auto& ax : o.axioms) {
    if (ax.rhs.size() != 1 || ax.rhs[0]->kind != Kind::Atom)
      throw Error(ErrorKind::NotNormalized, "right-hand side is not an atom: " + ltl::to_string(ax));
    LinearAxiom la;
    la.head = ax.rhs[0]->name;
    for (auto& c : ax.lhs) {
      if (c->kind == Kind::Top) continue;
      auto off = ltl::next_offset(c);
      if (!off) throw Error(ErrorKind::NotNormalized, "premise is not ○^j A: " + ltl::to_string(c));
      Literal lit{off->first, off->second};
      if (!out.idb.count(lit.atom)) {
        la.edb.push_back(lit);
        continue;
      }
      if (la.idb) throw Error(ErrorKind::NotLinear, "two IDB premises: " + ltl::to_string(ax));
      if (std::abs(lit.offset) > 1) throw Error(ErrorKind::NotNormalized, "IDB premise offset beyond ±1: " + ltl::to_string(ax));
      la.idb = lit;
    }
    out.axioms.push_back(std::move(la));
  }
  out.M = count_next_ontology(o);
  out.N = out.M + 2 * out.M * out.M;
  return out;
}

LinearHornNormal normalize_linear(const ltl::Ontology& o) {
  ltl::Classification cl = ltl::classify(o);
  if (cl.c != ltl::Fragment::Core && cl.c != ltl::Fragment::Horn) throw Error(ErrorKind::NotLinear, "ontology is not Horn");
  if (!cl.linear) throw Error(ErrorKind::NotLinear, "ontology is not linear");
  return linear_normal_form(ltl::normalize_horn(o));
}

namespace {

struct GadgetBuilder {
  HornTwoNfa& h;
  int n_letters;

  int atom_bit(const std::string& a) const {
    for (size_t i = 0; i < h.xi.size(); ++i)
      if (h.xi[i] == a) return int(i);
    return -1;
  }
  int fresh() { return h.t.add_state(); }
  void all(int q, int r, int dir) {
    for (int a = 0; a < n_letters; ++a) h.t.add(q, a, r, dir);
  }
  int state_of(const std::string& a) {
    auto it = h.q_atom.find(a);
    if (it != h.q_atom.end()) return it->second;
    int q = fresh();
    h.q_atom.emplace(a, q);
    return q;
  }
  // From `cur` at position y: verify every literal, then step right into target.
  void conjuncts(int cur, const std::vector<Literal>& lits, int target) {
    for (auto& lit : lits) {
      int bit = atom_bit(lit.atom);
      int j = lit.offset, s = j > 0 ? 1 : -1;
      for (int step = 0; step < std::abs(j); ++step) {
        int nx = fresh();
        all(cur, nx, s);
        cur = nx;
      }
      int nx = fresh();
      int back = j == 0 ? 0 : -s;
      for (int a = 0; a < n_letters; ++a) {
        bool ok = bit >= 0 && ((a >> bit) & 1);
        if (ok) h.t.add(cur, a, nx, back);
        else h.t.add(cur, a, h.qh, 0);
      }
      cur = nx;
      for (int step = 1; step < std::abs(j); ++step) {
        int nx2 = fresh();
        all(cur, nx2, -s);
        cur = nx2;
      }
    }
    all(cur, target, 1);
  }
};

}  // namespace

HornTwoNfa build_A_O(const LinearHornNormal& o, const std::vector<std::string>& xi, const std::string& query_atom) {
  if (xi.size() > 16) throw Error(ErrorKind::CapExceeded, "signature too large");
  HornTwoNfa h;
  h.xi = xi;
  h.N = o.N;
  int nl = 1 << xi.size();
  h.t = TwoNfa(ltl::sigma_alphabet(xi, false), 2);
  h.q0 = 0;
  h.qh = 1;
  h.t.initials = {0};
  GadgetBuilder g{h, nl};
  g.all(h.q0, h.q0, 1);
  for (auto& a : o.idb) g.state_of(a);
  if (!query_atom.empty()) g.state_of(query_atom);
  // facts
  for (auto& [a, q] : h.q_atom) {
    int bit = g.atom_bit(a);
    if (bit < 0) continue;
    for (int l = 0; l < nl; ++l)
      if ((l >> bit) & 1) h.t.add(h.q0, l, q, 1);
  }
  for (auto& ax : o.axioms) {
    int target = g.state_of(ax.head);
    if (!ax.idb) {
      g.conjuncts(h.q0, ax.edb, target);
      continue;
    }
    // q_A sits at x+1 with A at x; the head goes to y = x − i
    int cur = h.q_atom.at(ax.idb->atom);
    int back = -ax.idb->offset - 1;
    for (int step = 0; step < std::abs(back); ++step) {
      int nx = g.fresh();
      g.all(cur, nx, -1);
      cur = nx;
    }
    g.conjuncts(cur, ax.edb, target);
  }
  return h;
}

HornTwoNfa build_A_q(const LinearHornNormal& o, const std::vector<std::string>& xi, const std::string& query_atom) {
  HornTwoNfa h = build_A_O(o, xi, query_atom);
  int nl = 1 << xi.size();
  int qb = h.q_atom.at(query_atom);
  h.qB = h.t.add_state(true);
  h.t.finals[size_t(qb)] = true;
  for (int a = 0; a < nl; ++a) {
    h.t.add(qb, a, h.qB, 0);
    h.t.add(h.qB, a, h.qB, 1);
  }
  return h;
}

namespace {

std::set<std::string> letter_atoms(const HornTwoNfa& h, int letter) {
  std::set<std::string> out;
  for (size_t i = 0; i < h.xi.size(); ++i)
    if ((letter >> i) & 1) out.insert(h.xi[i]);
  return out;
}

void check_position(const Word& w, int ell) {
  if (ell < 0 || ell >= int(w.size())) throw Error(ErrorKind::PositionOutOfRange, "position " + std::to_string(ell));
}

}  // namespace

std::set<std::string> atomic_types_via_behaviors(const HornTwoNfa& h, const Word& w, int ell) {
  check_position(w, ell);
  Word pre(w.begin(), w.begin() + ell + 1), suf(w.begin() + ell + 1, w.end());
  Behavior bp = behavior_of_word(h.t, pre);
  Behavior bs = suf.empty() ? neutral_behavior(h.t.num_states) : behavior_of_word(h.t, suf);
  Relation x = bs.ll.compose(bp.rr).closure();
  BitSet row = bp.lr.compose(x).row(size_t(h.q0));
  std::set<std::string> out = letter_atoms(h, w[size_t(ell)]);
  for (auto& [a, q] : h.q_atom)
    if (row.test(size_t(q))) out.insert(a);
  return out;
}

std::vector<std::set<std::string>> atomic_types_all(const HornTwoNfa& h, const Word& w) {
  size_t n = w.size();
  std::vector<Behavior> pre, suf(n + 1, neutral_behavior(h.t.num_states));
  for (size_t i = 0; i < n; ++i) {
    Behavior b = behavior_of_letter(h.t, w[i]);
    pre.push_back(i == 0 ? b : behavior_compose(pre.back(), b));
  }
  for (size_t i = n; i-- > 0;) suf[i] = behavior_compose(behavior_of_letter(h.t, w[i]), suf[i + 1]);
  std::vector<std::set<std::string>> out;
  for (size_t l = 0; l < n; ++l) {
    Relation x = suf[l + 1].ll.compose(pre[l].rr).closure();
    BitSet row = pre[l].lr.compose(x).row(size_t(h.q0));
    out.push_back(letter_atoms(h, w[l]));
    for (auto& [a, q] : h.q_atom)
      if (row.test(size_t(q))) out.back().insert(a);
  }
  return out;
}

std::set<std::string> atomic_types_via_runs(const HornTwoNfa& h, const Word& w, int ell) {
  check_position(w, ell);
  int len = int(w.size());
  size_t n = size_t(h.t.num_states);
  std::vector<BitSet> seen(size_t(len) + 1, BitSet(n));
  std::deque<std::pair<int, int>> todo{{h.q0, 0}};
  seen[0].set(size_t(h.q0));
  while (!todo.empty()) {
    auto [q, p] = todo.front();
    todo.pop_front();
    if (p == len) continue;
    for (auto& [r, d] : h.t.trans[size_t(q)][size_t(w[size_t(p)])]) {
      int p2 = p + d;
      if (p2 < 0 || seen[size_t(p2)].test(size_t(r))) continue;
      seen[size_t(p2)].set(size_t(r));
      todo.emplace_back(r, p2);
    }
  }
  std::set<std::string> out = letter_atoms(h, w[size_t(ell)]);
  for (auto& [a, q] : h.q_atom)
    if (seen[size_t(ell) + 1].test(size_t(q))) out.insert(a);
  return out;
}

namespace {
struct StateHash {
  size_t operator()(const BehaviorDfaState& s) const { return s.blr.hash() * 31 + s.brr.hash(); }
};
}  // namespace

LinearOmaqDfa omaq_language_dfa_linear(const ltl::OmqSpec& q, size_t cap) {
  if (q.mode != ltl::Mode::Boolean || !q.query || q.query->kind != Kind::Atom)
    throw Error(ErrorKind::PreconditionViolated, "needs a Boolean OMAQ");
  ltl::Classification cl = ltl::classify(q.ontology);
  if (!cl.bot_free || cl.has_box || !cl.linear || (cl.c != ltl::Fragment::Core && cl.c != ltl::Fragment::Horn))
    throw Error(ErrorKind::PreconditionViolated, "needs a ⊥-free linear Horn ○-ontology");
  LinearHornNormal o = linear_normal_form(ltl::normalize_horn(q).ontology);
  LinearOmaqDfa out{Dfa(), 0, build_A_q(o, q.signature, q.query->name)};
  const TwoNfa& t = out.automaton.t;
  int nl = int(t.alphabet.size());
  std::vector<Behavior> letters;
  for (int a = 0; a < nl; ++a) letters.push_back(behavior_of_letter(t, a));
  Behavior pad = neutral_behavior(t.num_states);
  for (int i = 0; i < o.N; ++i) pad = behavior_compose(pad, letters[0]);

  std::vector<BehaviorDfaState> states{behavior_dfa_apply(behavior_dfa_start(t), pad)};
  std::unordered_map<BehaviorDfaState, int, StateHash> ids{{states[0], 0}};
  std::vector<std::vector<int>> rows;
  for (size_t i = 0; i < states.size(); ++i) {
    std::vector<int> row;
    for (int a = 0; a < nl; ++a) {
      BehaviorDfaState nx = behavior_dfa_step(states[i], letters[size_t(a)]);
      auto it = ids.find(nx);
      if (it == ids.end()) {
        if (states.size() >= cap) throw Error(ErrorKind::CapExceeded, "linear OMAQ DFA exceeds state cap");
        it = ids.emplace(nx, int(states.size())).first;
        states.push_back(std::move(nx));
      }
      row.push_back(it->second);
    }
    rows.push_back(std::move(row));
  }
  Dfa d(t.alphabet, int(states.size()));
  for (size_t i = 0; i < states.size(); ++i) {
    for (int a = 0; a < nl; ++a) d.set(int(i), a, rows[i][size_t(a)]);
    BitSet row = behavior_dfa_apply(states[i], pad).blr.row(size_t(out.automaton.q0));
    bool f = false;
    row.for_each([&](size_t s) { f = f || t.finals[s]; });
    d.finals[i] = f;
  }
  out.raw_states = states.size();
  out.dfa = minimize(d).minimal;
  return out;
}

ltl::OmqSpec dfa_simulation_omaq(const Dfa& d) {
  ltl::OmqSpec q;
  auto letter = [&](int a) { return "S" + std::to_string(a); };
  auto state = [&](int s) { return "Q" + std::to_string(s); };
  std::vector<std::string> xi{"X", "Y"};
  for (int a = 0; a < d.k(); ++a) xi.push_back(letter(a));
  auto& ax = q.ontology.axioms;
  ax.push_back({{ltl::atom("X")}, {ltl::unary(Kind::NextF, ltl::atom(state(d.initial)))}});
  for (int s = 0; s < d.num_states; ++s) {
    if (d.finals[size_t(s)]) ax.push_back({{ltl::atom(state(s)), ltl::atom("Y")}, {ltl::atom("Fend")}});
    for (int a = 0; a < d.k(); ++a)
      ax.push_back({{ltl::atom(state(s)), ltl::atom(letter(a))}, {ltl::unary(Kind::NextF, ltl::atom(state(d.next(s, a))))}});
  }
  for (size_t i = 0; i < xi.size(); ++i)
    for (size_t j = i + 1; j < xi.size(); ++j) ax.push_back({{ltl::atom(xi[i]), ltl::atom(xi[j])}, {}});
  std::sort(xi.begin(), xi.end());
  q.signature = xi;
  q.query = ltl::atom("Fend");
  q.mode = ltl::Mode::Specific;
  return q;
}

}  // namespace fodef::horn
