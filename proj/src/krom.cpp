#include <algorithm>
#include <deque>

#include "fodef/deciders.hpp"

namespace fodef {

using namespace ltl;

namespace {

struct Lit {
  int atom;
  bool neg;
  int off;
};

struct GraphBuilder {
  LiteralGraph g;
  std::map<std::string, int> index;
  std::set<std::string> used;
  std::map<std::tuple<int, int, int>, int> chain;  // (atom, sign, k) -> Z ↔ ○^{sign·k} atom

  int atom_index(const std::string& a) {
    auto it = index.find(a);
    if (it != index.end()) return it->second;
    index[a] = int(g.atoms.size());
    g.atoms.push_back(a);
    g.edges.resize(g.atoms.size() * 2);
    used.insert(a);
    return index[a];
  }
  void edge(const Lit& a, const Lit& b) {
    // clause a ∨ b: ¬a → b and ¬b → a
    int la = 2 * a.atom + (a.neg ? 1 : 0), lb = 2 * b.atom + (b.neg ? 1 : 0);
    g.edges[size_t(la ^ 1)].push_back({lb, b.off - a.off});
    g.edges[size_t(lb ^ 1)].push_back({la, a.off - b.off});
  }
  // atom Z with Z ↔ ○^o A
  int shifted_atom(int a, int o) {
    int s = o > 0 ? 1 : -1, cur = a;
    for (int k = 1; k <= std::abs(o); ++k) {
      auto key = std::make_tuple(a, s, k);
      auto it = chain.find(key);
      if (it != chain.end()) {
        cur = it->second;
        continue;
      }
      std::string name = fresh_atom(used, "Z" + std::to_string(chain.size() + 1));
      int z = atom_index(name);
      edge({z, true, 0}, {cur, false, s});
      edge({z, false, 0}, {cur, true, s});
      chain[key] = z;
      cur = z;
    }
    return cur;
  }
  Lit flatten(Lit l) { return {shifted_atom(l.atom, l.off), l.neg, 0}; }
};

}  // namespace

int LiteralGraph::literal(const std::string& atom, bool negated) const {
  for (size_t i = 0; i < atoms.size(); ++i)
    if (atoms[i] == atom) return int(2 * i) + (negated ? 1 : 0);
  throw Error(ErrorKind::BadInput, "unknown atom " + atom);
}

int LiteralGraph::parse_literal(const std::string& s) const {
  if (!s.empty() && s[0] == '~') return literal(s.substr(1), true);
  return literal(s, false);
}

std::string LiteralGraph::name(int lit) const { return (lit & 1 ? "~" : "") + atoms[size_t(lit / 2)]; }

const std::vector<char>& LiteralGraph::reach_from(int l) const {
  auto it = reach_.find(l);
  if (it != reach_.end()) return it->second;
  int span = 2 * W + 1;
  std::vector<char> seen(size_t(num_literals()) * size_t(span), 0);
  std::deque<std::pair<int, int>> queue{{l, 0}};
  seen[size_t(l) * size_t(span) + size_t(W)] = 1;
  while (!queue.empty()) {
    auto [x, w] = queue.front();
    queue.pop_front();
    for (auto [y, d] : edges[size_t(x)]) {
      int w2 = w + d;
      if (w2 < -W || w2 > W) continue;
      char& s = seen[size_t(y) * size_t(span) + size_t(w2 + W)];
      if (!s) s = 1, queue.push_back({y, w2});
    }
  }
  return reach_[l] = std::move(seen);
}

bool LiteralGraph::reaches(int from, int to, int w) const {
  if (w < -W || w > W) return false;
  return reach_from(from)[size_t(to) * size_t(2 * W + 1) + size_t(w + W)];
}

bool LiteralGraph::unsatisfiable(int lit) const {
  if (unsat_.empty()) unsat_.assign(size_t(num_literals()), -1);
  signed char& u = unsat_[size_t(lit)];
  if (u >= 0) return u;
  const auto& r = reach_from(lit);
  size_t span = size_t(2 * W + 1);
  u = 0;
  for (size_t m = 0; m < atoms.size() && !u; ++m)
    for (size_t w = 0; w < span; ++w)
      if (r[2 * m * span + w] && r[(2 * m + 1) * span + w]) {
        u = 1;
        break;
      }
  return u;
}

bool LiteralGraph::inconsistent() const {
  if (incons_ < 0) {
    incons_ = empty_clause;
    for (size_t m = 0; m < atoms.size() && !incons_; ++m)
      incons_ = unsatisfiable(int(2 * m)) && unsatisfiable(int(2 * m + 1));
  }
  return incons_;
}

bool LiteralGraph::entails(int l, int l2, int d) const {
  return inconsistent() || unsatisfiable(l) || unsatisfiable(neg(l2)) || reaches(l, l2, d);
}

LiteralGraph literal_graph(const Ontology& o, const std::vector<std::string>& extra) {
  Classification cl = classify(o);
  if ((cl.c != Fragment::Core && cl.c != Fragment::Krom) || cl.has_box)
    throw Error(ErrorKind::NotKrom, "ontology is not Krom with ○ only");
  GraphBuilder b;
  std::set<std::string> sig = signature(o);
  sig.insert(extra.begin(), extra.end());
  for (auto& a : sig) b.atom_index(a);
  for (auto& ax : o.axioms) {
    std::vector<Lit> clause;
    bool satisfied = false;
    auto add = [&](const CPtr& c, bool neg) {
      if (c->kind == Kind::Top || c->kind == Kind::Bot) {
        // ⊤ on the left and ⊥ on the right drop out; the other two satisfy the clause
        satisfied = satisfied || (c->kind == Kind::Top) != neg;
        return;
      }
      auto off = next_offset(c);
      if (!off) throw Error(ErrorKind::NotKrom, "not a ○-literal: " + to_string(c));
      clause.push_back({b.atom_index(off->second), neg, off->first});
    };
    for (auto& c : ax.lhs) add(c, true);
    for (auto& c : ax.rhs) add(c, false);
    if (satisfied) continue;
    if (clause.empty()) {
      b.g.empty_clause = true;
    } else if (clause.size() == 1) {
      Lit l = clause[0];
      l.off = 0;  // a unit clause holds everywhere
      b.edge(l, l);
    } else {
      Lit x = clause[0], y = clause[1];
      if (std::abs(x.off - y.off) > 1) {
        if (y.off != 0) y = b.flatten(y);
        if (std::abs(x.off - y.off) > 1) x = b.flatten(x);
      }
      b.edge(x, y);
    }
  }
  int n = b.g.num_literals();
  b.g.W = 2 * n * n + 1;
  return b.g;
}

bool krom_entailment(const LiteralGraph& g, int l, int l2, int d) { return g.entails(l, l2, d); }

Nfa krom_unary_nfa(const LiteralGraph& g, int l1, int l2) {
  int n = g.num_literals();
  Nfa m(Alphabet({"a"}), n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      if (g.entails(x, y, 1)) m.add(x, 0, y);
      if (x != y && g.entails(x, y, 0)) m.add_eps(x, y);
    }
  m.initials = {l1};
  m.finals[size_t(l2)] = true;
  return m;
}

OmqSpec krom_hardness_omaq(const Nfa& n) {
  if (n.alphabet.size() != 1) throw Error(ErrorKind::NotUnary, "hardness ontology needs a unary NFA");
  OmqSpec q;
  auto st = [](int i) { return atom("Q" + std::to_string(i)); };
  for (int i : n.initials) q.ontology.axioms.push_back({{atom("X")}, {unary(Kind::NextF, st(i))}});
  for (int i = 0; i < n.num_states; ++i) {
    if (n.finals[size_t(i)]) q.ontology.axioms.push_back({{st(i), atom("Y")}, {}});
    for (int j : n.trans[size_t(i)][0]) q.ontology.axioms.push_back({{st(i)}, {unary(Kind::NextF, st(j))}});
    for (int j : n.eps[size_t(i)]) q.ontology.axioms.push_back({{st(i)}, {st(j)}});
  }
  std::set<std::string> used = signature(q.ontology);
  used.insert({"X", "Y"});
  q.query = atom(fresh_atom(used, "A"));
  q.signature = {"X", "Y"};
  return q;
}

namespace {

fo::FPtr position_pred(const std::string& p, const std::string& v) { return fo::pred(p, v); }

// aⁿ ∈ L for n = v − u ≥ 0, with u ≤ v asserted by the caller
fo::FPtr unary_psi(const UnaryClass& c, const std::string& u, const std::string& v) {
  std::vector<fo::FPtr> parts;
  if (c.kind == UnaryClass::Finite) {
    for (int e : c.exceptions) parts.push_back(fo::equal({v, 0}, {u, e}));
    return fo::any(parts);
  }
  for (int e : c.exceptions) parts.push_back(fo::negate(fo::equal({v, 0}, {u, e})));
  return fo::all(parts);
}

int threshold(const UnaryClass& c) { return c.exceptions.empty() ? 0 : c.exceptions.back() + 1; }

bool universal(const UnaryClass& c) { return c.kind == UnaryClass::Cofinite && c.exceptions.empty(); }

}  // namespace

KromDecision krom_decide_fo(const OmqSpec& q) {
  if (q.query->kind != Kind::Atom) throw Error(ErrorKind::NotKrom, "query is not atomic");
  const std::string& A = q.query->name;
  std::vector<std::string> extra = q.signature;
  extra.push_back(A);
  LiteralGraph g = literal_graph(q.ontology, extra);
  const auto& xi = q.signature;
  size_t n = xi.size();

  KromDecision r;
  auto cls = [&](int l1, int l2) {
    std::string key = g.name(l1) + "," + g.name(l2);
    auto it = r.cls.per_pair.find(key);
    if (it != r.cls.per_pair.end()) return it->second;
    return r.cls.per_pair[key] = unary_eventually_constant(krom_unary_nfa(g, l1, l2));
  };
  int a_pos = g.literal(A, false), a_neg = g.literal(A, true);
  auto pos = [&](size_t i) { return g.literal(xi[i], false); };
  auto negl = [&](size_t i) { return g.literal(xi[i], true); };

  // Ξ^∃ on single facts, by the general route
  OmqSpec qb = q;
  qb.mode = Mode::Boolean;
  std::vector<char> in_exists(n), in_forall(n);
  for (size_t i = 0; i < n; ++i) {
    AboxWord w;
    w.letters = {Letter(1u << i)};
    in_exists[i] = certain_answer(qb, w).yes;
    if (in_exists[i]) r.cls.exists_set.push_back(xi[i]);
    in_forall[i] = universal(cls(pos(i), a_pos)) && universal(cls(a_neg, negl(i)));
    if (in_forall[i]) r.cls.forall_set.push_back(xi[i]);
  }

  if (q.mode == Mode::Boolean) {
    AboxWord none;
    none.letters = {0};
    if (certain_answer(qb, none).yes) {
      r.rewritable = true;
      r.rewriting = fo::truth();
      return r;
    }
    std::vector<fo::FPtr> parts;
    for (size_t i = 0; i < n; ++i)
      if (in_exists[i]) parts.push_back(fo::exists("x", position_pred(xi[i], "x")));
    r.rewritable = true;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = 0; j < n; ++j) {
        if (in_exists[i] || in_exists[j]) continue;
        UnaryClass c = cls(pos(i), negl(j));
        if (c.kind == UnaryClass::Neither) {
          r.rewritable = false;
          r.reason = "L(" + xi[i] + ",~" + xi[j] + ") is neither finite nor cofinite";
          r.rewriting.reset();
          return r;
        }
        parts.push_back(fo::exists("x", fo::exists("y", fo::all({position_pred(xi[i], "x"), position_pred(xi[j], "y"),
                                                                 fo::less_eq({"x", 0}, {"y", 0}),
                                                                 unary_psi(c, "x", "y")}))));
      }
    r.rewriting = fo::any(parts);
    return r;
  }

  // specific
  {
    AboxWord none;
    none.letters = {0};
    none.mark = 0;
    if (!certain_answer(q, none).positions.empty()) {
      r.rewritable = true;
      r.rewriting = fo::equal({"x", 0}, {"x", 0});
      return r;
    }
  }
  for (size_t i = 0; i < n; ++i)
    for (auto [l1, l2] : {std::pair{pos(i), a_pos}, std::pair{a_neg, negl(i)}})
      if (cls(l1, l2).kind == UnaryClass::Neither) {
        r.reason = "L(" + g.name(l1) + "," + g.name(l2) + ") is neither finite nor cofinite";
        return r;
      }
  std::vector<fo::FPtr> parts;
  for (size_t i = 0; i < n; ++i) {
    parts.push_back(fo::exists("y", fo::all({position_pred(xi[i], "y"), fo::less_eq({"y", 0}, {"x", 0}),
                                             unary_psi(cls(pos(i), a_pos), "y", "x")})));
    parts.push_back(fo::exists("y", fo::all({position_pred(xi[i], "y"), fo::less_eq({"x", 0}, {"y", 0}),
                                             unary_psi(cls(a_neg, negl(i)), "x", "y")})));
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      UnaryClass c = cls(pos(i), negl(j));
      auto pair = [&](fo::FPtr psi) {
        return fo::exists("y", fo::exists("z", fo::all({position_pred(xi[i], "y"), position_pred(xi[j], "z"),
                                                        fo::less_eq({"y", 0}, {"z", 0}), psi})));
      };
      if (c.kind != UnaryClass::Neither) {
        parts.push_back(pair(unary_psi(c, "y", "z")));
        continue;
      }
      if (in_forall[i] || in_forall[j]) continue;  // covered by φ_BA / φ_¬A¬B
      UnaryClass ba = cls(pos(i), a_pos), ac = cls(a_neg, negl(j));
      if (ba.kind == UnaryClass::Finite || ac.kind == UnaryClass::Finite) {
        r.reason = "L(" + xi[i] + ",~" + xi[j] + ") is neither finite nor cofinite";
        return r;
      }
      // both cofinite: only short distances matter
      int bound = threshold(ba) + threshold(ac);
      Nfa m = krom_unary_nfa(g, pos(i), negl(j));
      UnaryClass shortset{UnaryClass::Finite, {}, 0, 1};
      for (int e = 0; e < bound; ++e)
        if (nfa_accepts(m, Word(size_t(e), 0))) shortset.exceptions.push_back(e);
      parts.push_back(pair(unary_psi(shortset, "y", "z")));
    }
  r.rewritable = true;
  r.rewriting = fo::any(parts);
  return r;
}

}  // namespace fodef
