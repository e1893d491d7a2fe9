// Types over the elementary subformulas of an OMQ and the automata built on them.
#include <algorithm>
#include <unordered_map>

#include "fodef/ltl.hpp"

namespace fodef::ltl {

std::string FormulaTable::key(const CPtr& c) const { return to_string(c); }

int FormulaTable::find(const CPtr& c) const {
  std::string k = key(c);
  for (auto& [s, i] : keys_)
    if (s == k) return i;
  return -1;
}

int FormulaTable::add(const CPtr& c) {
  int f = find(c);
  if (f >= 0) return f;
  Node n{c->kind, c->name, -1, -1, -1};
  if (c->a) n.a = add(c->a);
  if (c->b) n.b = add(c->b);
  if (c->kind == Kind::Atom || is_temporal(c->kind)) {
    n.elem = int(elementary.size());
    elementary.push_back(int(nodes.size()));
  }
  nodes.push_back(n);
  keys_.emplace_back(key(c), int(nodes.size()) - 1);
  return int(nodes.size()) - 1;
}

std::vector<char> FormulaTable::eval(uint32_t mask) const {
  std::vector<char> v(nodes.size());
  for (size_t i = 0; i < nodes.size(); ++i) {
    const Node& n = nodes[i];
    if (n.elem >= 0) {
      v[i] = char(mask >> n.elem & 1);
      continue;
    }
    switch (n.kind) {
      case Kind::Top: v[i] = 1; break;
      case Kind::Bot: v[i] = 0; break;
      case Kind::Not: v[i] = !v[size_t(n.a)]; break;
      case Kind::And: v[i] = v[size_t(n.a)] && v[size_t(n.b)]; break;
      case Kind::Or: v[i] = v[size_t(n.a)] || v[size_t(n.b)]; break;
      default: break;
    }
  }
  return v;
}

bool TypeSystem::value(int type, int node) const { return table.eval(types[size_t(type)])[size_t(node)]; }

Letter TypeSystem::xi_letter(int type) const {
  uint32_t m = types[size_t(type)];
  Letter a = 0;
  for (size_t j = 0; j < xi_node.size(); ++j)
    if (m >> table.nodes[size_t(xi_node[j])].elem & 1) a |= Letter(1) << j;
  return a;
}

std::string TypeSystem::describe(int type) const {
  std::string s = "{";
  uint32_t m = types[size_t(type)];
  for (size_t e = 0; e < table.elementary.size(); ++e) {
    if (e) s += ", ";
    if (!(m >> e & 1)) s += "!";
    const auto& n = table.nodes[size_t(table.elementary[e])];
    s += n.kind == Kind::Atom ? n.name : "#" + std::to_string(table.elementary[e]);
  }
  return s + "}";
}

TypeSystem enumerate_type_system(const OmqSpec& q, int cap) {
  TypeSystem ts;
  ts.xi = q.signature;
  ts.kappa = ts.table.add(q.query);
  struct CAxiom {
    std::vector<int> lhs, rhs;
  };
  std::vector<CAxiom> axioms;
  for (auto& ax : q.ontology.axioms) {
    CAxiom c;
    for (auto& x : ax.lhs) c.lhs.push_back(ts.table.add(x));
    for (auto& x : ax.rhs) c.rhs.push_back(ts.table.add(x));
    axioms.push_back(c);
  }
  for (auto& a : q.signature) ts.xi_node.push_back(ts.table.add(atom(a)));
  size_t e = ts.table.elementary.size();
  if (int(e) > cap || e > 30)
    throw Error(ErrorKind::CapExceeded, std::to_string(e) + " elementary formulas, cap " + std::to_string(cap));

  const auto& nodes = ts.table.nodes;
  std::vector<std::vector<char>> vals;
  for (uint32_t m = 0; m < (uint32_t(1) << e); ++m) {
    auto v = ts.table.eval(m);
    bool ok = true;
    for (auto& ax : axioms) {
      bool l = true, r = false;
      for (int x : ax.lhs) l = l && v[size_t(x)];
      for (int x : ax.rhs) r = r || v[size_t(x)];
      if (l && !r) {
        ok = false;
        break;
      }
    }
    if (ok) {
      ts.types.push_back(m);
      vals.push_back(std::move(v));
    }
  }
  size_t nt = ts.types.size();
  // an edge τ1 → τ2 exists iff the successor signature of τ1 equals the
  // predecessor signature of τ2
  std::vector<uint64_t> fkey(nt, 0), gkey(nt, 0);
  ts.fut_asserted.assign(nt, 0), ts.fut_fulfilled.assign(nt, 0);
  ts.past_asserted.assign(nt, 0), ts.past_fulfilled.assign(nt, 0);
  int bit = 0, fb = 0, pb = 0;
  for (size_t id : ts.table.elementary) {
    const auto& n = nodes[id];
    if (!is_temporal(n.kind)) continue;
    size_t c = size_t(n.a);
    for (size_t t = 0; t < nt; ++t) {
      const auto& v = vals[t];
      bool self = v[id], sub = v[c];
      bool f = false, g = false;
      switch (n.kind) {
        case Kind::NextF: f = self, g = sub; break;
        case Kind::BoxF: f = self, g = sub && self; break;
        case Kind::DiaF: f = self, g = sub || self; break;
        case Kind::NextP: f = sub, g = self; break;
        case Kind::BoxP: f = sub && self, g = self; break;
        case Kind::DiaP: f = sub || self, g = self; break;
        default: break;
      }
      fkey[t] |= uint64_t(f) << bit;
      gkey[t] |= uint64_t(g) << bit;
      if (n.kind == Kind::DiaF || n.kind == Kind::BoxF) {
        bool asserted = n.kind == Kind::DiaF ? self : !self;
        bool fulfils = n.kind == Kind::DiaF ? sub : !sub;
        ts.fut_asserted[t] |= uint64_t(asserted) << fb;
        ts.fut_fulfilled[t] |= uint64_t(fulfils) << fb;
      }
      if (n.kind == Kind::DiaP || n.kind == Kind::BoxP) {
        bool asserted = n.kind == Kind::DiaP ? self : !self;
        bool fulfils = n.kind == Kind::DiaP ? sub : !sub;
        ts.past_asserted[t] |= uint64_t(asserted) << pb;
        ts.past_fulfilled[t] |= uint64_t(fulfils) << pb;
      }
    }
    ++bit;
    if (n.kind == Kind::DiaF || n.kind == Kind::BoxF) ++fb;
    if (n.kind == Kind::DiaP || n.kind == Kind::BoxP) ++pb;
  }
  if (bit > 64) throw Error(ErrorKind::CapExceeded, "more than 64 temporal subformulas");
  std::unordered_map<uint64_t, std::vector<int>> bucket;
  for (size_t t = 0; t < nt; ++t) bucket[gkey[t]].push_back(int(t));
  ts.succ.assign(nt, {});
  ts.pred.assign(nt, {});
  size_t edges = 0;
  for (size_t t = 0; t < nt; ++t) {
    auto it = bucket.find(fkey[t]);
    if (it == bucket.end()) continue;
    ts.succ[t] = it->second;
    edges += it->second.size();
    if (edges > 50'000'000) throw Error(ErrorKind::CapExceeded, "type graph too large");
    for (int u : it->second) ts.pred[size_t(u)].push_back(int(t));
  }
  return ts;
}

namespace {

// Nodes lying on a strongly connected subgraph (of the graph restricted to
// `allowed`) that fulfils every eventuality asserted inside it.
BitSet fulfilling(const std::vector<std::vector<int>>& adj, const BitSet& allowed, const std::vector<uint64_t>& asserted,
                  const std::vector<uint64_t>& fulfilled) {
  size_t n = adj.size();
  BitSet result(n);
  std::vector<std::vector<int>> work{allowed.members()};
  std::vector<int> stamp(n, -1), index(n), low(n);
  std::vector<char> on(n, 0);
  int round = 0;
  while (!work.empty()) {
    std::vector<int> U = std::move(work.back());
    work.pop_back();
    ++round;
    for (int v : U) stamp[size_t(v)] = round, index[size_t(v)] = -1;
    // iterative Tarjan on U
    int counter = 0;
    std::vector<int> st;
    std::vector<std::pair<int, size_t>> call;
    for (int root : U) {
      if (index[size_t(root)] != -1) continue;
      call.push_back({root, 0});
      index[size_t(root)] = low[size_t(root)] = counter++;
      st.push_back(root);
      on[size_t(root)] = 1;
      while (!call.empty()) {
        auto& [v, k] = call.back();
        const auto& out = adj[size_t(v)];
        if (k < out.size()) {
          int w = out[k++];
          if (stamp[size_t(w)] != round) continue;
          if (index[size_t(w)] == -1) {
            index[size_t(w)] = low[size_t(w)] = counter++;
            st.push_back(w);
            on[size_t(w)] = 1;
            call.push_back({w, 0});
          } else if (on[size_t(w)]) {
            low[size_t(v)] = std::min(low[size_t(v)], index[size_t(w)]);
          }
          continue;
        }
        int vv = v;
        call.pop_back();
        if (!call.empty()) low[size_t(call.back().first)] = std::min(low[size_t(call.back().first)], low[size_t(vv)]);
        if (low[size_t(vv)] != index[size_t(vv)]) continue;
        std::vector<int> comp;
        int w;
        do {
          w = st.back();
          st.pop_back();
          on[size_t(w)] = 0;
          comp.push_back(w);
        } while (w != vv);
        bool nontrivial = comp.size() > 1;
        if (!nontrivial)
          for (int x : adj[size_t(vv)]) nontrivial = nontrivial || x == vv;
        if (!nontrivial) continue;
        uint64_t ful = 0;
        for (int x : comp) ful |= fulfilled[size_t(x)];
        std::vector<int> keep;
        for (int x : comp)
          if (!(asserted[size_t(x)] & ~ful)) keep.push_back(x);
        if (keep.size() == comp.size()) {
          for (int x : comp) result.set(size_t(x));
        } else if (!keep.empty()) {
          work.push_back(std::move(keep));
        }
      }
    }
  }
  return result;
}

// nodes of `allowed` from which `target` is reachable along adj
BitSet can_reach(const std::vector<std::vector<int>>& radj, const BitSet& allowed, const BitSet& target) {
  BitSet seen = target;
  std::vector<int> st = target.members();
  while (!st.empty()) {
    int v = st.back();
    st.pop_back();
    for (int u : radj[size_t(v)])
      if (allowed.test(size_t(u)) && !seen.test(size_t(u))) seen.set(size_t(u)), st.push_back(u);
  }
  return seen;
}

}  // namespace

GoodSets good_sets(const TypeSystem& ts, const BitSet& allowed) {
  BitSet ff = fulfilling(ts.succ, allowed, ts.fut_asserted, ts.fut_fulfilled);
  BitSet pf = fulfilling(ts.pred, allowed, ts.past_asserted, ts.past_fulfilled);
  return {can_reach(ts.pred, allowed, ff), can_reach(ts.succ, allowed, pf)};
}

std::vector<uint32_t> enumerate_types(const OmqSpec& q, int cap) {
  TypeSystem ts = enumerate_type_system(q, cap);
  BitSet all(ts.types.size());
  for (size_t i = 0; i < ts.types.size(); ++i) all.set(i);
  GoodSets g = good_sets(ts, all);
  std::vector<uint32_t> out;
  for (size_t i = 0; i < ts.types.size(); ++i)
    if (g.fut.test(i) && g.past.test(i)) out.push_back(ts.types[i]);
  return out;
}

namespace {
template <class F>
void submasks(Letter s, F f) {
  for (Letter a = s;; a = (a - 1) & s) {
    f(a);
    if (a == 0) break;
  }
}
}  // namespace

Nfa type_nfa(const OmqSpec& q, const TypeSystem& ts) {
  size_t nt = ts.types.size(), n = q.signature.size();
  Letter marked = Letter(1) << n;
  std::vector<char> kappa(nt);
  std::vector<Letter> xl(nt);
  for (size_t t = 0; t < nt; ++t) kappa[t] = ts.value(int(t), ts.kappa), xl[t] = ts.xi_letter(int(t));

  if (q.mode == Mode::Boolean) {
    BitSet allowed(nt);
    for (size_t t = 0; t < nt; ++t)
      if (!kappa[t]) allowed.set(t);
    GoodSets g = good_sets(ts, allowed);
    Nfa m(sigma_alphabet(q.signature, false), int(nt) + 1);
    m.initials = {0};
    allowed.for_each([&](size_t t) {
      if (g.past.test(t)) submasks(xl[t], [&](Letter a) { m.add(0, int(a), int(t) + 1); });
      for (int u : ts.succ[t])
        if (allowed.test(size_t(u))) submasks(xl[size_t(u)], [&](Letter a) { m.add(int(t) + 1, int(a), u + 1); });
      if (g.fut.test(t)) m.finals[t + 1] = true;
      if (g.fut.test(t) && g.past.test(t)) m.finals[0] = true;
    });
    return m;
  }

  BitSet all(nt);
  for (size_t t = 0; t < nt; ++t) all.set(t);
  GoodSets g = good_sets(ts, all);
  int T = int(nt);
  Nfa m(sigma_alphabet(q.signature, true), 2 * T + 1);
  m.initials = {0};
  for (size_t t = 0; t < nt; ++t) {
    int s1 = int(t) + 1, s2 = T + int(t) + 1;
    if (g.past.test(t)) {
      submasks(xl[t], [&](Letter a) { m.add(0, int(a), s1); });
      if (!kappa[t]) submasks(xl[t], [&](Letter a) { m.add(0, int(a + marked), s2); });
    }
    for (int u : ts.succ[t]) {
      int u1 = u + 1, u2 = T + u + 1;
      submasks(xl[size_t(u)], [&](Letter a) {
        m.add(s1, int(a), u1);
        m.add(s2, int(a), u2);
        if (!kappa[size_t(u)]) m.add(s1, int(a + marked), u2);
      });
    }
    if (g.fut.test(t)) m.finals[size_t(s2)] = true;
  }
  return m;
}

Nfa type_nfa(const OmqSpec& q, int cap) { return type_nfa(q, enumerate_type_system(q, cap)); }

Dfa well_marked_dfa(size_t n_xi) {
  std::vector<std::string> names;
  for (size_t j = 0; j < n_xi; ++j) names.push_back("x" + std::to_string(j));
  Dfa d(sigma_alphabet(names, true), 3);
  int n = 1 << n_xi;
  for (int a = 0; a < 2 * n; ++a) {
    bool m = a >= n;
    d.set(0, a, m ? 1 : 0);
    d.set(1, a, m ? 2 : 1);
    d.set(2, a, 2);
  }
  d.finals = {false, true, false};
  return d;
}

Dfa omq_language_dfa(const OmqSpec& q, int cap) {
  Nfa m = type_nfa(q, cap);
  Dfa c = complement(determinize(m));
  if (q.mode == Mode::Specific) {
    Dfa wf = well_marked_dfa(q.signature.size());
    wf.alphabet = c.alphabet;
    c = product_intersect(wf, c);
  }
  return minimize(c).minimal;
}

Answer certain_answer_nfa(const OmqSpec& q, const Nfa& m, const AboxWord& a) {
  Answer ans;
  AboxWord plain = a;
  plain.mark.reset();
  if (q.mode == Mode::Boolean) {
    ans.yes = !nfa_accepts(m, encode(plain, q.signature.size()));
    return ans;
  }
  for (int i = 0; i < int(a.size()); ++i) {
    AboxWord w = plain;
    w.mark = i;
    if (!nfa_accepts(m, encode(w, q.signature.size()))) ans.positions.push_back(i);
  }
  ans.yes = !ans.positions.empty();
  return ans;
}

Answer certain_answer_types(const OmqSpec& q, const AboxWord& a) { return certain_answer_nfa(q, type_nfa(q), a); }

Answer certain_answer(const OmqSpec& q, const AboxWord& a) {
  Classification cl = classify(q.ontology);
  if ((cl.c == Fragment::Core || cl.c == Fragment::Horn) && is_positive(q.query)) return certain_answer_chase(q, a);
  return certain_answer_types(q, a);
}

}  // namespace fodef::ltl
