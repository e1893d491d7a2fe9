#include <algorithm>
#include <functional>

#include "fodef/deciders.hpp"

namespace fodef {

using namespace ltl;

namespace {

CPtr rename(const CPtr& c, const std::map<std::string, std::string>& m) {
  if (c->kind == Kind::Atom) return atom(m.at(c->name));
  if (!c->a) return c;
  if (!c->b) return unary(c->kind, rename(c->a, m));
  return binary(c->kind, rename(c->a, m), rename(c->b, m));
}

std::vector<CPtr> drop(const std::vector<CPtr>& cs, Kind k) {
  std::vector<CPtr> out;
  for (auto& c : cs)
    if (c->kind != k) out.push_back(c);
  return out;
}

int count_atoms(const CPtr& c) {
  int n = c->kind == Kind::Atom;
  if (c->a) n += count_atoms(c->a);
  if (c->b) n += count_atoms(c->b);
  return n;
}

}  // namespace

OmqSpec core_to_linear(const OmqSpec& q) {
  Classification cl = classify(q.ontology);
  if (cl.c != Fragment::Core || cl.has_box) throw Error(ErrorKind::NotCore, "ontology is not core with ○ only");
  if (!is_positive(q.query)) throw Error(ErrorKind::PreconditionViolated, "query is not positive");
  std::set<std::string> sig = signature(q);
  sig.insert(q.signature.begin(), q.signature.end());
  std::set<std::string> used = sig;
  std::map<std::string, std::string> prime, bar;  // A ↦ A', A ↦ Ā'
  for (auto& a : sig) {
    prime[a] = fresh_atom(used, a + "'");
    used.insert(prime[a]);
  }
  for (auto& a : sig) {
    bar[a] = fresh_atom(used, a + "_bar'");
    used.insert(bar[a]);
  }
  OmqSpec r = q;
  r.ontology.axioms.clear();
  auto& out = r.ontology.axioms;
  for (auto& ax : q.ontology.axioms) {
    auto lhs = drop(ax.lhs, Kind::Top);
    auto rhs = drop(ax.rhs, Kind::Bot);
    bool vacuous = std::any_of(lhs.begin(), lhs.end(), [](auto& c) { return c->kind == Kind::Bot; }) ||
                   std::any_of(rhs.begin(), rhs.end(), [](auto& c) { return c->kind == Kind::Top; });
    if (vacuous) continue;
    if (lhs.size() == 1 && rhs.size() == 1) {
      out.push_back({{rename(lhs[0], prime)}, {rename(rhs[0], prime)}});
      out.push_back({{rename(rhs[0], bar)}, {rename(lhs[0], bar)}});
    } else if (lhs.size() == 2) {
      out.push_back({{rename(lhs[0], prime)}, {rename(lhs[1], bar)}});
    } else if (lhs.size() == 1) {
      out.push_back({{rename(lhs[0], prime)}, {}});
    } else if (rhs.size() == 1) {
      out.push_back({{}, {rename(rhs[0], prime)}});
      out.push_back({{rename(rhs[0], bar)}, {}});
    } else {
      out.push_back({{}, {}});
    }
  }
  for (auto& a : q.signature) {
    out.push_back({{atom(a)}, {atom(prime[a])}});
    out.push_back({{atom(a), atom(bar[a])}, {}});
  }
  r.query = rename(q.query, prime);
  if (!classify(r.ontology).linear) throw Error(ErrorKind::NotLinear, "core_to_linear produced a non-linear ontology");
  return r;
}

namespace {
// Ξ of a powerset alphabet named as sigma_alphabet does
std::vector<std::string> powerset_atoms(const Alphabet& a) {
  size_t k = a.size(), n = 0;
  while ((size_t(1) << n) < k) ++n;
  if (k == 0 || (size_t(1) << n) != k) throw Error(ErrorKind::NotPowersetAlphabet, "alphabet size is not a power of two");
  std::vector<std::string> xi;
  for (size_t j = 0; j < n; ++j) xi.push_back(a.symbol(int(1u << j)));
  if (!(sigma_alphabet(xi, false) == a)) throw Error(ErrorKind::NotPowersetAlphabet, "symbols are not the subsets of Ξ");
  return xi;
}
}  // namespace

Dfa upward_closure_dfa(const Dfa& d) {
  powerset_atoms(d.alphabet);
  int k = d.k();
  Nfa m(d.alphabet, d.num_states);
  for (int q = 0; q < d.num_states; ++q)
    for (int u = 0; u < k; ++u)
      for (int v = 0; v < k; ++v)
        if ((u & v) == u) m.add(q, v, d.next(q, u));
  m.initials = {d.initial};
  m.finals = d.finals;
  return minimize(determinize(m)).minimal;
}

std::vector<Word> data_patterns(size_t n_xi, int n) {
  std::vector<Word> out;
  Word cur;
  std::function<void(int)> rec = [&](int budget) {
    out.push_back(cur);
    for (int a = 1; a < (1 << n_xi); ++a) {
      int c = __builtin_popcount(unsigned(a));
      if (c > budget) continue;
      cur.push_back(a);
      rec(budget - c);
      cur.pop_back();
    }
  };
  rec(n);
  return out;
}

Dfa pattern_dfa(const Word& w, const Alphabet& sigma) {
  int k = int(w.size()), sink = k + 1;
  Dfa d(sigma, k + 2);
  for (int j = 0; j <= sink; ++j)
    for (int a = 0; a < d.k(); ++a) d.set(j, a, j == sink ? sink : a == 0 ? j : (j < k && a == w[size_t(j)]) ? j + 1 : sink);
  d.finals[size_t(k)] = true;
  return d;
}

Dfa layered_automaton(const horn::TypeSetDfa& t, const Word& w) {
  const Dfa& b = t.dfa;
  int n = b.num_states, k = int(w.size());
  int sink = (k + 1) * n;
  Dfa d(b.alphabet, sink + 1);
  for (int a = 0; a < d.k(); ++a) d.set(sink, a, sink);
  for (int j = 0; j <= k; ++j)
    for (int s = 0; s < n; ++s) {
      int id = j * n + s;
      for (int a = 0; a < d.k(); ++a) {
        if (a == 0) d.set(id, a, j * n + b.next(s, 0));
        else if (j < k && a == w[size_t(j)]) d.set(id, a, (j + 1) * n + b.next(s, a));
        else d.set(id, a, sink);
      }
      d.finals[size_t(id)] = j == k && b.finals[size_t(s)];
    }
  d.initial = b.initial;
  return d;
}

CoreOmpeqDecision core_ompeq_decide_fo(const OmqSpec& q, const CoreOmpeqOptions& opt) {
  Classification cl = classify(q.ontology);
  if (cl.c != Fragment::Core || cl.has_box) throw Error(ErrorKind::NotCore, "ontology is not core with ○ only");
  if (!is_positive_existential(q.query)) throw Error(ErrorKind::PreconditionViolated, "query is not positive existential");
  CoreOmpeqDecision r;
  // facts needed for one answer: one per query atom, two for a clash, plus the mark
  r.bound = std::max(count_atoms(q.query), cl.bot_free ? 0 : 2) + (q.mode == Mode::Specific ? 1 : 0);
  if (r.bound > opt.max_bound)
    throw Error(ErrorKind::CapExceeded, "pattern bound " + std::to_string(r.bound) + " exceeds " + std::to_string(opt.max_bound));
  OmqSpec p = horn::prepare_ompq(q);
  r.xi = p.signature;
  r.patterns = data_patterns(p.signature.size(), r.bound);
  if (r.patterns.size() > opt.max_patterns)
    throw Error(ErrorKind::CapExceeded, std::to_string(r.patterns.size()) + " data patterns");
  horn::TypeSetDfa t = horn::build_typeset_dfa(p, opt.type_cap);
  for (auto& w : r.patterns) {
    Dfa lw = minimize(layered_automaton(t, w)).minimal;
    if (!is_aperiodic(TransitionMonoid::of(lw))) {
      r.failing = w;
      return r;
    }
  }
  r.rewritable = true;
  return r;
}

}  // namespace fodef
