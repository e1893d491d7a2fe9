#include <algorithm>
#include <deque>
#include <unordered_map>

#include "fodef/algebra.hpp"
#include "fodef/horn_linear.hpp"

namespace fodef::horn {

using ltl::Kind;

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Witness: return "witness";
    case Outcome::None: return "none";
    case Outcome::Unknown: return "unknown";
  }
  return "?";
}

ltl::OmqSpec prepare_ompq(const ltl::OmqSpec& q) {
  ltl::Classification cl = ltl::classify(q.ontology);
  if (cl.c != ltl::Fragment::Core && cl.c != ltl::Fragment::Horn) throw Error(ErrorKind::NotHorn, "ontology is not Horn");
  if (!q.query || !ltl::is_positive(q.query)) throw Error(ErrorKind::PreconditionViolated, "query is not positive");
  ltl::OmqSpec r = cl.bot_free ? q : ltl::remove_bot(q);
  if (r.mode == ltl::Mode::Specific) r = ltl::specific_to_boolean(r);
  const ltl::CPtr& k = r.query;
  if (!(k->kind == Kind::DiaP && k->a->kind == Kind::DiaF)) r.query = ltl::unary(Kind::DiaP, ltl::unary(Kind::DiaF, k));
  return r;
}

std::vector<uint32_t> TypeSetDfa::canonical_types(const Word& w) const {
  size_t n = w.size(), nu = universe.size();
  std::vector<BitSet> fwd(n + 1, BitSet(nu)), back(n + 1, BitSet(nu));
  fwd[0] = sets[size_t(dfa.initial)];
  for (size_t i = 0; i < n; ++i) {
    fwd[i].for_each([&](size_t j) { fwd[i + 1] |= succ[j]; });
    fwd[i + 1] &= letter_ok[size_t(w[i])];
  }
  back[n] = fwd[n];
  for (size_t i = n; i-- > 0;)
    fwd[i].for_each([&](size_t j) {
      if (succ[j].intersects(back[i + 1])) back[i].set(j);
    });
  std::vector<uint32_t> out(n + 1);
  for (size_t i = 0; i <= n; ++i) {
    if (back[i].none()) throw Error(ErrorKind::PreconditionViolated, "ABox inconsistent with the ontology");
    uint32_t m = ~uint32_t(0);
    back[i].for_each([&](size_t j) { m &= ts.types[size_t(universe[j])]; });
    out[i] = m;
  }
  return out;
}

TypeSetDfa build_typeset_dfa(const ltl::OmqSpec& q, int cap, size_t state_cap) {
  ltl::Classification cl = ltl::classify(q.ontology);
  if (!cl.bot_free || (cl.c != ltl::Fragment::Core && cl.c != ltl::Fragment::Horn))
    throw Error(ErrorKind::PreconditionViolated, "needs a ⊥-free Horn ontology");
  if (q.mode != ltl::Mode::Boolean) throw Error(ErrorKind::PreconditionViolated, "needs a Boolean OMPQ");
  if (!(q.query->kind == Kind::DiaP && q.query->a->kind == Kind::DiaF))
    throw Error(ErrorKind::PreconditionViolated, "query must have the form Dp Df κ");
  cap = std::min(cap, kTypeSetCap);
  TypeSetDfa t;
  t.ts = ltl::enumerate_type_system(q);
  t.kappa = t.ts.kappa;
  size_t nt = t.ts.types.size();
  BitSet all(nt);
  for (size_t i = 0; i < nt; ++i) all.set(i);
  ltl::GoodSets gs = ltl::good_sets(t.ts, all);
  std::vector<int> index(nt, -1);
  for (size_t i = 0; i < nt; ++i)
    if (gs.fut.test(i) && gs.past.test(i)) {
      if (int(t.universe.size()) >= cap) throw Error(ErrorKind::CapExceeded, "more than " + std::to_string(cap) + " types");
      index[i] = int(t.universe.size());
      t.universe.push_back(int(i));
    }
  size_t nu = t.universe.size();
  t.succ.assign(nu, BitSet(nu));
  BitSet with_kappa(nu);
  for (size_t j = 0; j < nu; ++j) {
    for (int s : t.ts.succ[size_t(t.universe[j])])
      if (index[size_t(s)] >= 0) t.succ[j].set(size_t(index[size_t(s)]));
    if (t.ts.value(t.universe[j], t.kappa)) with_kappa.set(j);
  }
  Alphabet sigma = ltl::sigma_alphabet(q.signature, false);
  size_t nl = sigma.size();
  t.letter_ok.assign(nl, BitSet(nu));
  for (size_t a = 0; a < nl; ++a)
    for (size_t j = 0; j < nu; ++j)
      if ((t.ts.xi_letter(t.universe[j]) & a) == a) t.letter_ok[a].set(j);

  BitSet full(nu);
  for (size_t j = 0; j < nu; ++j) full.set(j);
  std::unordered_map<BitSet, int, BitSetHash> ids{{full, 0}};
  t.sets = {full};
  std::vector<int> delta;
  for (size_t i = 0; i < t.sets.size(); ++i) {
    BitSet img(nu);
    t.sets[i].for_each([&](size_t j) { img |= t.succ[j]; });
    for (size_t a = 0; a < nl; ++a) {
      BitSet nx = img;
      nx &= t.letter_ok[a];
      auto it = ids.find(nx);
      if (it == ids.end()) {
        if (t.sets.size() >= state_cap) throw Error(ErrorKind::CapExceeded, "type-set DFA exceeds state cap");
        it = ids.emplace(nx, int(t.sets.size())).first;
        t.sets.push_back(std::move(nx));
      }
      delta.push_back(it->second);
    }
  }
  t.dfa = Dfa(sigma, int(t.sets.size()));
  for (size_t i = 0; i < t.sets.size(); ++i) {
    for (size_t a = 0; a < nl; ++a) t.dfa.set(int(i), int(a), delta[i * nl + a]);
    t.dfa.finals[i] = t.sets[i].subset_of(with_kappa);
  }
  return t;
}

namespace {

Word power(const Word& b, int k) {
  Word w;
  for (int i = 0; i < k; ++i) w.insert(w.end(), b.begin(), b.end());
  return w;
}

Word cat(std::initializer_list<const Word*> parts) {
  Word w;
  for (auto* p : parts) w.insert(w.end(), p->begin(), p->end());
  return w;
}

bool has_kappa(const TypeSetDfa& t, uint32_t mask) { return t.ts.table.eval(mask)[size_t(t.kappa)]; }

// shortest word from the initial state to q
Word access_word(const Dfa& d, int q) {
  std::vector<int> from(size_t(d.num_states), -2), via(size_t(d.num_states), -1);
  std::deque<int> todo{d.initial};
  from[size_t(d.initial)] = -1;
  while (!todo.empty()) {
    int s = todo.front();
    todo.pop_front();
    for (int a = 0; a < d.k(); ++a) {
      int r = d.next(s, a);
      if (from[size_t(r)] != -2) continue;
      from[size_t(r)] = s, via[size_t(r)] = a;
      todo.push_back(r);
    }
  }
  Word w;
  for (int s = q; from[size_t(s)] != -1; s = from[size_t(s)]) w.push_back(via[size_t(s)]);
  std::reverse(w.begin(), w.end());
  return w;
}

// shortest word accepted from exactly one of p, r
std::optional<Word> separating_word(const Dfa& d, int p, int r) {
  size_t n = size_t(d.num_states);
  std::vector<std::pair<int, int>> from(n * n, {-2, -1});
  auto id = [&](int x, int y) { return size_t(x) * n + size_t(y); };
  std::deque<std::pair<int, int>> todo{{p, r}};
  from[id(p, r)] = {-1, -1};
  while (!todo.empty()) {
    auto [x, y] = todo.front();
    todo.pop_front();
    if (d.finals[size_t(x)] != d.finals[size_t(y)]) {
      Word w;
      for (size_t c = id(x, y); from[c].first != -1; c = size_t(from[c].first)) w.push_back(from[c].second);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (int a = 0; a < d.k(); ++a) {
      int x2 = d.next(x, a), y2 = d.next(y, a);
      if (from[id(x2, y2)].first != -2) continue;
      from[id(x2, y2)] = {int(id(x, y)), a};
      todo.emplace_back(x2, y2);
    }
  }
  return std::nullopt;
}

// Lift a DFA cycle (q, u, k) to (A, B, D, k): D separates two consecutive
// orbit states, A reaches the orbit at a rejecting-then-accepting step.
std::optional<OmpqWitness> lift_cycle(const Dfa& d, int q, const Word& u, int k) {
  std::vector<int> orbit{q};
  for (int j = 1; j < k; ++j) orbit.push_back(d.run_from(orbit.back(), u));
  MinimizationData md = minimize(d);
  auto sep = separating_word(md.minimal, md.class_of[size_t(orbit[0])], md.class_of[size_t(orbit[1])]);
  if (!sep) return std::nullopt;
  for (int j = 0; j < k; ++j) {
    int c0 = orbit[size_t(j)], c1 = orbit[size_t((j + 1) % k)];
    if (!d.finals[size_t(d.run_from(c0, *sep))] && d.finals[size_t(d.run_from(c1, *sep))]) {
      OmpqWitness w;
      Word a0 = access_word(d, q), uj = power(u, j);
      w.a = cat({&a0, &uj});
      w.b = u;
      w.d = *sep;
      w.k = k;
      return w;
    }
  }
  return std::nullopt;
}

bool within(const OmpqWitness& w, int cap) {
  return int(w.a.size()) <= cap && int(w.b.size()) <= cap && int(w.d.size()) <= cap && w.k <= cap;
}

// Canonical-model checks may need the cycle repeated: try k·m and A·B^{k·r}.
template <class Check>
std::optional<OmpqWitness> settle(const TypeSetDfa& t, OmpqWitness w, int cap, Check check) {
  int k = w.k;
  for (int r = 0; r <= 2; ++r)
    for (int m = 1; m <= 3; ++m) {
      OmpqWitness c = w;
      Word ext = power(w.b, k * r);
      c.a = cat({&w.a, &ext});
      c.k = k * m;
      if (!within(c, cap)) continue;
      if (check(t, c)) return c;
    }
  return std::nullopt;
}

}  // namespace

bool check_ompq_fo_witness(const TypeSetDfa& t, const OmpqWitness& w) {
  if (w.k < 2) return false;
  int a = int(w.a.size()), b = int(w.b.size()), k = w.k;
  Word bk = power(w.b, k), bk1 = power(w.b, k + 1);
  auto t1 = t.canonical_types(cat({&w.a, &bk, &w.d}));
  auto t2 = t.canonical_types(cat({&w.a, &bk1, &w.d}));
  // index p+1 holds position p
  uint32_t x = t1[size_t(a)], y = t1[size_t(a + k * b)];
  uint32_t x2 = t2[size_t(a + b)], y2 = t2[size_t(a + (k + 1) * b)];
  return x == y && !has_kappa(t, x) && x2 == y2 && has_kappa(t, x2);
}

bool check_ompq_fo_eq_witness(const TypeSetDfa& t, const OmpqWitness& w) {
  if (w.v.size() != w.u.size() || cat({&w.v, &w.u}) != w.b) return false;
  if (!check_ompq_fo_witness(t, w)) return false;
  int a = int(w.a.size()), b = int(w.b.size()), v = int(w.v.size()), k = w.k;
  Word bk = power(w.b, k), bk1 = power(w.b, k + 1);
  auto t1 = t.canonical_types(cat({&w.a, &bk, &w.d}));
  auto t2 = t.canonical_types(cat({&w.a, &bk1, &w.d}));
  for (int i = 0; i < k; ++i)
    if (t1[size_t(a + i * b)] != t1[size_t(a + i * b + v)]) return false;
  for (int i = 1; i <= k; ++i)
    if (t2[size_t(a + i * b)] != t2[size_t(a + i * b + v)]) return false;
  return true;
}

namespace {

struct Prepared {
  std::optional<TypeSetDfa> t;
  std::string note;
};

Prepared prepare(const ltl::OmqSpec& q, const OmpqOptions& opt) {
  Prepared p;
  try {
    p.t = build_typeset_dfa(prepare_ompq(q), opt.type_cap, opt.state_cap);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CapExceeded) throw;
    p.note = e.what();
  }
  return p;
}

}  // namespace

OmpqCriterion criterion_ompq_fo(const ltl::OmqSpec& q, const OmpqOptions& opt) {
  OmpqCriterion res;
  Prepared p = prepare(q, opt);
  if (!p.t) {
    res.note = p.note;
    return res;
  }
  const TypeSetDfa& t = *p.t;
  try {
    auto dw = criterion_fo(t.dfa);
    if (!dw) {
      res.outcome = definability_verdict(t.dfa).lowest == DefClass::FO_LT ? Outcome::None : Outcome::Unknown;
      res.note = "type-set DFA is counter-free";
      return res;
    }
    auto w = lift_cycle(t.dfa, dw->q, dw->u, dw->k);
    if (w) w = settle(t, *w, opt.length_cap, check_ompq_fo_witness);
    if (!w) {
      res.note = "cycle found but no witness within caps";
      return res;
    }
    res.outcome = Outcome::Witness;
    res.witness = w;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CapExceeded) throw;
    res.note = e.what();
  }
  return res;
}

OmpqCriterion criterion_ompq_fo_eq(const ltl::OmqSpec& q, const OmpqOptions& opt) {
  OmpqCriterion res;
  Prepared p = prepare(q, opt);
  if (!p.t) {
    res.note = p.note;
    return res;
  }
  const TypeSetDfa& t = *p.t;
  try {
    auto dw = criterion_fo_eq(t.dfa);
    if (!dw) {
      DefClass c = definability_verdict(t.dfa).lowest;
      res.outcome = c == DefClass::FO_LT || c == DefClass::FO_LT_EQ ? Outcome::None : Outcome::Unknown;
      res.note = "type-set DFA is quasi-aperiodic";
      return res;
    }
    // B = VU acts on the orbit of q like U
    Word b = cat({&dw->v, &dw->u});
    auto w = lift_cycle(t.dfa, dw->q, b, dw->k);
    if (w) {
      w->v = dw->v;
      w->u = dw->u;
      w = settle(t, *w, opt.length_cap, check_ompq_fo_eq_witness);
    }
    if (!w) {
      res.note = "cycle found but no witness within caps";
      return res;
    }
    res.outcome = Outcome::Witness;
    res.witness = w;
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::CapExceeded) throw;
    res.note = e.what();
  }
  return res;
}

}  // namespace fodef::horn
