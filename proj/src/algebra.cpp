#include "fodef/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace fodef {

TransitionMonoid TransitionMonoid::of(const Dfa& d, size_t cap) {
  TransitionMonoid m;
  m.n_ = d.num_states;
  m.k_ = d.k();
  StateMap id(size_t(d.num_states), 0);
  std::iota(id.begin(), id.end(), 0);
  m.maps_.push_back(id);
  m.witness_.push_back({});
  m.index_.emplace(id, 0);
  // BFS over right multiplication by letters: discovery order is the
  // length-lexicographic order of the witnesses.
  for (size_t i = 0; i < m.maps_.size(); ++i) {
    for (int a = 0; a < m.k_; ++a) {
      StateMap nx(size_t(m.n_), 0);
      const StateMap& cur = m.maps_[i];
      for (int q = 0; q < m.n_; ++q) nx[size_t(q)] = d.next(cur[size_t(q)], a);
      auto it = m.index_.find(nx);
      int id2;
      if (it == m.index_.end()) {
        if (m.maps_.size() >= cap)
          throw Error(ErrorKind::CapExceeded, "transition monoid exceeds " + std::to_string(cap) + " elements");
        id2 = int(m.maps_.size());
        m.index_.emplace(nx, id2);
        m.maps_.push_back(std::move(nx));
        Word w = m.witness_[i];
        w.push_back(a);
        m.witness_.push_back(std::move(w));
      } else {
        id2 = it->second;
      }
      m.right_.push_back(id2);
    }
  }
  for (int a = 0; a < m.k_; ++a) m.gen_.push_back(m.right(0, a));
  return m;
}

int TransitionMonoid::find(const StateMap& mp) const {
  auto it = index_.find(mp);
  return it == index_.end() ? -1 : it->second;
}

int TransitionMonoid::mul(int x, int y) const {
  const StateMap& a = maps_[size_t(x)];
  const StateMap& b = maps_[size_t(y)];
  StateMap c(size_t(n_), 0);
  for (int q = 0; q < n_; ++q) c[size_t(q)] = b[size_t(a[size_t(q)])];
  return find(c);
}

int TransitionMonoid::power(int x, long long e) const {
  int r = identity(), base = x;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

std::pair<int, int> TransitionMonoid::index_period(int x) const {
  std::unordered_map<int, int> first;
  int cur = x;
  for (int i = 1;; ++i) {
    auto [it, ins] = first.emplace(cur, i);
    if (!ins) return {it->second, i - it->second};
    cur = mul(cur, x);
  }
}

Word LengthImages::word_for(int i, int x) const {
  Word w;
  for (int t = i; t >= 0; --t) {
    auto [prev, a] = parent[size_t(t)].at(x);
    w.push_back(a);
    x = prev;
  }
  std::reverse(w.begin(), w.end());
  return w;
}

const BitSet& LengthImages::at(long long t) const {
  long long i = t - 1;
  if (i >= (long long)sets.size()) i = prefix + (i - prefix) % cycle;
  return sets[size_t(i)];
}

LengthImages length_images(const TransitionMonoid& m) {
  LengthImages li;
  std::unordered_map<BitSet, int, BitSetHash> seen;
  BitSet cur(m.size());
  std::unordered_map<int, std::pair<int, int>> par;
  for (int a = 0; a < m.num_letters(); ++a) {
    int g = m.generator(a);
    if (!cur.test(size_t(g))) {
      cur.set(size_t(g));
      par.emplace(g, std::make_pair(m.identity(), a));
    }
  }
  while (true) {
    auto it = seen.find(cur);
    if (it != seen.end()) {
      li.prefix = it->second;
      li.cycle = int(li.sets.size()) - it->second;
      return li;
    }
    seen.emplace(cur, int(li.sets.size()));
    li.sets.push_back(cur);
    li.parent.push_back(std::move(par));
    BitSet nx(m.size());
    par = {};
    cur.for_each([&](size_t x) {
      for (int a = 0; a < m.num_letters(); ++a) {
        int y = m.right(int(x), a);
        if (!nx.test(size_t(y))) {
          nx.set(size_t(y));
          par.emplace(y, std::make_pair(int(x), a));
        }
      }
    });
    cur = std::move(nx);
  }
}

SyntacticData syntactic_data(const Dfa& d, size_t cap) {
  MinimizationData md = minimize(d);
  TransitionMonoid m = TransitionMonoid::of(md.minimal, cap);
  LengthImages li = length_images(m);
  return {std::move(md), std::move(m), std::move(li)};
}

std::optional<int> contains_nontrivial_group(const TransitionMonoid& m, const BitSet& s) {
  std::optional<int> found;
  s.for_each([&](size_t x) {
    if (found) return;
    auto [idx, per] = m.index_period(int(x));
    if (per <= 1) return;
    // all positive powers of x inside s
    int cur = int(x);
    for (int i = 1; i < idx + per; ++i) {
      if (!s.test(size_t(cur))) return;
      cur = m.mul(cur, int(x));
    }
    found = int(x);
  });
  return found;
}

bool is_aperiodic(const TransitionMonoid& m) {
  for (size_t x = 0; x < m.size(); ++x)
    if (m.index_period(int(x)).second > 1) return false;
  return true;
}

bool is_quasi_aperiodic(const SyntacticData& sd) {
  for (auto& s : sd.images.sets)
    if (contains_nontrivial_group(sd.monoid, s)) return false;
  return true;
}

GroupSubset make_group(const TransitionMonoid& m, std::vector<int> members, int identity) {
  GroupSubset g;
  std::sort(members.begin(), members.end());
  g.members = std::move(members);
  g.identity = identity;
  for (int x : g.members) {
    int cur = x, ord = 1;
    while (cur != identity) {
      cur = m.mul(cur, x);
      ++ord;
    }
    g.order[x] = ord;
    g.inverse[x] = m.power(x, ord - 1);
  }
  return g;
}

std::vector<GroupSubset> maximal_subgroups(const TransitionMonoid& m) {
  std::vector<GroupSubset> out;
  for (size_t e = 0; e < m.size(); ++e) {
    if (!m.idempotent(int(e))) continue;
    // units of eMe: elements of eMe with some power equal to e
    std::vector<char> in(m.size(), 0);
    std::vector<int> members;
    for (size_t x = 0; x < m.size(); ++x) {
      int y = m.mul(m.mul(int(e), int(x)), int(e));
      if (in[size_t(y)]) continue;
      in[size_t(y)] = 1;
      auto [idx, per] = m.index_period(y);
      if (idx != 1) continue;  // y^(1+per) = y: y lies on its own cycle
      if (m.power(y, per) == int(e)) members.push_back(y);
    }
    out.push_back(make_group(m, std::move(members), int(e)));
  }
  return out;
}

namespace {
std::vector<int> generated(const TransitionMonoid& m, const std::vector<int>& gens, int identity, size_t cap) {
  std::vector<int> elems{identity};
  std::unordered_map<int, char> seen{{identity, 1}};
  for (size_t i = 0; i < elems.size(); ++i)
    for (int g : gens) {
      int y = m.mul(elems[i], g);
      if (seen.emplace(y, 1).second) {
        if (elems.size() >= cap) throw Error(ErrorKind::CapExceeded, "group exceeds cap");
        elems.push_back(y);
      }
    }
  return elems;
}
}  // namespace

bool is_solvable(const TransitionMonoid& m, const GroupSubset& g, size_t cap) {
  if (g.size() > cap) throw Error(ErrorKind::CapExceeded, "group of order " + std::to_string(g.size()) + " exceeds cap");
  std::vector<int> cur = g.members;
  while (cur.size() > 1) {
    GroupSubset h = make_group(m, cur, g.identity);
    std::vector<int> comms;
    std::unordered_map<int, char> seen;
    for (int x : cur)
      for (int y : cur) {
        int c = m.mul(m.mul(h.inverse[x], h.inverse[y]), m.mul(x, y));
        if (seen.emplace(c, 1).second) comms.push_back(c);
      }
    std::vector<int> derived = generated(m, comms, g.identity, cap);
    if (derived.size() == cur.size()) return false;
    std::sort(derived.begin(), derived.end());
    cur = std::move(derived);
  }
  return true;
}

std::optional<KaplanLevyTriple> kaplan_levy(const TransitionMonoid& m, const GroupSubset& g) {
  std::vector<int> twos, primes;
  for (int x : g.members) {
    int o = g.order.at(x);
    if (o == 2) twos.push_back(x);
    if (o > 2 && is_prime(o)) primes.push_back(x);
  }
  for (int a : twos)
    for (int b : primes) {
      int c = g.inverse.at(m.mul(a, b));
      int oc = g.order.at(c), ob = g.order.at(b);
      if (oc > 1 && std::gcd(oc, 2) == 1 && std::gcd(oc, ob) == 1) return KaplanLevyTriple{a, b, c};
    }
  return std::nullopt;
}

const char* def_class_name(DefClass c) {
  switch (c) {
    case DefClass::FO_LT: return "FO(<)";
    case DefClass::FO_LT_EQ: return "FO(<,≡)";
    case DefClass::FO_LT_MOD: return "FO(<,MOD)";
    case DefClass::FO_RPR_ONLY: return "FO(RPR)";
  }
  return "?";
}

std::string def_class_key(DefClass c) {
  switch (c) {
    case DefClass::FO_LT: return "FO_LT";
    case DefClass::FO_LT_EQ: return "FO_LT_EQ";
    case DefClass::FO_LT_MOD: return "FO_LT_MOD";
    case DefClass::FO_RPR_ONLY: return "FO_RPR_ONLY";
  }
  return "?";
}

DefinabilityVerdict verdict_from_syntactic(const SyntacticData& sd, size_t group_cap) {
  DefinabilityVerdict v;
  for (size_t x = 0; x < sd.monoid.size(); ++x)
    if (sd.monoid.index_period(int(x)).second > 1) {
      v.aperiodicity_witness = int(x);
      break;
    }
  if (!v.aperiodicity_witness) return v;
  v.lowest = DefClass::FO_LT_EQ;
  for (size_t i = 0; i < sd.images.sets.size(); ++i)
    if (contains_nontrivial_group(sd.monoid, sd.images.sets[i])) {
      v.quasi_length = int(i) + 1;
      break;
    }
  if (!v.quasi_length) return v;
  v.lowest = DefClass::FO_LT_MOD;
  for (auto& g : maximal_subgroups(sd.monoid))
    if (g.size() > 1 && !is_solvable(sd.monoid, g, group_cap)) {
      v.lowest = DefClass::FO_RPR_ONLY;
      v.unsolvable_group_size = g.size();
      break;
    }
  return v;
}

DefinabilityVerdict definability_verdict(const Dfa& d, size_t cap) { return verdict_from_syntactic(syntactic_data(d, cap)); }

// ---- Witness criteria -------------------------------------------------------

namespace {
// cycle length of q under map, or 0 if q is not on a cycle
int cycle_length(const StateMap& mp, int q) {
  int cur = mp[size_t(q)];
  for (int k = 1; k <= int(mp.size()); ++k) {
    if (cur == q) return k;
    cur = mp[size_t(cur)];
  }
  return 0;
}
}  // namespace

std::optional<FoWitness> criterion_fo(const Dfa& d, size_t cap) {
  MinimizationData md = minimize(d);
  TransitionMonoid m = TransitionMonoid::of(d, cap);
  std::vector<int> reach = md.reachable.members();
  for (size_t x = 0; x < m.size(); ++x) {
    const StateMap& mp = m.map(int(x));
    for (int q : reach) {
      if (md.class_of[size_t(q)] == md.class_of[size_t(mp[size_t(q)])]) continue;
      int k = cycle_length(mp, q);
      if (k > 0) return FoWitness{m.witness(int(x)), q, k};
    }
  }
  return std::nullopt;
}

std::optional<FoEqWitness> criterion_fo_eq(const Dfa& d, size_t cap) {
  MinimizationData md = minimize(d);
  TransitionMonoid m = TransitionMonoid::of(d, cap);
  LengthImages li = length_images(m);
  std::vector<int> reach = md.reachable.members();
  size_t n = size_t(d.num_states);
  // pairs (δ_u, δ_v) with |u| = |v| = t range over S_t × S_t
  for (size_t i = 0; i < li.sets.size(); ++i) {
    const BitSet& s = li.sets[i];
    std::vector<std::pair<BitSet, int>> fixes;  // fixed-point set -> element
    std::unordered_map<BitSet, char, BitSetHash> seen;
    s.for_each([&](size_t y) {
      BitSet f(n);
      const StateMap& mp = m.map(int(y));
      for (size_t q = 0; q < n; ++q)
        if (mp[q] == int(q)) f.set(q);
      if (seen.emplace(f, 1).second) fixes.emplace_back(f, int(y));
    });
    std::optional<FoEqWitness> res;
    s.for_each([&](size_t x) {
      if (res) return;
      const StateMap& mp = m.map(int(x));
      for (int q : reach) {
        if (md.class_of[size_t(q)] == md.class_of[size_t(mp[size_t(q)])]) continue;
        int k = cycle_length(mp, q);
        if (k == 0) continue;
        BitSet orbit(n);
        for (int j = 0, c = q; j < k; ++j, c = mp[size_t(c)]) orbit.set(size_t(c));
        for (auto& [f, y] : fixes)
          if (orbit.subset_of(f)) {
            res = FoEqWitness{li.word_for(int(i), int(x)), li.word_for(int(i), y), q, k};
            return;
          }
      }
    });
    if (res) return res;
  }
  return std::nullopt;
}

std::optional<FoModWitness> criterion_fo_mod(const Dfa& d, size_t cap) {
  MinimizationData md = minimize(d);
  const Dfa& mini = md.minimal;
  int nmin = mini.num_states, nq = d.num_states;
  // The conditions only involve ∼-classes, so the search runs over the
  // syntactic monoid acting on classes. The cycle of v through [q] has odd
  // prime length k and that of uv has length d > 1 coprime to 2 and k; both
  // are cycles of permutations of the same class set, which therefore has at
  // least max(k, d) ≥ 5 elements.
  if (nmin < 5) return std::nullopt;
  TransitionMonoid m = TransitionMonoid::of(mini, cap);
  size_t sz = m.size();
  for (int c = 0; c < nmin; ++c) {
    std::vector<int> us, vs;
    std::vector<int> vk(sz, 0);
    for (size_t x = 0; x < sz; ++x) {
      const StateMap& mp = m.map(int(x));
      if (mp[size_t(c)] != c && mp[size_t(mp[size_t(c)])] == c) us.push_back(int(x));
      int k = cycle_length(mp, c);
      if (k > 2 && k <= nq && is_prime(k)) {
        vs.push_back(int(x));
        vk[x] = k;
      }
    }
    for (int u : us)
      for (int v : vs) {
        const StateMap& mu = m.map(u);
        const StateMap& mv = m.map(v);
        int k = vk[size_t(v)];
        StateMap muv(size_t(nmin), 0);
        for (int s = 0; s < nmin; ++s) muv[size_t(s)] = mv[size_t(mu[size_t(s)])];
        if (muv[size_t(c)] == c) continue;
        int l = cycle_length(muv, c);
        if (l < 3 || l % 2 == 0 || std::gcd(l, k) != 1 || l > nq) continue;
        // closure of [q] under u, v; every class in it must satisfy the period laws
        std::vector<int> stack{c};
        std::vector<char> seen(size_t(nmin), 0);
        seen[size_t(c)] = 1;
        bool ok = true;
        while (!stack.empty() && ok) {
          int r = stack.back();
          stack.pop_back();
          int r2 = mu[size_t(mu[size_t(r)])];
          int rk = r;
          for (int j = 0; j < k; ++j) rk = mv[size_t(rk)];
          int rl = r;
          for (int j = 0; j < l; ++j) rl = muv[size_t(rl)];
          if (r2 != r || rk != r || rl != r) ok = false;
          for (int t : {mu[size_t(r)], mv[size_t(r)]})
            if (!seen[size_t(t)]) {
              seen[size_t(t)] = 1;
              stack.push_back(t);
            }
        }
        if (!ok) continue;
        return FoModWitness{m.witness(u), m.witness(v), md.classes[size_t(c)][0], k, l};
      }
  }
  return std::nullopt;
}

bool check_fo_witness(const Dfa& d, const FoWitness& w) {
  MinimizationData md = minimize(d);
  if (!md.reachable.test(size_t(w.q)) || w.k < 1 || w.k > d.num_states) return false;
  int uq = d.run_from(w.q, w.u);
  if (md.class_of[size_t(uq)] == md.class_of[size_t(w.q)]) return false;
  int cur = w.q;
  for (int i = 0; i < w.k; ++i) cur = d.run_from(cur, w.u);
  return cur == w.q;
}

bool check_fo_eq_witness(const Dfa& d, const FoEqWitness& w) {
  if (w.u.size() != w.v.size()) return false;
  if (!check_fo_witness(d, {w.u, w.q, w.k})) return false;
  int cur = w.q;
  for (int i = 0; i < w.k; ++i) {
    if (d.run_from(cur, w.v) != cur) return false;
    cur = d.run_from(cur, w.u);
  }
  return true;
}

bool check_fo_mod_witness(const Dfa& d, const FoModWitness& w) {
  MinimizationData md = minimize(d);
  auto cls = [&](int q) { return md.class_of[size_t(q)]; };
  if (!md.reachable.test(size_t(w.q))) return false;
  if (!(w.k > 2 && is_prime(w.k) && w.k <= d.num_states)) return false;
  if (!(w.l > 1 && w.l % 2 == 1 && std::gcd(w.l, w.k) == 1 && w.l <= d.num_states)) return false;
  Word uv = w.u;
  uv.insert(uv.end(), w.v.begin(), w.v.end());
  if (cls(d.run_from(w.q, w.u)) == cls(w.q) || cls(d.run_from(w.q, w.v)) == cls(w.q) || cls(d.run_from(w.q, uv)) == cls(w.q))
    return false;
  auto pow_run = [&](int q, const Word& x, int e) {
    for (int i = 0; i < e; ++i) q = d.run_from(q, x);
    return q;
  };
  // δ_x(q) over x ∈ {u,v}* is the closure of q under u and v
  std::vector<int> stack{w.q};
  std::vector<char> seen(size_t(d.num_states), 0);
  seen[size_t(w.q)] = 1;
  while (!stack.empty()) {
    int r = stack.back();
    stack.pop_back();
    int c = cls(r);
    if (cls(pow_run(r, w.u, 2)) != c || cls(pow_run(r, w.v, w.k)) != c || cls(pow_run(r, uv, w.l)) != c) return false;
    for (int t : {d.run_from(r, w.u), d.run_from(r, w.v)})
      if (!seen[size_t(t)]) {
        seen[size_t(t)] = 1;
        stack.push_back(t);
      }
  }
  return true;
}

// ---- Language expansion and fixtures ----------------------------------------

Dfa expand_language(const Dfa& d, const std::vector<std::string>& gamma, const std::vector<std::string>& delta,
                    const std::string& x, const std::string& y) {
  const auto& sigma = d.alphabet.symbols();
  auto has = [](const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); };
  if (has(sigma, x) || has(sigma, y) || x == y) throw Error(ErrorKind::AlphabetViolation, "x and y must be distinct and outside Σ");
  for (auto& s : sigma)
    if (!has(gamma, s)) throw Error(ErrorKind::AlphabetViolation, "Σ ⊄ Γ");
  if (!has(gamma, x) || !has(gamma, y)) throw Error(ErrorKind::AlphabetViolation, "x, y must be in Γ");
  for (auto& s : gamma)
    if (!has(delta, s)) throw Error(ErrorKind::AlphabetViolation, "Γ ⊄ Δ");

  Dfa m = minimize(d).minimal;
  // trash = states from which no final state is reachable
  std::vector<char> live(size_t(m.num_states), 0);
  for (bool changed = true; changed;) {
    changed = false;
    for (int q = 0; q < m.num_states; ++q) {
      if (live[size_t(q)]) continue;
      bool l = m.finals[size_t(q)];
      for (int a = 0; a < m.k() && !l; ++a) l = live[size_t(m.next(q, a))];
      if (l) live[size_t(q)] = changed = true;
    }
  }
  std::vector<int> id(size_t(m.num_states), -1);
  int n = 0;
  for (int q = 0; q < m.num_states; ++q)
    if (live[size_t(q)]) id[size_t(q)] = n++;
  int tr = n, q0p = n + 1, f = n + 2;
  Alphabet big(delta);
  Dfa out(big, n + 3);
  out.initial = q0p;
  out.finals[size_t(f)] = true;
  int start = live[size_t(m.initial)] ? id[size_t(m.initial)] : tr;
  for (size_t a = 0; a < delta.size(); ++a) {
    const std::string& s = delta[a];
    bool in_gamma = has(gamma, s);
    int sa = d.alphabet.find(s);
    for (int q = 0; q < m.num_states; ++q) {
      if (!live[size_t(q)]) continue;
      int t;
      if (!in_gamma) t = tr;
      else if (s == x) t = start;
      else if (s == y) t = m.finals[size_t(q)] ? f : q0p;
      else if (sa >= 0) t = live[size_t(m.next(q, sa))] ? id[size_t(m.next(q, sa))] : q0p;
      else t = q0p;
      out.set(id[size_t(q)], int(a), t);
    }
    out.set(q0p, int(a), !in_gamma ? tr : (s == x ? start : q0p));
    out.set(f, int(a), in_gamma ? f : tr);
    out.set(tr, int(a), tr);
  }
  return out;
}

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long i = 2; i * i <= n; ++i)
    if (n % i == 0) return false;
  return true;
}

Dfa make_bp_automaton(BpKind kind, int p) {
  if (!is_prime(p) || p == 2) throw Error(ErrorKind::BadPrime, std::to_string(p) + " is not an odd prime");
  if (kind == BpKind::MOD && (p <= 5 || p % 10 == 1 || p % 10 == 9))
    throw Error(ErrorKind::BadPrime, "MOD fixture needs p > 5 with p ≢ ±1 (mod 10)");
  if (kind == BpKind::LT) {
    Dfa d(Alphabet({"a"}), p);
    for (int i = 0; i < p; ++i) d.set(i, 0, (i + 1) % p);
    d.finals[0] = true;
    return d;
  }
  if (kind == BpKind::EQ) {
    Dfa d(Alphabet({"a", "nat"}), p);
    for (int i = 0; i < p; ++i) {
      d.set(i, 0, (i + 1) % p);
      d.set(i, 1, i);
    }
    d.finals[0] = true;
    return d;
  }
  Dfa d(Alphabet({"a", "nat"}), p + 1);
  for (int i = 0; i < p; ++i) d.set(i, 0, (i + 1) % p);
  d.set(p, 0, p);
  d.set(0, 1, p);
  d.set(p, 1, 0);
  for (int i = 1; i < p; ++i)
    for (int j = 1; j < p; ++j)
      if ((i * j) % p == p - 1) d.set(i, 1, j);
  d.finals[0] = true;
  return d;
}

}  // namespace fodef
