#include <map>
#include <numeric>
#include <unordered_map>

#include "fodef/twoway.hpp"

namespace fodef {

namespace {
struct StateHash {
  size_t operator()(const BehaviorDfaState& s) const { return s.blr.hash() * 1000003u ^ s.brr.hash(); }
};

struct Ctx {
  const TwoNfa& t;
  std::vector<BehaviorDfaState> states;  // reachable states of the converted DFA
  std::unordered_map<BehaviorDfaState, int, StateHash> sid;
  std::vector<Behavior> elems;  // behaviour monoid, BFS order
  std::vector<Word> wit;
  std::unordered_map<Behavior, int, BehaviorHash> eid;
  std::vector<int> right;  // right[e*k + a]
  std::vector<int> cls;    // ∼-class of each state
  int k;

  bool final_state(const BehaviorDfaState& s) const {
    for (int q0 : t.initials) {
      bool f = false;
      s.blr.row(size_t(q0)).for_each([&](size_t q) { f = f || t.finals[q]; });
      if (f) return true;
    }
    return false;
  }
  int apply(int s, int e) {
    BehaviorDfaState r = behavior_dfa_apply(states[size_t(s)], elems[size_t(e)]);
    auto it = sid.find(r);
    if (it != sid.end()) return it->second;
    throw Error(ErrorKind::PreconditionViolated, "behaviour maps a reachable state outside the reachable set");
  }
};

int cyc(const std::vector<int>& mp, int q) {
  int c = mp[size_t(q)];
  for (int j = 1; j <= int(mp.size()); ++j) {
    if (c == q) return j;
    c = mp[size_t(c)];
  }
  return 0;
}
}  // namespace

TwoNfaVerdict twonfa_definability(const TwoNfa& t, int state_cap, size_t monoid_cap) {
  if (t.num_states > state_cap)
    throw Error(ErrorKind::CapExceeded, "2NFA has " + std::to_string(t.num_states) + " states, cap " + std::to_string(state_cap));
  TwoNfaDfa conv = twonfa_to_dfa_full(t);
  Ctx c{t, conv.states, {}, {}, {}, {}, {}, {}, int(t.alphabet.size())};
  for (size_t i = 0; i < c.states.size(); ++i) c.sid.emplace(c.states[i], int(i));

  c.elems.push_back(neutral_behavior(t.num_states));
  c.wit.push_back({});
  c.eid.emplace(c.elems[0], 0);
  std::vector<Behavior> letters;
  for (int a = 0; a < c.k; ++a) letters.push_back(behavior_of_letter(t, a));
  for (size_t i = 0; i < c.elems.size(); ++i)
    for (int a = 0; a < c.k; ++a) {
      Behavior nb = behavior_compose(c.elems[i], letters[size_t(a)]);
      auto it = c.eid.find(nb);
      if (it == c.eid.end()) {
        if (c.elems.size() >= monoid_cap) throw Error(ErrorKind::CapExceeded, "behaviour monoid exceeds cap");
        it = c.eid.emplace(nb, int(c.elems.size())).first;
        c.elems.push_back(nb);
        Word w = c.wit[i];
        w.push_back(a);
        c.wit.push_back(w);
      }
      c.right.push_back(it->second);
    }
  size_t ns = c.states.size(), ne = c.elems.size();
  // action table and ∼ on converted states via the behaviour monoid
  std::vector<std::vector<int>> act(ne, std::vector<int>(ns));
  for (size_t e = 0; e < ne; ++e)
    for (size_t s = 0; s < ns; ++s) act[e][s] = c.apply(int(s), int(e));
  std::vector<char> fin(ns);
  for (size_t s = 0; s < ns; ++s) fin[s] = c.final_state(c.states[s]);
  {
    std::unordered_map<std::string, int> sig;
    c.cls.resize(ns);
    for (size_t s = 0; s < ns; ++s) {
      std::string key(ne, '0');
      for (size_t e = 0; e < ne; ++e) key[e] = fin[size_t(act[e][s])] ? '1' : '0';
      c.cls[s] = sig.emplace(key, int(sig.size())).first->second;
    }
  }
  int nq = int(ns);
  TwoNfaVerdict out;
  out.behavior_monoid_size = ne;
  out.dfa_states = ns;

  // (i)
  for (size_t e = 0; e < ne && !out.fo_u; ++e)
    for (int s = 0; s < nq; ++s)
      if (c.cls[size_t(s)] != c.cls[size_t(act[e][size_t(s)])] && cyc(act[e], s) > 0) {
        out.fo_u = c.wit[e];
        break;
      }
  if (!out.fo_u) return out;
  out.verdict.lowest = DefClass::FO_LT_EQ;

  // (ii): behaviour sets of equal-length words, eventually periodic in the length
  {
    std::map<std::vector<char>, int> seen;
    std::vector<char> cur(ne, 0);
    std::unordered_map<int, Word> words;
    for (int a = 0; a < c.k; ++a) {
      int g = c.right[size_t(a)];
      if (!cur[size_t(g)]) {
        cur[size_t(g)] = 1;
        words[g] = Word{a};
      }
    }
    while (!seen.count(cur) && !out.fo_eq_u) {
      seen.emplace(cur, 0);
      std::vector<std::pair<std::vector<char>, int>> fixes;
      std::map<std::vector<char>, int> fseen;
      for (size_t y = 0; y < ne; ++y) {
        if (!cur[y]) continue;
        std::vector<char> f(ns, 0);
        for (size_t s = 0; s < ns; ++s) f[s] = act[y][s] == int(s);
        if (fseen.emplace(f, 1).second) fixes.emplace_back(f, int(y));
      }
      for (size_t x = 0; x < ne && !out.fo_eq_u; ++x) {
        if (!cur[x]) continue;
        for (int s = 0; s < nq && !out.fo_eq_u; ++s) {
          if (c.cls[size_t(s)] == c.cls[size_t(act[x][size_t(s)])]) continue;
          int kk = cyc(act[x], s);
          if (!kk) continue;
          for (auto& [f, y] : fixes) {
            bool ok = true;
            for (int j = 0, r = s; j < kk; ++j, r = act[x][size_t(r)]) ok = ok && f[size_t(r)];
            if (ok) {
              out.fo_eq_u = words[int(x)];
              out.fo_eq_v = words[y];
              break;
            }
          }
        }
      }
      std::vector<char> nx(ne, 0);
      std::unordered_map<int, Word> nwords;
      for (size_t x = 0; x < ne; ++x)
        if (cur[x])
          for (int a = 0; a < c.k; ++a) {
            int y = c.right[x * size_t(c.k) + size_t(a)];
            if (!nx[size_t(y)]) {
              nx[size_t(y)] = 1;
              Word w = words[int(x)];
              w.push_back(a);
              nwords[y] = w;
            }
          }
      cur = std::move(nx);
      words = std::move(nwords);
    }
  }
  if (!out.fo_eq_u) return out;
  out.verdict.lowest = DefClass::FO_LT_MOD;

  // (iii): pairs of monoid elements and the orbit of a state under {u,v}*
  int nclasses = 0;
  for (int x : c.cls) nclasses = std::max(nclasses, x + 1);
  if (nclasses >= 5) {
    for (int s = 0; s < nq && !out.mod_u; ++s) {
      std::vector<int> us, vs, vk(ne, 0);
      for (size_t e = 0; e < ne; ++e) {
        const auto& mp = act[e];
        int r = mp[size_t(s)];
        if (c.cls[size_t(r)] != c.cls[size_t(s)] && c.cls[size_t(mp[size_t(r)])] == c.cls[size_t(s)]) us.push_back(int(e));
        // class-level cycle length of v at s
        int cur = r, kk = 0;
        for (int j = 1; j <= nq; ++j) {
          if (c.cls[size_t(cur)] == c.cls[size_t(s)]) {
            kk = j;
            break;
          }
          cur = mp[size_t(cur)];
        }
        if (kk > 2 && kk <= nq && is_prime(kk)) {
          vs.push_back(int(e));
          vk[e] = kk;
        }
      }
      for (int u : us) {
        for (int v : vs) {
          int kk = vk[size_t(v)];
          auto uv = [&](int r) { return act[size_t(v)][size_t(act[size_t(u)][size_t(r)])]; };
          int l = 0;
          for (int j = 1, r = uv(s); j <= nq; ++j, r = uv(r))
            if (c.cls[size_t(r)] == c.cls[size_t(s)]) {
              l = j;
              break;
            }
          if (l < 3 || l % 2 == 0 || std::gcd(l, kk) != 1) continue;
          std::vector<int> stack{s};
          std::vector<char> seen(ns, 0);
          seen[size_t(s)] = 1;
          bool ok = true;
          while (!stack.empty() && ok) {
            int r = stack.back();
            stack.pop_back();
            int r2 = act[size_t(u)][size_t(act[size_t(u)][size_t(r)])];
            int rk = r, rl = r;
            for (int j = 0; j < kk; ++j) rk = act[size_t(v)][size_t(rk)];
            for (int j = 0; j < l; ++j) rl = uv(rl);
            int cr = c.cls[size_t(r)];
            if (c.cls[size_t(r2)] != cr || c.cls[size_t(rk)] != cr || c.cls[size_t(rl)] != cr) ok = false;
            for (int nx : {act[size_t(u)][size_t(r)], act[size_t(v)][size_t(r)]})
              if (!seen[size_t(nx)]) {
                seen[size_t(nx)] = 1;
                stack.push_back(nx);
              }
          }
          if (ok) {
            out.mod_u = c.wit[size_t(u)];
            out.mod_v = c.wit[size_t(v)];
            break;
          }
        }
        if (out.mod_u) break;
      }
    }
  }
  if (out.mod_u) out.verdict.lowest = DefClass::FO_RPR_ONLY;
  return out;
}

}  // namespace fodef
