#include "fodef/twoway.hpp"

#include <unordered_map>

namespace fodef {

TwoNfa::TwoNfa(Alphabet a, int n)
    : alphabet(std::move(a)), num_states(n), trans(size_t(n), std::vector<std::vector<std::pair<int, int>>>(alphabet.size())), finals(size_t(n), false) {}

void TwoNfa::add(int q, int a, int r, int dir) {
  if (dir < -1 || dir > 1) throw Error(ErrorKind::BadInput, "direction must be -1, 0 or 1");
  auto& v = trans[size_t(q)][size_t(a)];
  for (auto& e : v)
    if (e.first == r && e.second == dir) return;
  v.emplace_back(r, dir);
}

int TwoNfa::add_state(bool final) {
  trans.emplace_back(alphabet.size());
  finals.push_back(final);
  return num_states++;
}

void TwoNfa::validate() const {
  if (initials.empty()) throw Error(ErrorKind::BadInput, "2NFA needs an initial state");
  for (int q : initials)
    if (q < 0 || q >= num_states) throw Error(ErrorKind::BadInput, "initial state out of range");
  for (auto& row : trans)
    for (auto& v : row)
      for (auto& [r, d] : v)
        if (r < 0 || r >= num_states || d < -1 || d > 1) throw Error(ErrorKind::BadInput, "bad 2NFA transition");
}

TwoNfa TwoNfa::from_nfa(const Nfa& n) {
  TwoNfa t(n.alphabet, n.num_states);
  for (int q = 0; q < n.num_states; ++q) {
    if (!n.eps[size_t(q)].empty()) throw Error(ErrorKind::BadInput, "ε-transitions cannot be converted to a 2NFA");
    for (size_t a = 0; a < n.alphabet.size(); ++a)
      for (int r : n.trans[size_t(q)][a]) t.add(q, int(a), r, 1);
  }
  t.initials = n.initials;
  t.finals = n.finals;
  return t;
}

Behavior identity_behavior(int n) {
  Relation id = Relation::identity(size_t(n));
  return {id, id, id, id};
}

Behavior neutral_behavior(int n) {
  Relation id = Relation::identity(size_t(n));
  return {id, id, Relation(size_t(n)), Relation(size_t(n))};
}

namespace {
// Saturate stay-moves on letter a, then take the moves in direction dir.
Relation one_letter(const TwoNfa& t, int a, int dir) {
  size_t n = size_t(t.num_states);
  Relation stay(n), move(n);
  for (size_t q = 0; q < n; ++q)
    for (auto& [r, d] : t.trans[q][size_t(a)]) {
      if (d == 0) stay.set(q, size_t(r));
      if (d == dir) move.set(q, size_t(r));
    }
  return stay.closure().compose(move);
}
}  // namespace

Behavior behavior_of_letter(const TwoNfa& t, int a) {
  if (a < 0 || a >= int(t.alphabet.size())) throw Error(ErrorKind::UnknownSymbol, "letter index out of range");
  Relation right = one_letter(t, a, 1), left = one_letter(t, a, -1);
  return {right, left, right, left};
}

Behavior behavior_compose(const Behavior& b, const Behavior& b2) {
  Relation x = b2.ll.compose(b.rr).closure();
  Relation y = b.rr.compose(b2.ll).closure();
  Behavior out;
  out.lr = b.lr.compose(x).compose(b2.lr);
  out.rl = b2.rl.compose(y).compose(b.rl);
  out.rr = b2.rr | b2.rl.compose(y).compose(b.rr).compose(b2.lr);
  out.ll = b.ll | b.lr.compose(x).compose(b2.ll).compose(b.rl);
  return out;
}

Behavior behavior_of_word(const TwoNfa& t, const Word& w) {
  Behavior b = identity_behavior(t.num_states);
  for (size_t i = 0; i < w.size(); ++i) b = i == 0 ? behavior_of_letter(t, w[i]) : behavior_compose(b, behavior_of_letter(t, w[i]));
  return b;
}

namespace {
// Configurations reachable from (q, start) on word w (positions 0..|w|);
// moves are only taken at positions < |w|; exits at `stop` are recorded and
// not continued. Returns states observed at position `target`.
BitSet search(const TwoNfa& t, const Word& w, int q, int start, int target, int stop) {
  size_t n = size_t(t.num_states), len = w.size();
  std::vector<BitSet> seen(len + 1, BitSet(n));
  std::vector<std::pair<int, int>> stack{{q, start}};
  seen[size_t(start)].set(size_t(q));
  BitSet out(n);
  while (!stack.empty()) {
    auto [s, i] = stack.back();
    stack.pop_back();
    if (i == target) {
      out.set(size_t(s));
      if (i == stop || i == int(len)) continue;
    }
    if (i == stop || i >= int(len)) continue;
    for (auto& [r, d] : t.trans[size_t(s)][size_t(w[size_t(i)])]) {
      int j = i + d;
      if (j < 0) continue;
      if (!seen[size_t(j)].test(size_t(r))) {
        seen[size_t(j)].set(size_t(r));
        stack.emplace_back(r, j);
      }
    }
  }
  return out;
}
}  // namespace

Behavior behavior_by_search(const TwoNfa& t, const Word& w) {
  int n = t.num_states;
  if (w.empty()) return identity_behavior(n);
  Behavior b{Relation(size_t(n)), Relation(size_t(n)), Relation(size_t(n)), Relation(size_t(n))};
  int len = int(w.size());
  for (int q = 0; q < n; ++q) {
    b.lr.row(size_t(q)) = search(t, w, q, 0, len, len);
    b.rr.row(size_t(q)) = search(t, w, q, len - 1, len, len);
  }
  for (size_t a = 0; a < t.alphabet.size(); ++a) {
    Word aw{int(a)};
    aw.insert(aw.end(), w.begin(), w.end());
    for (int q = 0; q < n; ++q) {
      b.rl.row(size_t(q)) |= search(t, aw, q, len, 0, 0);
      b.ll.row(size_t(q)) |= search(t, aw, q, 1, 0, 0);
    }
  }
  return b;
}

BehaviorDfaState behavior_dfa_start(const TwoNfa& t) {
  BehaviorDfaState s{Relation(size_t(t.num_states)), Relation(size_t(t.num_states))};
  for (int q : t.initials) s.blr.set(size_t(q), size_t(q));
  return s;
}

BehaviorDfaState behavior_dfa_apply(const BehaviorDfaState& s, const Behavior& b) {
  Relation x = b.ll.compose(s.brr).closure();
  Relation y = s.brr.compose(b.ll).closure();
  return {s.blr.compose(x).compose(b.lr), b.rr | b.rl.compose(y).compose(s.brr).compose(b.lr)};
}

BehaviorDfaState behavior_dfa_step(const BehaviorDfaState& s, const Behavior& letter) { return behavior_dfa_apply(s, letter); }

namespace {
struct StateHash {
  size_t operator()(const BehaviorDfaState& s) const { return s.blr.hash() * 1000003u ^ s.brr.hash(); }
};
}  // namespace

TwoNfaDfa twonfa_to_dfa_full(const TwoNfa& t, size_t cap) {
  t.validate();
  std::vector<Behavior> letters;
  for (size_t a = 0; a < t.alphabet.size(); ++a) letters.push_back(behavior_of_letter(t, int(a)));
  TwoNfaDfa out;
  std::unordered_map<BehaviorDfaState, int, StateHash> ids;
  out.states.push_back(behavior_dfa_start(t));
  ids.emplace(out.states[0], 0);
  std::vector<std::vector<int>> rows;
  for (size_t i = 0; i < out.states.size(); ++i) {
    std::vector<int> row;
    for (size_t a = 0; a < letters.size(); ++a) {
      BehaviorDfaState nx = behavior_dfa_step(out.states[i], letters[a]);
      auto it = ids.find(nx);
      if (it == ids.end()) {
        if (out.states.size() >= cap) throw Error(ErrorKind::CapExceeded, "converted DFA exceeds state cap");
        it = ids.emplace(nx, int(out.states.size())).first;
        out.states.push_back(std::move(nx));
      }
      row.push_back(it->second);
    }
    rows.push_back(std::move(row));
  }
  out.dfa = Dfa(t.alphabet, int(out.states.size()));
  for (size_t i = 0; i < out.states.size(); ++i) {
    for (size_t a = 0; a < letters.size(); ++a) out.dfa.set(int(i), int(a), rows[i][a]);
    bool f = false;
    for (int q0 : t.initials)
      out.states[i].blr.row(size_t(q0)).for_each([&](size_t q) { f = f || t.finals[q]; });
    out.dfa.finals[i] = f;
  }
  return out;
}

Dfa twonfa_to_dfa(const TwoNfa& t) { return twonfa_to_dfa_full(t).dfa; }

bool twonfa_accepts(const TwoNfa& t, const Word& w) {
  for (int a : w)
    if (a < 0 || a >= int(t.alphabet.size())) throw Error(ErrorKind::UnknownSymbol, "letter index out of range");
  int len = int(w.size());
  for (int q0 : t.initials) {
    BitSet end = search(t, w, q0, 0, len, len);
    bool acc = false;
    end.for_each([&](size_t q) { acc = acc || t.finals[q]; });
    if (acc) return true;
  }
  return false;
}

}  // namespace fodef
