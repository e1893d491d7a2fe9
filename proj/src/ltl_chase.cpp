// Canonical model of a Horn ontology on a lasso window.
//
// Lasso positions 0..W−1; the first and last `period` positions are the
// periodic tails: position i < period stands for every z ≡ i left of the
// window, likewise on the right. A premise at a tail position holds if it
// holds at some copy, and conclusions go to every copy, so any unfolding of a lasso
// model is a Z-model and the lasso result contains the canonical model. When
// the canonical model is `period`-periodic on both tails it folds onto a lasso
// model, so the two coincide; the guards (tails repeat, result unchanged under
// more padding) check that periodicity.
#include <algorithm>

#include "fodef/ltl.hpp"

namespace fodef::ltl {

int CanonicalWindow::index_of(int z) const {
  int w = size(), i = z + padding;
  if (i >= 0 && i < w) return i;
  if (i < 0) return ((i % period) + period) % period;
  int base = w - period;
  return base + (i - base) % period;
}

int CanonicalWindow::atom_index(const std::string& a) const {
  auto it = std::find(atoms.begin(), atoms.end(), a);
  return it == atoms.end() ? -1 : int(it - atoms.begin());
}

bool CanonicalWindow::holds(const std::string& a, int z) const {
  int k = atom_index(a);
  return k >= 0 && at[size_t(index_of(z))].test(size_t(k));
}

namespace {

struct Lasso {
  int w, pi;
  std::vector<int> succ(int i) const {
    if (i == w - 1) return {w - pi};
    if (i == pi - 1) return {pi, 0};
    return {i + 1};
  }
  std::vector<int> pred(int i) const {
    if (i == 0) return {pi - 1};
    if (i == w - pi) return {w - pi - 1, w - 1};
    return {i - 1};
  }
  // union of the strict futures of all copies
  std::pair<int, int> future(int i) const {
    if (i < pi) return {0, w};
    if (i >= w - pi) return {w - pi, w};
    return {i + 1, w};
  }
  std::pair<int, int> past(int i) const {
    if (i >= w - pi) return {0, w};
    if (i < pi) return {0, pi};
    return {0, i};
  }
  // strict future (past) of the copy of i that sees the fewest positions
  std::pair<int, int> min_future(int i) const {
    if (i >= w - pi) return {w - pi, w};
    return {i + 1, w};
  }
  std::pair<int, int> min_past(int i) const {
    if (i < pi) return {0, pi};
    return {0, i};
  }
};

struct Chase {
  const std::vector<std::string>& atoms;
  Lasso L;
  std::vector<BitSet>& at;
  bool changed = false;

  int idx(const std::string& a) const { return int(std::find(atoms.begin(), atoms.end(), a) - atoms.begin()); }

  // truth value of c at every lasso position
  std::vector<char> column(const Concept& c) const {
    int w = L.w;
    std::vector<char> v(size_t(w), 0);
    switch (c.kind) {
      case Kind::Atom: {
        size_t k = size_t(idx(c.name));
        if (k < atoms.size())
          for (int i = 0; i < w; ++i) v[size_t(i)] = at[size_t(i)].test(k);
        return v;
      }
      case Kind::Top: return std::vector<char>(size_t(w), 1);
      case Kind::Bot: return v;
      default: break;
    }
    auto a = column(*c.a);
    if (c.kind == Kind::Not) {
      for (auto& x : a) x = !x;
      return a;
    }
    if (c.kind == Kind::And || c.kind == Kind::Or) {
      auto b = column(*c.b);
      for (size_t i = 0; i < a.size(); ++i) v[i] = c.kind == Kind::And ? a[i] && b[i] : a[i] || b[i];
      return v;
    }
    if (c.kind == Kind::NextF || c.kind == Kind::NextP) {
      for (int i = 0; i < w; ++i)
        for (int j : c.kind == Kind::NextF ? L.succ(i) : L.pred(i)) v[size_t(i)] = v[size_t(i)] || a[size_t(j)];
      return v;
    }
    // prefix/suffix folds: all_suf[j] = a holds on [j, w), and so on
    bool box = c.kind == Kind::BoxF || c.kind == Kind::BoxP;
    std::vector<char> suf(size_t(w) + 1, box), pre(size_t(w) + 1, box);
    for (int j = w - 1; j >= 0; --j) suf[size_t(j)] = box ? suf[size_t(j) + 1] && a[size_t(j)] : suf[size_t(j) + 1] || a[size_t(j)];
    for (int j = 0; j < w; ++j) pre[size_t(j) + 1] = box ? pre[size_t(j)] && a[size_t(j)] : pre[size_t(j)] || a[size_t(j)];
    bool future = c.kind == Kind::BoxF || c.kind == Kind::DiaF;
    for (int i = 0; i < w; ++i) {
      auto [lo, hi] = future ? (box ? L.min_future(i) : L.future(i)) : (box ? L.min_past(i) : L.past(i));
      // every range ends at w or starts at 0
      v[size_t(i)] = future ? (hi == w ? suf[size_t(lo)] : false) : (lo == 0 ? pre[size_t(hi)] : false);
      if (lo >= hi) v[size_t(i)] = box;
    }
    return v;
  }

  // pointwise value, for ○-only concepts
  bool holds(const Concept& c, int i) const {
    switch (c.kind) {
      case Kind::Atom: {
        size_t k = size_t(idx(c.name));
        return k < atoms.size() && at[size_t(i)].test(k);
      }
      case Kind::Top: return true;
      case Kind::And: return holds(*c.a, i) && holds(*c.b, i);
      case Kind::Or: return holds(*c.a, i) || holds(*c.b, i);
      case Kind::NextF:
      case Kind::NextP:
        for (int j : c.kind == Kind::NextF ? L.succ(i) : L.pred(i))
          if (holds(*c.a, j)) return true;
        return false;
      default: return false;
    }
  }

  void assert_at(const Concept& c, int i) {
    switch (c.kind) {
      case Kind::Atom: return set(size_t(idx(c.name)), i);
      case Kind::NextF:
      case Kind::NextP:
        for (int j : c.kind == Kind::NextF ? L.succ(i) : L.pred(i)) assert_at(*c.a, j);
        return;
      default: {
        std::vector<char> where(size_t(L.w), 0);
        where[size_t(i)] = 1;
        assert_all(c, where);
      }
    }
  }

  void set(size_t k, int i) {
    if (!at[size_t(i)].test(k)) at[size_t(i)].set(k), changed = true;
  }

  // assert c at every position in `where`
  void assert_all(const Concept& c, const std::vector<char>& where) {
    int w = L.w;
    std::vector<char> to(size_t(w), 0);
    switch (c.kind) {
      case Kind::Atom: {
        size_t k = size_t(idx(c.name));
        for (int i = 0; i < w; ++i)
          if (where[size_t(i)]) set(k, i);
        return;
      }
      case Kind::NextF:
      case Kind::NextP:
        for (int i = 0; i < w; ++i)
          if (where[size_t(i)])
            for (int j : c.kind == Kind::NextF ? L.succ(i) : L.pred(i)) to[size_t(j)] = 1;
        break;
      case Kind::BoxF:
      case Kind::BoxP: {
        // the ranges are nested, so merging them is a prefix/suffix sweep
        bool f = c.kind == Kind::BoxF;
        int lo = w, hi = 0;
        for (int i = 0; i < w; ++i)
          if (where[size_t(i)]) {
            auto r = f ? L.future(i) : L.past(i);
            lo = std::min(lo, r.first), hi = std::max(hi, r.second);
          }
        for (int j = lo; j < hi; ++j) to[size_t(j)] = 1;
        break;
      }
      default: throw Error(ErrorKind::NotHorn, "right-hand side is not a basic concept");
    }
    assert_all(*c.a, to);
  }
};

int default_padding(const Ontology& o, int period) {
  int m = 0;
  for (auto& ax : o.axioms) {
    for (auto& c : ax.lhs) m += count_next(c);
    for (auto& c : ax.rhs) m += count_next(c);
  }
  return 2 * period + m + 2 * m * m;
}

CanonicalWindow run(const Ontology& o, const AboxWord& a, const std::vector<std::string>& xi,
                    const std::vector<std::string>& atoms, int padding, int period) {
  CanonicalWindow cw;
  cw.atoms = atoms;
  cw.padding = padding;
  cw.period = period;
  cw.length = int(a.size());
  int w = int(a.size()) + 2 * padding;
  cw.at.assign(size_t(w), BitSet(atoms.size()));
  Chase ch{cw.atoms, Lasso{w, period}, cw.at};
  for (size_t p = 0; p < a.size(); ++p)
    for (size_t j = 0; j < xi.size(); ++j)
      if (a.letters[p] >> j & 1) cw.at[p + size_t(padding)].set(size_t(ch.idx(xi[j])));
  // axioms with ○-only premises run pointwise in place, alternating direction,
  // so a ○-chain propagates within one sweep
  auto local = [](const Axiom& ax) {
    for (auto& c : ax.lhs)
      if (has_box(c) || c->kind == Kind::DiaF || c->kind == Kind::DiaP) return false;
    return true;
  };
  bool forward = true;
  do {
    ch.changed = false;
    for (auto& ax : o.axioms) {
      if (!local(ax)) continue;
      for (int k = 0; k < w; ++k) {
        int i = forward ? k : w - 1 - k;
        bool fire = true;
        for (auto& c : ax.lhs) fire = fire && ch.holds(*c, i);
        if (!fire) continue;
        if (ax.rhs.empty()) throw Error(ErrorKind::InconsistencyWithBot, "⊥ derived: " + to_string(ax));
        ch.assert_at(*ax.rhs[0], i);
      }
    }
    forward = !forward;
    for (auto& ax : o.axioms) {
      if (local(ax)) continue;
      std::vector<char> fire(size_t(w), 1);
      for (auto& c : ax.lhs) {
        auto v = ch.column(*c);
        for (int i = 0; i < w; ++i) fire[size_t(i)] = fire[size_t(i)] && v[size_t(i)];
      }
      if (std::find(fire.begin(), fire.end(), 1) == fire.end()) continue;
      if (ax.rhs.empty()) throw Error(ErrorKind::InconsistencyWithBot, "⊥ derived: " + to_string(ax));
      ch.assert_all(*ax.rhs[0], fire);
    }
  } while (ch.changed);
  return cw;
}

bool tails_repeat(const CanonicalWindow& cw) {
  int w = cw.size(), pi = cw.period;
  for (int i = 0; i < pi; ++i) {
    if (!(cw.at[size_t(i)] == cw.at[size_t(i + pi)])) return false;
    if (!(cw.at[size_t(w - pi + i)] == cw.at[size_t(w - 2 * pi + i)])) return false;
  }
  return true;
}

// both windows describe the same Z-structure
bool agree(const CanonicalWindow& x, const CanonicalWindow& y) {
  int lo = -std::max(x.padding, y.padding) - x.period, hi = x.length + std::max(x.padding, y.padding) + x.period;
  for (int z = lo; z <= hi; ++z)
    if (!(x.at[size_t(x.index_of(z))] == y.at[size_t(y.index_of(z))])) return false;
  return true;
}

}  // namespace

std::vector<char> CanonicalWindow::eval(const CPtr& c) const {
  // column() never writes; the shared struct just wants a mutable reference
  auto& cells = const_cast<std::vector<BitSet>&>(at);
  Chase ch{atoms, Lasso{size(), period}, cells};
  return ch.column(*c);
}

bool CanonicalWindow::eval(const CPtr& c, int i) const { return eval(c)[size_t(i)]; }

CanonicalWindow chase_canonical(const Ontology& o, const AboxWord& a, const std::vector<std::string>& xi,
                                ChaseOptions opt, const CPtr& query) {
  Classification cl = classify(o);
  if (cl.c != Fragment::Core && cl.c != Fragment::Horn) throw Error(ErrorKind::NotHorn, "chase needs a Horn ontology");
  std::set<std::string> s = signature(o);
  s.insert(xi.begin(), xi.end());
  if (query) collect_atoms(query, s);
  std::vector<std::string> atoms(s.begin(), s.end());
  int padding = opt.padding >= 0 ? opt.padding : default_padding(o, opt.period);
  padding = std::max(padding, 2 * opt.period);
  for (int attempt = 0; attempt <= opt.max_doublings; ++attempt, padding *= 2) {
    CanonicalWindow x = run(o, a, xi, atoms, padding, opt.period);
    if (!tails_repeat(x)) continue;
    CanonicalWindow y = run(o, a, xi, atoms, padding + opt.period, opt.period);
    if (tails_repeat(y) && agree(x, y)) return x;
  }
  throw Error(ErrorKind::WindowUnstable, "canonical model did not stabilise (period " + std::to_string(opt.period) + ")");
}

Answer certain_answer_chase(const OmqSpec& q, const AboxWord& a, ChaseOptions opt) {
  if (!is_positive(q.query)) throw Error(ErrorKind::PreconditionViolated, "chase answers need a positive query");
  Answer ans;
  CanonicalWindow cw;
  try {
    try {
      cw = chase_canonical(q.ontology, a, q.signature, opt, q.query);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::WindowUnstable || opt.period >= 60) throw;
      ChaseOptions wide = opt;
      wide.period = 60;
      wide.padding = -1;
      cw = chase_canonical(q.ontology, a, q.signature, wide, q.query);
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InconsistencyWithBot) throw;
    if (q.mode == Mode::Boolean) {
      ans.yes = true;
      return ans;
    }
    for (int i = 0; i < int(a.size()); ++i) ans.positions.push_back(i);
    ans.yes = !ans.positions.empty();
    return ans;
  }
  auto v = cw.eval(q.query);
  if (q.mode == Mode::Boolean) {
    ans.yes = std::find(v.begin(), v.end(), 1) != v.end();
  } else {
    for (int i = 0; i < int(a.size()); ++i)
      if (v[size_t(cw.index_of(i))]) ans.positions.push_back(i);
    ans.yes = !ans.positions.empty();
  }
  return ans;
}

}  // namespace fodef::ltl
