#include "fodef/automata.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <sstream>
#include <unordered_map>

namespace fodef {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::UnknownSymbol: return "UnknownSymbol";
    case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::NotUnary: return "NotUnary";
    case ErrorKind::AlphabetViolation: return "AlphabetViolation";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::UnknownOperator: return "UnknownOperator";
    case ErrorKind::NotHorn: return "NotHorn";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::WindowUnstable: return "WindowUnstable";
    case ErrorKind::InconsistencyWithBot: return "InconsistencyWithBot";
    case ErrorKind::NotLinear: return "NotLinear";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::PositionOutOfRange: return "PositionOutOfRange";
    case ErrorKind::NotKrom: return "NotKrom";
    case ErrorKind::NotCore: return "NotCore";
    case ErrorKind::NotPowersetAlphabet: return "NotPowersetAlphabet";
    case ErrorKind::UnboundPredicate: return "UnboundPredicate";
    case ErrorKind::BadInput: return "BadInput";
  }
  return "Error";
}

Alphabet::Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
  for (size_t i = 0; i < symbols_.size(); ++i)
    for (size_t j = i + 1; j < symbols_.size(); ++j)
      if (symbols_[i] == symbols_[j]) throw Error(ErrorKind::BadInput, "duplicate symbol " + symbols_[i]);
}

int Alphabet::find(const std::string& s) const {
  for (size_t i = 0; i < symbols_.size(); ++i)
    if (symbols_[i] == s) return int(i);
  return -1;
}

int Alphabet::index(const std::string& s) const {
  int i = find(s);
  if (i < 0) throw Error(ErrorKind::UnknownSymbol, "symbol '" + s + "' not in alphabet");
  return i;
}

Word Alphabet::parse_word(const std::string& text) const {
  Word w;
  bool separated = text.find_first_of(", ") != std::string::npos;
  bool single_chars = std::all_of(symbols_.begin(), symbols_.end(), [](auto& s) { return s.size() == 1; });
  if (text.empty() || text == "eps") return w;
  if (separated || !single_chars) {
    std::string tok;
    std::string norm = text;
    std::replace(norm.begin(), norm.end(), ',', ' ');
    std::istringstream ns(norm);
    while (ns >> tok) w.push_back(index(tok));
    return w;
  }
  for (char c : text) w.push_back(index(std::string(1, c)));
  return w;
}

std::string Alphabet::format(const Word& w) const {
  if (w.empty()) return "";
  bool single_chars = std::all_of(symbols_.begin(), symbols_.end(), [](auto& s) { return s.size() == 1; });
  std::string out;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i && !single_chars) out += ',';
    out += symbol(w[i]);
  }
  return out;
}

Dfa::Dfa(Alphabet a, int n) : alphabet(std::move(a)), num_states(n), delta(size_t(n) * alphabet.size(), 0), finals(size_t(n), false) {}

int Dfa::run_from(int q, const Word& w) const {
  for (int a : w) {
    if (a < 0 || a >= k()) throw Error(ErrorKind::UnknownSymbol, "letter index out of range");
    q = next(q, a);
  }
  return q;
}

void Dfa::validate() const {
  if (num_states <= 0) throw Error(ErrorKind::BadInput, "DFA needs at least one state");
  if (initial < 0 || initial >= num_states) throw Error(ErrorKind::BadInput, "initial state out of range");
  if (delta.size() != size_t(num_states) * alphabet.size() || finals.size() != size_t(num_states))
    throw Error(ErrorKind::BadInput, "inconsistent DFA tables");
  for (int t : delta)
    if (t < 0 || t >= num_states) throw Error(ErrorKind::BadInput, "transition target out of range");
}

Nfa::Nfa(Alphabet a, int n)
    : alphabet(std::move(a)), num_states(n), trans(size_t(n), std::vector<std::vector<int>>(alphabet.size())), eps(size_t(n)), finals(size_t(n), false) {}

int Nfa::add_state(bool final) {
  trans.emplace_back(alphabet.size());
  eps.emplace_back();
  finals.push_back(final);
  return num_states++;
}

BitSet Nfa::closure(const BitSet& s) const {
  BitSet out = s;
  std::vector<int> stack = s.members();
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int r : eps[size_t(q)])
      if (!out.test(size_t(r))) {
        out.set(size_t(r));
        stack.push_back(r);
      }
  }
  return out;
}

BitSet Nfa::step(const BitSet& s, int a) const {
  BitSet out{size_t(num_states)};
  s.for_each([&](size_t q) {
    for (int r : trans[q][size_t(a)]) out.set(size_t(r));
  });
  return closure(out);
}

Nfa Nfa::from_dfa(const Dfa& d) {
  Nfa n(d.alphabet, d.num_states);
  for (int q = 0; q < d.num_states; ++q)
    for (int a = 0; a < d.k(); ++a) n.add(q, a, d.next(q, a));
  n.initials = {d.initial};
  n.finals = d.finals;
  return n;
}

int dfa_run(const Dfa& d, const Word& w) { return d.run_from(d.initial, w); }

bool nfa_accepts(const Nfa& n, const Word& w) {
  BitSet cur(size_t(n.num_states));
  for (int q : n.initials) cur.set(size_t(q));
  cur = n.closure(cur);
  for (int a : w) {
    if (a < 0 || a >= int(n.alphabet.size())) throw Error(ErrorKind::UnknownSymbol, "letter index out of range");
    cur = n.step(cur, a);
  }
  bool acc = false;
  cur.for_each([&](size_t q) { acc = acc || n.finals[q]; });
  return acc;
}

BitSet reachable_states(const Dfa& d) {
  BitSet seen(size_t(d.num_states));
  std::vector<int> stack{d.initial};
  seen.set(size_t(d.initial));
  while (!stack.empty()) {
    int q = stack.back();
    stack.pop_back();
    for (int a = 0; a < d.k(); ++a) {
      int r = d.next(q, a);
      if (!seen.test(size_t(r))) {
        seen.set(size_t(r));
        stack.push_back(r);
      }
    }
  }
  return seen;
}

MinimizationData minimize(const Dfa& d) {
  MinimizationData md;
  md.reachable = reachable_states(d);
  std::vector<int> states = md.reachable.members();
  std::vector<int> cls(size_t(d.num_states), -1);
  for (int q : states) cls[size_t(q)] = d.finals[size_t(q)] ? 1 : 0;
  // Moore refinement: split by (class, successor classes) until stable
  size_t num = 0;
  while (true) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> next(size_t(d.num_states), -1);
    for (int q : states) {
      std::vector<int> sig{cls[size_t(q)]};
      for (int a = 0; a < d.k(); ++a) sig.push_back(cls[size_t(d.next(q, a))]);
      auto [it, ins] = sig_ids.emplace(sig, int(sig_ids.size()));
      next[size_t(q)] = it->second;
    }
    bool stable = sig_ids.size() == num;
    num = sig_ids.size();
    cls = std::move(next);
    if (stable) break;
  }
  // renumber classes in order of their smallest member
  std::vector<int> order(num, -1);
  int c = 0;
  for (int q : states)
    if (order[size_t(cls[size_t(q)])] < 0) order[size_t(cls[size_t(q)])] = c++;
  md.class_of.assign(size_t(d.num_states), -1);
  md.classes.assign(num, {});
  for (int q : states) {
    int k = order[size_t(cls[size_t(q)])];
    md.class_of[size_t(q)] = k;
    md.classes[size_t(k)].push_back(q);
  }
  md.minimal = Dfa(d.alphabet, int(num));
  for (size_t k = 0; k < num; ++k) {
    int rep = md.classes[k][0];
    md.minimal.finals[k] = d.finals[size_t(rep)];
    for (int a = 0; a < d.k(); ++a) md.minimal.set(int(k), a, md.class_of[size_t(d.next(rep, a))]);
  }
  md.minimal.initial = md.class_of[size_t(d.initial)];
  return md;
}

Dfa determinize(const Nfa& n) {
  std::unordered_map<BitSet, int, BitSetHash> ids;
  std::vector<BitSet> sets;
  BitSet start(size_t(n.num_states));
  for (int q : n.initials) start.set(size_t(q));
  start = n.closure(start);
  ids.emplace(start, 0);
  sets.push_back(start);
  std::vector<std::vector<int>> rows;
  for (size_t i = 0; i < sets.size(); ++i) {
    std::vector<int> row;
    for (int a = 0; a < int(n.alphabet.size()); ++a) {
      BitSet t = n.step(sets[i], a);
      auto it = ids.find(t);
      if (it == ids.end()) {
        it = ids.emplace(t, int(sets.size())).first;
        sets.push_back(t);
      }
      row.push_back(it->second);
    }
    rows.push_back(std::move(row));
  }
  Dfa d(n.alphabet, int(sets.size()));
  for (size_t i = 0; i < sets.size(); ++i) {
    for (int a = 0; a < d.k(); ++a) d.set(int(i), a, rows[i][size_t(a)]);
    bool f = false;
    sets[i].for_each([&](size_t q) { f = f || n.finals[q]; });
    d.finals[i] = f;
  }
  d.initial = 0;
  return d;
}

namespace {
Dfa product(const Dfa& a, const Dfa& b, bool conj) {
  if (!(a.alphabet == b.alphabet)) throw Error(ErrorKind::AlphabetMismatch, "product of DFAs over different alphabets");
  std::unordered_map<long long, int> ids;
  std::vector<std::pair<int, int>> st;
  auto id = [&](int p, int q) {
    long long key = (long long)p * b.num_states + q;
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    ids.emplace(key, int(st.size()));
    st.emplace_back(p, q);
    return int(st.size()) - 1;
  };
  id(a.initial, b.initial);
  std::vector<std::vector<int>> rows;
  for (size_t i = 0; i < st.size(); ++i) {
    std::vector<int> row;
    for (int x = 0; x < a.k(); ++x) row.push_back(id(a.next(st[i].first, x), b.next(st[i].second, x)));
    rows.push_back(row);
  }
  Dfa d(a.alphabet, int(st.size()));
  for (size_t i = 0; i < st.size(); ++i) {
    for (int x = 0; x < a.k(); ++x) d.set(int(i), x, rows[i][size_t(x)]);
    bool fa = a.finals[size_t(st[i].first)], fb = b.finals[size_t(st[i].second)];
    d.finals[i] = conj ? (fa && fb) : (fa || fb);
  }
  return d;
}
}  // namespace

Dfa product_intersect(const Dfa& a, const Dfa& b) { return product(a, b, true); }
Dfa product_union(const Dfa& a, const Dfa& b) { return product(a, b, false); }

Dfa complement(const Dfa& d) {
  Dfa c = d;
  for (size_t i = 0; i < c.finals.size(); ++i) c.finals[i] = !c.finals[i];
  return c;
}

Dfa trim_reachable(const Dfa& d) {
  std::vector<int> id(size_t(d.num_states), -1);
  std::vector<int> order{d.initial};
  id[size_t(d.initial)] = 0;
  for (size_t i = 0; i < order.size(); ++i)
    for (int a = 0; a < d.k(); ++a) {
      int r = d.next(order[i], a);
      if (id[size_t(r)] < 0) {
        id[size_t(r)] = int(order.size());
        order.push_back(r);
      }
    }
  Dfa t(d.alphabet, int(order.size()));
  for (size_t i = 0; i < order.size(); ++i) {
    t.finals[i] = d.finals[size_t(order[i])];
    for (int a = 0; a < d.k(); ++a) t.set(int(i), a, id[size_t(d.next(order[i], a))]);
  }
  return t;
}

std::vector<Word> all_words(int k, int max_len) {
  std::vector<Word> out{Word{}};
  size_t lo = 0;
  for (int len = 1; len <= max_len; ++len) {
    size_t hi = out.size();
    for (size_t i = lo; i < hi; ++i)
      for (int a = 0; a < k; ++a) {
        Word w = out[i];
        w.push_back(a);
        out.push_back(std::move(w));
      }
    lo = hi;
  }
  return out;
}

std::vector<Word> enumerate_language(const Dfa& d, int max_len, int cap) {
  if (max_len > cap) throw Error(ErrorKind::CapExceeded, "enumeration length " + std::to_string(max_len) + " exceeds cap " + std::to_string(cap));
  // breadth-first over (word, state); children in letter order keep length-lex order
  std::vector<Word> out;
  std::vector<std::pair<Word, int>> layer{{Word{}, d.initial}};
  for (int len = 0; len <= max_len; ++len) {
    std::vector<std::pair<Word, int>> nxt;
    for (auto& [w, q] : layer) {
      if (d.finals[size_t(q)]) out.push_back(w);
      if (len < max_len)
        for (int a = 0; a < d.k(); ++a) {
          Word w2 = w;
          w2.push_back(a);
          nxt.emplace_back(std::move(w2), d.next(q, a));
        }
    }
    layer = std::move(nxt);
  }
  return out;
}

std::optional<Word> distinguishing_word(const Dfa& a, const Dfa& b) {
  if (!(a.alphabet == b.alphabet)) throw Error(ErrorKind::AlphabetMismatch, "comparing DFAs over different alphabets");
  std::map<std::pair<int, int>, std::pair<int, int>> parent;  // state -> (prev index, letter)
  std::vector<std::pair<int, int>> st{{a.initial, b.initial}};
  std::map<std::pair<int, int>, int> idx{{st[0], 0}};
  std::vector<std::pair<int, int>> back{{-1, -1}};
  for (size_t i = 0; i < st.size(); ++i) {
    auto [p, q] = st[i];
    if (a.finals[size_t(p)] != b.finals[size_t(q)]) {
      Word w;
      for (int j = int(i); back[size_t(j)].first >= 0; j = back[size_t(j)].first) w.push_back(back[size_t(j)].second);
      std::reverse(w.begin(), w.end());
      return w;
    }
    for (int x = 0; x < a.k(); ++x) {
      std::pair<int, int> n{a.next(p, x), b.next(q, x)};
      if (!idx.count(n)) {
        idx[n] = int(st.size());
        st.push_back(n);
        back.emplace_back(int(i), x);
      }
    }
  }
  return std::nullopt;
}

bool equivalent(const Dfa& a, const Dfa& b) { return !distinguishing_word(a, b).has_value(); }

UnaryClass unary_eventually_constant(const Nfa& n) {
  if (n.alphabet.size() != 1) throw Error(ErrorKind::NotUnary, "alphabet has " + std::to_string(n.alphabet.size()) + " symbols");
  Dfa m = minimize(determinize(n)).minimal;
  // the minimal unary DFA is a lasso: walk until a state repeats
  std::vector<int> seen(size_t(m.num_states), -1);
  std::vector<int> path;
  int q = m.initial;
  while (seen[size_t(q)] < 0) {
    seen[size_t(q)] = int(path.size());
    path.push_back(q);
    q = m.next(q, 0);
  }
  UnaryClass uc{};
  uc.prefix = seen[size_t(q)];
  uc.period = int(path.size()) - uc.prefix;
  bool cycle_any = false, cycle_all = true;
  for (size_t i = size_t(uc.prefix); i < path.size(); ++i) {
    cycle_any = cycle_any || m.finals[size_t(path[i])];
    cycle_all = cycle_all && m.finals[size_t(path[i])];
  }
  if (!cycle_any) {
    uc.kind = UnaryClass::Finite;
    for (int i = 0; i < uc.prefix; ++i)
      if (m.finals[size_t(path[size_t(i)])]) uc.exceptions.push_back(i);
  } else if (cycle_all && uc.period == 1) {
    uc.kind = UnaryClass::Cofinite;
    for (int i = 0; i < uc.prefix; ++i)
      if (!m.finals[size_t(path[size_t(i)])]) uc.exceptions.push_back(i);
  } else {
    uc.kind = UnaryClass::Neither;
  }
  return uc;
}

}  // namespace fodef
