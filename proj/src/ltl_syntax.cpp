#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "fodef/ltl.hpp"

namespace fodef::ltl {

CPtr atom(const std::string& name) {
  auto c = std::make_shared<Concept>();
  c->kind = Kind::Atom;
  c->name = name;
  return c;
}
CPtr top() {
  auto c = std::make_shared<Concept>();
  c->kind = Kind::Top;
  return c;
}
CPtr bot() {
  auto c = std::make_shared<Concept>();
  c->kind = Kind::Bot;
  return c;
}
CPtr unary(Kind k, CPtr x) {
  auto c = std::make_shared<Concept>();
  c->kind = k;
  c->a = std::move(x);
  return c;
}
CPtr binary(Kind k, CPtr x, CPtr y) {
  auto c = std::make_shared<Concept>();
  c->kind = k;
  c->a = std::move(x);
  c->b = std::move(y);
  return c;
}
CPtr conj(const std::vector<CPtr>& cs) {
  if (cs.empty()) return top();
  CPtr r = cs[0];
  for (size_t i = 1; i < cs.size(); ++i) r = binary(Kind::And, r, cs[i]);
  return r;
}
CPtr disj(const std::vector<CPtr>& cs) {
  if (cs.empty()) return bot();
  CPtr r = cs[0];
  for (size_t i = 1; i < cs.size(); ++i) r = binary(Kind::Or, r, cs[i]);
  return r;
}
CPtr shifted(const std::string& a, int j) {
  CPtr c = atom(a);
  for (; j > 0; --j) c = unary(Kind::NextF, c);
  for (; j < 0; ++j) c = unary(Kind::NextP, c);
  return c;
}

namespace {
const char* op_token(Kind k) {
  switch (k) {
    case Kind::NextF: return "Of";
    case Kind::NextP: return "Op";
    case Kind::BoxF: return "Bf";
    case Kind::BoxP: return "Bp";
    case Kind::DiaF: return "Df";
    case Kind::DiaP: return "Dp";
    default: return "";
  }
}
}  // namespace

std::string to_string(const CPtr& c) {
  switch (c->kind) {
    case Kind::Atom: return c->name;
    case Kind::Top: return "top";
    case Kind::Bot: return "bot";
    case Kind::Not: return "!" + to_string(c->a);
    case Kind::And: return "(" + to_string(c->a) + " & " + to_string(c->b) + ")";
    case Kind::Or: return "(" + to_string(c->a) + " | " + to_string(c->b) + ")";
    default: return std::string(op_token(c->kind)) + " " + to_string(c->a);
  }
}

bool is_temporal(Kind k) { return k >= Kind::NextF; }
bool is_future(Kind k) { return k == Kind::NextF || k == Kind::BoxF || k == Kind::DiaF; }

bool is_positive(const CPtr& c) {
  if (c->kind == Kind::Not) return false;
  return (!c->a || is_positive(c->a)) && (!c->b || is_positive(c->b));
}
bool is_positive_existential(const CPtr& c) {
  if (c->kind == Kind::Not || c->kind == Kind::BoxF || c->kind == Kind::BoxP) return false;
  return (!c->a || is_positive_existential(c->a)) && (!c->b || is_positive_existential(c->b));
}
bool has_box(const CPtr& c) {
  if (c->kind == Kind::BoxF || c->kind == Kind::BoxP) return true;
  return (c->a && has_box(c->a)) || (c->b && has_box(c->b));
}
bool has_next(const CPtr& c) {
  if (c->kind == Kind::NextF || c->kind == Kind::NextP) return true;
  return (c->a && has_next(c->a)) || (c->b && has_next(c->b));
}
int count_next(const CPtr& c) {
  int n = c->kind == Kind::NextF || c->kind == Kind::NextP;
  if (c->a) n += count_next(c->a);
  if (c->b) n += count_next(c->b);
  return n;
}
void collect_atoms(const CPtr& c, std::set<std::string>& out) {
  if (c->kind == Kind::Atom) out.insert(c->name);
  if (c->a) collect_atoms(c->a, out);
  if (c->b) collect_atoms(c->b, out);
}
bool is_basic(const CPtr& c) {
  switch (c->kind) {
    case Kind::Atom: return true;
    case Kind::NextF:
    case Kind::NextP:
    case Kind::BoxF:
    case Kind::BoxP: return is_basic(c->a);
    default: return false;
  }
}
std::optional<std::pair<int, std::string>> next_offset(const CPtr& c) {
  int j = 0;
  const Concept* x = c.get();
  while (x->kind == Kind::NextF || x->kind == Kind::NextP) {
    j += x->kind == Kind::NextF ? 1 : -1;
    x = x->a.get();
  }
  if (x->kind != Kind::Atom) return std::nullopt;
  return std::make_pair(j, x->name);
}

std::string to_string(const Axiom& ax) {
  std::string s;
  if (ax.lhs.empty()) s = "top";
  for (size_t i = 0; i < ax.lhs.size(); ++i) s += (i ? " & " : "") + to_string(ax.lhs[i]);
  s += " -> ";
  if (ax.rhs.empty()) s += "bot";
  for (size_t i = 0; i < ax.rhs.size(); ++i) s += (i ? " | " : "") + to_string(ax.rhs[i]);
  return s;
}

const char* fragment_name(Fragment f) {
  switch (f) {
    case Fragment::Core: return "core";
    case Fragment::Krom: return "krom";
    case Fragment::Horn: return "horn";
    default: return "bool";
  }
}
const char* opclass_name(OpClass o) {
  switch (o) {
    case OpClass::Box: return "box";
    case OpClass::Next: return "next";
    default: return "box-next";
  }
}
const char* query_kind_name(QueryKind k) {
  switch (k) {
    case QueryKind::OMAQ: return "OMAQ";
    case QueryKind::OMPEQ: return "OMPEQ";
    case QueryKind::OMPQ: return "OMPQ";
    default: return "OMQ";
  }
}

Classification classify(const Ontology& o) {
  Classification r;
  bool all_core = true, all_krom = true, all_horn = true;
  for (auto& ax : o.axioms) {
    size_t k = ax.lhs.size(), m = ax.rhs.size();
    all_horn = all_horn && m <= 1;
    all_krom = all_krom && k + m <= 2;
    all_core = all_core && m <= 1 && k + m <= 2;
    if (m == 0) r.bot_free = false;
    for (auto* side : {&ax.lhs, &ax.rhs})
      for (auto& c : *side) {
        r.has_box = r.has_box || has_box(c);
        r.has_next = r.has_next || has_next(c);
      }
    for (auto& c : ax.rhs) collect_atoms(c, r.idb);
  }
  r.c = all_core ? Fragment::Core : all_krom ? Fragment::Krom : all_horn ? Fragment::Horn : Fragment::Bool;
  r.o = r.has_box && r.has_next ? OpClass::BoxNext : r.has_box ? OpClass::Box : OpClass::Next;
  r.linear = all_horn;
  for (auto& ax : o.axioms) {
    int idb_count = 0;
    for (auto& c : ax.lhs) {
      std::set<std::string> at;
      collect_atoms(c, at);
      for (auto& a : at) idb_count += r.idb.count(a) ? 1 : 0;
    }
    if (idb_count > 1) r.linear = false;
  }
  return r;
}

std::set<std::string> signature(const Ontology& o) {
  std::set<std::string> s;
  for (auto& ax : o.axioms) {
    for (auto& c : ax.lhs) collect_atoms(c, s);
    for (auto& c : ax.rhs) collect_atoms(c, s);
  }
  return s;
}

std::set<std::string> signature(const OmqSpec& q) {
  auto s = signature(q.ontology);
  collect_atoms(q.query, s);
  return s;
}

QueryKind query_kind(const OmqSpec& q) {
  if (q.query->kind == Kind::Atom) return QueryKind::OMAQ;
  if (is_positive_existential(q.query)) return QueryKind::OMPEQ;
  if (is_positive(q.query)) return QueryKind::OMPQ;
  return QueryKind::OMQ;
}

// ---- parsing ----
namespace {

struct Token {
  enum T { Ident, LParen, RParen, And, Or, Not, Arrow, End } t;
  std::string text;
  int col;
};

[[noreturn]] void syntax(int line, int col, const std::string& msg) {
  throw Error(ErrorKind::SyntaxError, std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

std::vector<Token> lex(const std::string& s, int line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < s.size()) {
    char ch = s[i];
    int col = int(i) + 1;
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (ch == '#') {
      break;
    } else if (ch == '(') {
      out.push_back({Token::LParen, "(", col}), ++i;
    } else if (ch == ')') {
      out.push_back({Token::RParen, ")", col}), ++i;
    } else if (ch == '&') {
      out.push_back({Token::And, "&", col}), ++i;
    } else if (ch == '|') {
      out.push_back({Token::Or, "|", col}), ++i;
    } else if (ch == '!') {
      out.push_back({Token::Not, "!", col}), ++i;
    } else if (ch == '-' && i + 1 < s.size() && s[i + 1] == '>') {
      out.push_back({Token::Arrow, "->", col}), i += 2;
    } else if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_' || s[j] == '\'')) ++j;
      out.push_back({Token::Ident, s.substr(i, j - i), col});
      i = j;
    } else {
      syntax(line, col, std::string("unexpected character '") + ch + "'");
    }
  }
  out.push_back({Token::End, "", int(s.size()) + 1});
  return out;
}

const std::map<std::string, Kind>& operators() {
  static const std::map<std::string, Kind> ops{{"Of", Kind::NextF}, {"Op", Kind::NextP}, {"Bf", Kind::BoxF},
                                               {"Bp", Kind::BoxP},  {"Df", Kind::DiaF},  {"Dp", Kind::DiaP}};
  return ops;
}

struct Parser {
  std::vector<Token> toks;
  size_t p = 0;
  int line;

  const Token& peek() const { return toks[p]; }
  CPtr located(CPtr c, const Token& t) {
    auto m = std::const_pointer_cast<Concept>(c);
    m->line = line;
    m->col = t.col;
    return c;
  }
  CPtr disjunction() {
    CPtr c = conjunction();
    while (peek().t == Token::Or) {
      ++p;
      c = binary(Kind::Or, c, conjunction());
    }
    return c;
  }
  CPtr conjunction() {
    CPtr c = prefixed();
    while (peek().t == Token::And) {
      ++p;
      c = binary(Kind::And, c, prefixed());
    }
    return c;
  }
  CPtr prefixed() {
    const Token& t = peek();
    if (t.t == Token::Not) {
      ++p;
      return located(unary(Kind::Not, prefixed()), t);
    }
    if (t.t == Token::Ident) {
      auto it = operators().find(t.text);
      if (it != operators().end()) {
        ++p;
        return located(unary(it->second, prefixed()), t);
      }
      // an identifier applied to something is an operator we do not know
      const Token& nx = toks[p + 1];
      if (nx.t == Token::Ident || nx.t == Token::LParen || nx.t == Token::Not)
        throw Error(ErrorKind::UnknownOperator,
                    std::to_string(line) + ":" + std::to_string(t.col) + ": unknown operator '" + t.text + "'");
    }
    return primary();
  }
  CPtr primary() {
    const Token& t = peek();
    if (t.t == Token::LParen) {
      ++p;
      CPtr c = disjunction();
      if (peek().t != Token::RParen) syntax(line, peek().col, "expected ')'");
      ++p;
      return c;
    }
    if (t.t == Token::Ident) {
      ++p;
      if (t.text == "top") return located(top(), t);
      if (t.text == "bot") return located(bot(), t);
      return located(atom(t.text), t);
    }
    syntax(line, t.col, t.t == Token::End ? "unexpected end of input" : "unexpected '" + t.text + "'");
  }
};

void split(const CPtr& c, Kind k, std::vector<CPtr>& out) {
  if (c->kind == k) {
    split(c->a, k, out);
    split(c->b, k, out);
  } else {
    out.push_back(c);
  }
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

std::string strip_comment(const std::string& s) {
  size_t h = s.find('#');
  return h == std::string::npos ? s : s.substr(0, h);
}

}  // namespace

CPtr parse_concept(const std::string& text) {
  Parser ps{lex(text, 1), 0, 1};
  CPtr c = ps.disjunction();
  if (ps.peek().t != Token::End) syntax(1, ps.peek().col, "unexpected '" + ps.peek().text + "'");
  return c;
}

Axiom parse_axiom(const std::string& line_text, int line_no) {
  auto toks = lex(line_text, line_no);
  // optional global wrapper Bf Bp ( ... ) or Bp Bf ( ... )
  if (toks.size() >= 5 && toks[0].t == Token::Ident && toks[1].t == Token::Ident && toks[2].t == Token::LParen &&
      ((toks[0].text == "Bf" && toks[1].text == "Bp") || (toks[0].text == "Bp" && toks[1].text == "Bf")) &&
      toks[toks.size() - 2].t == Token::RParen) {
    int depth = 0;
    bool outer = true;
    for (size_t i = 2; i + 1 < toks.size(); ++i) {
      if (toks[i].t == Token::LParen) ++depth;
      if (toks[i].t == Token::RParen && --depth == 0 && i + 2 != toks.size()) outer = false;
    }
    if (outer) {
      std::vector<Token> inner(toks.begin() + 3, toks.end() - 2);
      inner.push_back(toks.back());
      toks = inner;
    }
  }
  size_t arrow = toks.size();
  for (size_t i = 0; i < toks.size(); ++i)
    if (toks[i].t == Token::Arrow) {
      if (arrow != toks.size()) syntax(line_no, toks[i].col, "second '->'");
      arrow = i;
    }
  if (arrow == toks.size()) syntax(line_no, 1, "axiom needs '->'");
  std::vector<Token> l(toks.begin(), toks.begin() + long(arrow)), r(toks.begin() + long(arrow) + 1, toks.end());
  l.push_back({Token::End, "", toks[arrow].col});
  auto side = [&](std::vector<Token> ts, Kind sep, Kind unit, const char* what) {
    Parser ps{std::move(ts), 0, line_no};
    if (ps.peek().t == Token::End) syntax(line_no, ps.peek().col, std::string("empty ") + what);
    CPtr c = ps.disjunction();
    if (ps.peek().t != Token::End) syntax(line_no, ps.peek().col, "unexpected '" + ps.peek().text + "'");
    std::vector<CPtr> parts, out;
    split(c, sep, parts);
    for (auto& x : parts) {
      if (x->kind == unit) continue;
      if (!is_basic(x))
        syntax(line_no, x->col ? x->col : 1, std::string("not a basic temporal concept on the ") + what + ": " + to_string(x));
      out.push_back(x);
    }
    return out;
  };
  Axiom ax;
  ax.lhs = side(l, Kind::And, Kind::Top, "left-hand side");
  ax.rhs = side(r, Kind::Or, Kind::Bot, "right-hand side");
  return ax;
}

Ontology parse_ontology(const std::string& text) {
  Ontology o;
  std::istringstream in(text);
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (trim(strip_comment(line)).empty()) continue;
    o.axioms.push_back(parse_axiom(line, n));
  }
  return o;
}

OmqSpec parse_omq(const std::string& text) {
  OmqSpec q;
  std::istringstream in(text);
  std::string line, section, query_text;
  bool have_sig = false, have_query = false;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    std::string t = trim(strip_comment(line));
    if (t.empty()) continue;
    if (t.front() == '[') {
      if (t.back() != ']') syntax(n, 1, "unterminated section header");
      std::istringstream h(t.substr(1, t.size() - 2));
      std::string name;
      h >> name;
      if (name == "mode") {
        std::string m;
        h >> m;
        if (m == "boolean") q.mode = Mode::Boolean;
        else if (m == "specific") q.mode = Mode::Specific;
        else syntax(n, 1, "mode must be boolean or specific");
        section = "";
      } else if (name == "signature") {
        std::string a;
        while (h >> a) q.signature.push_back(a);
        have_sig = true;
        section = "";
      } else if (name == "ontology" || name == "query") {
        section = name;
      } else {
        syntax(n, 1, "unknown section '" + name + "'");
      }
      continue;
    }
    if (section == "ontology") {
      q.ontology.axioms.push_back(parse_axiom(line, n));
    } else if (section == "query") {
      query_text += " " + t;
      have_query = true;
    } else {
      syntax(n, 1, "text outside a section");
    }
  }
  if (!have_query) throw Error(ErrorKind::SyntaxError, "missing [query] section");
  q.query = parse_concept(query_text);
  if (!have_sig) {
    auto s = signature(q);
    q.signature.assign(s.begin(), s.end());
  }
  std::sort(q.signature.begin(), q.signature.end());
  q.signature.erase(std::unique(q.signature.begin(), q.signature.end()), q.signature.end());
  if (q.signature.size() > 16) throw Error(ErrorKind::CapExceeded, "signature larger than 16 atoms");
  return q;
}

OmqSpec load_omq(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_omq(ss.str());
}

std::string to_text(const OmqSpec& q) {
  std::string s = "[ontology]\n";
  for (auto& ax : q.ontology.axioms) s += to_string(ax) + "\n";
  s += "[query]\n" + to_string(q.query) + "\n";
  s += std::string("[mode ") + (q.mode == Mode::Boolean ? "boolean" : "specific") + "]\n[signature";
  for (auto& a : q.signature) s += " " + a;
  return s + "]\n";
}

// ---- ABoxes ----

AboxWord parse_abox(const std::string& text, const std::vector<std::string>& xi) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::pair<int, int>> facts;
  std::optional<std::pair<int, int>> window;
  std::optional<int> mark;
  while (std::getline(in, line)) {
    std::string t = trim(strip_comment(line));
    if (t.empty()) continue;
    std::istringstream ls(t);
    std::string w;
    ls >> w;
    if (w == "window") {
      int lo, hi;
      if (!(ls >> lo >> hi) || hi < lo - 1) throw Error(ErrorKind::BadInput, "bad window line: " + t);
      window = {lo, hi};
      continue;
    }
    if (w == "mark") {
      int m;
      if (!(ls >> m)) throw Error(ErrorKind::BadInput, "bad mark line: " + t);
      mark = m;
      continue;
    }
    std::replace(t.begin(), t.end(), ',', ' ');
    std::istringstream fs(t);
    while (fs >> w) {
      auto at = w.find('@');
      if (at == std::string::npos) throw Error(ErrorKind::BadInput, "expected Atom@position, got " + w);
      std::string a = w.substr(0, at);
      auto it = std::find(xi.begin(), xi.end(), a);
      if (it == xi.end()) throw Error(ErrorKind::UnknownSymbol, "atom " + a + " is not in the signature");
      int pos;
      try {
        pos = std::stoi(w.substr(at + 1));
      } catch (...) {
        throw Error(ErrorKind::BadInput, "bad position in " + w);
      }
      facts.emplace_back(int(it - xi.begin()), pos);
    }
  }
  int lo = 0, hi = -1;
  if (window) {
    lo = window->first, hi = window->second;
  } else if (!facts.empty()) {
    lo = facts[0].second, hi = facts[0].second;
    for (auto& f : facts) lo = std::min(lo, f.second), hi = std::max(hi, f.second);
    lo = std::min(lo, 0);
  }
  AboxWord w;
  w.letters.assign(size_t(std::max(0, hi - lo + 1)), 0);
  for (auto& [a, p] : facts) {
    if (p < lo || p > hi) throw Error(ErrorKind::PositionOutOfRange, "fact outside the window");
    w.letters[size_t(p - lo)] |= Letter(1) << a;
  }
  if (mark) {
    if (*mark < lo || *mark > hi) throw Error(ErrorKind::PositionOutOfRange, "mark outside the window");
    w.mark = *mark - lo;
  }
  return w;
}

AboxWord load_abox(const std::string& path, const std::vector<std::string>& xi) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::BadInput, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_abox(ss.str(), xi);
}

std::string abox_to_string(const AboxWord& a, const std::vector<std::string>& xi) {
  std::string s = "window 0 " + std::to_string(int(a.size()) - 1) + "\n";
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < xi.size(); ++j)
      if (a.letters[i] >> j & 1) s += xi[j] + "@" + std::to_string(i) + "\n";
  if (a.mark) s += "mark " + std::to_string(*a.mark) + "\n";
  return s;
}

std::string letter_name(Letter a, const std::vector<std::string>& xi) {
  if (a == 0) return "-";
  std::string s;
  for (size_t j = 0; j < xi.size(); ++j)
    if (a >> j & 1) s += (s.empty() ? "" : "+") + xi[j];
  return s;
}

Alphabet sigma_alphabet(const std::vector<std::string>& xi, bool marked) {
  std::vector<std::string> s;
  Letter n = Letter(1) << xi.size();
  for (Letter a = 0; a < n; ++a) s.push_back(letter_name(a, xi));
  if (marked)
    for (Letter a = 0; a < n; ++a) s.push_back(letter_name(a, xi) + "'");
  return Alphabet(s);
}

Word encode(const AboxWord& a, size_t n_xi) {
  Word w;
  for (size_t i = 0; i < a.size(); ++i)
    w.push_back(int(a.letters[i]) + (a.mark && size_t(*a.mark) == i ? (1 << n_xi) : 0));
  return w;
}

AboxWord decode(const Word& w, size_t n_xi) {
  AboxWord a;
  int n = 1 << n_xi;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= n) {
      if (a.mark) throw Error(ErrorKind::BadInput, "more than one marked letter");
      a.mark = int(i);
    }
    a.letters.push_back(Letter(w[i] % n));
  }
  return a;
}

std::vector<AboxWord> all_aboxes(size_t n_xi, int max_len, bool marked) {
  std::vector<AboxWord> out;
  for (auto& w : all_words(1 << n_xi, max_len)) {
    AboxWord a = decode(w, n_xi);
    if (!marked) {
      out.push_back(a);
      continue;
    }
    for (size_t i = 0; i < a.size(); ++i) {
      a.mark = int(i);
      out.push_back(a);
    }
  }
  return out;
}

// ---- reductions ----

std::string fresh_atom(const std::set<std::string>& used, const std::string& base) {
  std::string s = base;
  while (used.count(s)) s += "'";
  return s;
}

namespace {

struct Normalizer {
  std::set<std::string> used;
  std::set<std::string> idb;
  Ontology out;
  int counter = 0;

  std::string fresh() {
    std::string s;
    do s = "N" + std::to_string(++counter);
    while (used.count(s));
    used.insert(s);
    idb.insert(s);  // fresh atoms only ever occur as heads
    return s;
  }
  // lhs (already normal premises) entails rhs
  void emit(std::vector<CPtr> lhs, const CPtr& rhs) {
    if (rhs->kind == Kind::Atom) {
      out.axioms.push_back({fix_premises(std::move(lhs)), {rhs}});
      return;
    }
    // name the premise unless it is a single basic concept
    CPtr p;
    if (lhs.size() == 1) {
      p = lhs[0];
    } else {
      std::string y = fresh();
      out.axioms.push_back({fix_premises(std::move(lhs)), {atom(y)}});
      p = atom(y);
    }
    Kind k = rhs->kind;
    if ((k == Kind::NextF && rhs->a->kind == Kind::BoxF) || (k == Kind::NextP && rhs->a->kind == Kind::BoxP)) {
      // ○□C: X from the next point on, C from the point after
      Kind back = k == Kind::NextF ? Kind::NextP : Kind::NextF;
      std::string x = fresh();
      out.axioms.push_back({fix_premises({unary(back, p)}), {atom(x)}});
      out.axioms.push_back({{unary(back, atom(x))}, {atom(x)}});
      emit({unary(back, atom(x))}, rhs->a->a);
    } else if (k == Kind::NextF || k == Kind::NextP) {
      emit({unary(k == Kind::NextF ? Kind::NextP : Kind::NextF, p)}, rhs->a);
    } else {  // □: X from the next point on, forever
      Kind back = k == Kind::BoxF ? Kind::NextP : Kind::NextF;
      std::string x = fresh();
      out.axioms.push_back({fix_premises({unary(back, p)}), {atom(x)}});
      out.axioms.push_back({{unary(back, atom(x))}, {atom(x)}});
      emit({atom(x)}, rhs->a);
    }
  }
  // IDB atoms may only occur at offsets −1, 0, 1 in ○-only premises
  std::vector<CPtr> fix_premises(std::vector<CPtr> lhs) {
    for (auto& c : lhs) {
      auto off = next_offset(c);
      if (!off || std::abs(off->first) <= 1 || !idb.count(off->second)) continue;
      int j = off->first, step = j > 0 ? 1 : -1;
      std::string cur = off->second;
      // Z_1 at n iff cur at n+step, and so on
      for (int i = 0; i + 1 < std::abs(j); ++i) {
        std::string z = fresh();
        out.axioms.push_back({{shifted(cur, step)}, {atom(z)}});
        cur = z;
      }
      c = shifted(cur, step);
    }
    return lhs;
  }
};

}  // namespace

namespace {
Ontology normalize_impl(const Ontology& o, std::set<std::string> used) {
  Classification cl = classify(o);
  if (cl.c != Fragment::Core && cl.c != Fragment::Horn) throw Error(ErrorKind::NotHorn, "ontology is not Horn");
  Normalizer nz;
  nz.used = std::move(used);
  nz.idb = cl.idb;
  for (auto& ax : o.axioms) {
    if (ax.rhs.empty()) {
      nz.out.axioms.push_back({nz.fix_premises(ax.lhs), {}});
      continue;
    }
    nz.emit(ax.lhs, ax.rhs[0]);
  }
  return nz.out;
}
}  // namespace

Ontology normalize_horn(const Ontology& o) { return normalize_impl(o, signature(o)); }

OmqSpec normalize_horn(const OmqSpec& q) {
  OmqSpec r = q;
  std::set<std::string> used = signature(q);
  used.insert(q.signature.begin(), q.signature.end());
  r.ontology = normalize_impl(q.ontology, used);
  return r;
}

OmqSpec remove_bot(const OmqSpec& q) {
  std::vector<const Axiom*> bots;
  for (auto& ax : q.ontology.axioms)
    if (ax.rhs.empty()) bots.push_back(&ax);
  if (bots.empty()) return q;
  OmqSpec r = q;
  r.ontology.axioms.clear();
  std::set<std::string> used = signature(q);
  used.insert(q.signature.begin(), q.signature.end());
  if (q.query->kind == Kind::Atom) {
    // one fresh atom shared by all ⊥-axioms
    CPtr a = q.query, fa = atom(fresh_atom(used, a->name + "'"));
    for (auto& ax : q.ontology.axioms)
      r.ontology.axioms.push_back(ax.rhs.empty() ? Axiom{ax.lhs, {fa}} : ax);
    r.ontology.axioms.push_back({{fa}, {unary(Kind::NextF, fa)}});
    r.ontology.axioms.push_back({{fa}, {unary(Kind::NextP, fa)}});
    r.ontology.axioms.push_back({{fa}, {a}});
    return r;
  }
  std::vector<CPtr> ds{q.query};
  for (auto& ax : q.ontology.axioms) {
    if (!ax.rhs.empty()) {
      r.ontology.axioms.push_back(ax);
      continue;
    }
    ds.push_back(unary(Kind::DiaF, unary(Kind::DiaP, conj(ax.lhs))));
  }
  r.query = disj(ds);
  return r;
}

OmqSpec specific_to_boolean(const OmqSpec& q) {
  if (q.mode != Mode::Specific) throw Error(ErrorKind::PreconditionViolated, "OMQ is not specific");
  Classification cl = classify(q.ontology);
  if (!cl.bot_free || (cl.c != Fragment::Core && cl.c != Fragment::Horn))
    throw Error(ErrorKind::PreconditionViolated, "specific_to_boolean needs a ⊥-free Horn ontology");
  if (!is_positive(q.query)) throw Error(ErrorKind::PreconditionViolated, "query is not positive");
  std::set<std::string> used = signature(q);
  used.insert(q.signature.begin(), q.signature.end());
  OmqSpec r = q;
  r.mode = Mode::Boolean;
  std::string x = fresh_atom(used, "X");
  used.insert(x);
  if (q.query->kind == Kind::Atom) {
    std::string x2 = fresh_atom(used, x + "'");
    r.ontology.axioms.push_back({{q.query, atom(x)}, {atom(x2)}});
    r.query = atom(x2);
  } else {
    r.query = binary(Kind::And, q.query, atom(x));
  }
  r.signature.push_back(x);
  std::sort(r.signature.begin(), r.signature.end());
  return r;
}

std::string marker_atom(const OmqSpec& specific, const OmqSpec& boolean) {
  for (auto& a : boolean.signature)
    if (std::find(specific.signature.begin(), specific.signature.end(), a) == specific.signature.end()) return a;
  throw Error(ErrorKind::PreconditionViolated, "no marker atom");
}

}  // namespace fodef::ltl
