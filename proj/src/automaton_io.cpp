#include "fodef/automaton_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fodef {

using nlohmann::json;

namespace {
[[noreturn]] void bad(const std::string& m) { throw Error(ErrorKind::BadInput, m); }

int state_of(const json& j, int n) {
  if (!j.is_number_integer()) bad("state must be an integer");
  int q = j.get<int>();
  if (q < 0 || q >= n) bad("state " + std::to_string(q) + " out of range");
  return q;
}
}  // namespace

AnyAutomaton parse_automaton(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) bad("automaton must be a JSON object");
  static const std::set<std::string> known{"type", "alphabet", "states", "initial", "initials", "finals", "transitions"};
  for (auto& [k, v] : j.items())
    if (!known.count(k)) bad("unknown field '" + k + "'");
  for (auto k : {"type", "alphabet", "states", "finals", "transitions"})
    if (!j.contains(k)) bad(std::string("missing field '") + k + "'");
  std::string type = j["type"].get<std::string>();
  if (type != "dfa" && type != "nfa" && type != "2nfa") bad("type must be dfa, nfa or 2nfa");
  std::vector<std::string> syms;
  for (auto& s : j["alphabet"]) {
    if (!s.is_string()) bad("alphabet entries must be strings");
    if (s.get<std::string>() == "eps") bad("'eps' is reserved for ε");
    syms.push_back(s.get<std::string>());
  }
  Alphabet alpha(syms);
  int n = j["states"].get<int>();
  if (n <= 0) bad("states must be positive");
  std::vector<int> inits;
  if (j.contains("initial")) inits.push_back(state_of(j["initial"], n));
  if (j.contains("initials"))
    for (auto& q : j["initials"]) inits.push_back(state_of(q, n));
  if (inits.empty()) bad("no initial state");
  std::vector<bool> finals(size_t(n), false);
  for (auto& q : j["finals"]) finals[size_t(state_of(q, n))] = true;

  if (type == "dfa") {
    if (inits.size() != 1) bad("a DFA has exactly one initial state");
    Dfa d(alpha, n);
    d.initial = inits[0];
    d.finals = finals;
    std::vector<char> def(size_t(n) * alpha.size(), 0);
    for (auto& tr : j["transitions"]) {
      if (!tr.is_array() || tr.size() != 3) bad("DFA transitions are [from, symbol, to]");
      int q = state_of(tr[0], n), r = state_of(tr[2], n), a = alpha.index(tr[1].get<std::string>());
      size_t slot = size_t(q) * alpha.size() + size_t(a);
      if (def[slot] && d.next(q, a) != r) bad("DFA transition defined twice");
      def[slot] = 1;
      d.set(q, a, r);
    }
    for (char c : def)
      if (!c) bad("DFA transition function is not total");
    return d;
  }
  if (type == "nfa") {
    Nfa m(alpha, n);
    m.initials = inits;
    m.finals = finals;
    for (auto& tr : j["transitions"]) {
      if (!tr.is_array() || tr.size() != 3) bad("NFA transitions are [from, symbol, to]");
      int q = state_of(tr[0], n), r = state_of(tr[2], n);
      std::string s = tr[1].get<std::string>();
      if (s == "eps") m.add_eps(q, r);
      else m.add(q, alpha.index(s), r);
    }
    return m;
  }
  TwoNfa t(alpha, n);
  t.initials = inits;
  t.finals = finals;
  for (auto& tr : j["transitions"]) {
    if (!tr.is_array() || tr.size() != 4) bad("2NFA transitions are [from, symbol, to, dir]");
    int q = state_of(tr[0], n), r = state_of(tr[2], n), a = alpha.index(tr[1].get<std::string>());
    t.add(q, a, r, tr[3].get<int>());
  }
  return t;
}

AnyAutomaton load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_automaton(ss.str());
}

std::string to_json(const Dfa& d) {
  json j;
  j["type"] = "dfa";
  j["alphabet"] = d.alphabet.symbols();
  j["states"] = d.num_states;
  j["initial"] = d.initial;
  json f = json::array(), tr = json::array();
  for (int q = 0; q < d.num_states; ++q) {
    if (d.finals[size_t(q)]) f.push_back(q);
    for (int a = 0; a < d.k(); ++a) tr.push_back({q, d.alphabet.symbol(a), d.next(q, a)});
  }
  j["finals"] = f;
  j["transitions"] = tr;
  return j.dump();
}

std::string to_json(const Nfa& n) {
  json j;
  j["type"] = "nfa";
  j["alphabet"] = n.alphabet.symbols();
  j["states"] = n.num_states;
  j["initials"] = n.initials;
  json f = json::array(), tr = json::array();
  for (int q = 0; q < n.num_states; ++q) {
    if (n.finals[size_t(q)]) f.push_back(q);
    for (size_t a = 0; a < n.alphabet.size(); ++a)
      for (int r : n.trans[size_t(q)][a]) tr.push_back({q, n.alphabet.symbol(int(a)), r});
    for (int r : n.eps[size_t(q)]) tr.push_back({q, "eps", r});
  }
  j["finals"] = f;
  j["transitions"] = tr;
  return j.dump();
}

std::string to_json(const TwoNfa& t) {
  json j;
  j["type"] = "2nfa";
  j["alphabet"] = t.alphabet.symbols();
  j["states"] = t.num_states;
  j["initials"] = t.initials;
  json f = json::array(), tr = json::array();
  for (int q = 0; q < t.num_states; ++q) {
    if (t.finals[size_t(q)]) f.push_back(q);
    for (size_t a = 0; a < t.alphabet.size(); ++a)
      for (auto& [r, d] : t.trans[size_t(q)][a]) tr.push_back({q, t.alphabet.symbol(int(a)), r, d});
  }
  j["finals"] = f;
  j["transitions"] = tr;
  return j.dump();
}

}  // namespace fodef
