// fodef: definability of regular languages and FO-rewritability of LTL OMQs.
// Every command prints one JSON document. Exit: 0 decided, 3 unknown (a cap
// was hit), 2 input error, 1 cross-check mismatch.
#include <fstream>
#include <iostream>
#include <random>

#include "CLI11.hpp"
#include "fodef/automaton_io.hpp"
#include "fodef/deciders.hpp"
#include "json.hpp"

using json = nlohmann::json;
using namespace fodef;
using namespace fodef::ltl;

namespace {

struct Caps {
  int types = kDefaultTypeCap;
  size_t monoid = kDefaultMonoidCap;
  int gap = 64;
};

int emit(const json& j, bool compact, int code = 0) {
  std::cout << (compact ? j.dump() : j.dump(2)) << "\n";
  return code;
}


Dfa load_dfa(const std::string& path) {
  AnyAutomaton a = load_automaton(path);
  if (auto* d = std::get_if<Dfa>(&a)) return *d;
  throw Error(ErrorKind::BadInput, path + " is not a DFA");
}

Nfa load_nfa(const std::string& path) {
  AnyAutomaton a = load_automaton(path);
  if (auto* n = std::get_if<Nfa>(&a)) return *n;
  if (auto* d = std::get_if<Dfa>(&a)) return Nfa::from_dfa(*d);
  throw Error(ErrorKind::BadInput, path + " is not an NFA");
}

TwoNfa load_twonfa(const std::string& path) {
  AnyAutomaton a = load_automaton(path);
  if (auto* t = std::get_if<TwoNfa>(&a)) return *t;
  throw Error(ErrorKind::BadInput, path + " is not a 2NFA");
}

std::string word_text(const Alphabet& s, const Word& w) { return w.empty() ? "" : s.format(w); }

json verdict_json(const DefinabilityVerdict& v) {
  json j;
  j["class"] = def_class_key(v.lowest);
  j["class_name"] = def_class_name(v.lowest);
  if (v.aperiodicity_witness) j["aperiodicity_element"] = *v.aperiodicity_witness;
  if (v.quasi_length) j["quasi_length"] = *v.quasi_length;
  if (v.unsolvable_group_size) j["unsolvable_group_size"] = *v.unsolvable_group_size;
  return j;
}

json criteria_json(const Dfa& d, size_t cap, DefClass& lowest) {
  const Alphabet& s = d.alphabet;
  json w = json::object();
  lowest = DefClass::FO_LT;
  if (auto fo = criterion_fo(d, cap)) {
    w["fo"] = {{"u", word_text(s, fo->u)}, {"q", fo->q}, {"k", fo->k}};
    lowest = DefClass::FO_LT_EQ;
    if (auto eq = criterion_fo_eq(d, cap)) {
      w["fo_eq"] = {{"u", word_text(s, eq->u)}, {"v", word_text(s, eq->v)}, {"q", eq->q}, {"k", eq->k}};
      lowest = DefClass::FO_LT_MOD;
      if (auto mod = criterion_fo_mod(d, cap)) {
        w["fo_mod"] = {{"u", word_text(s, mod->u)}, {"v", word_text(s, mod->v)}, {"q", mod->q}, {"k", mod->k}, {"l", mod->l}};
        lowest = DefClass::FO_RPR_ONLY;
      }
    }
  }
  return w;
}

json definability_json(const Dfa& d, const std::string& how, size_t cap) {
  json j;
  j["states"] = d.num_states;
  std::optional<DefClass> alg, crit;
  if (how != "criterion") {
    DefinabilityVerdict v = definability_verdict(d, cap);
    j["algebraic"] = verdict_json(v);
    alg = v.lowest;
  }
  if (how != "algebraic") {
    DefClass c;
    j["witnesses"] = criteria_json(d, cap, c);
    crit = c;
  }
  DefClass lowest = alg ? *alg : *crit;
  j["class"] = def_class_key(lowest);
  j["class_name"] = def_class_name(lowest);
  if (alg && crit) j["agree"] = *alg == *crit;
  return j;
}

json monoid_json(const Dfa& d, size_t cap, size_t limit) {
  Dfa m = minimize(d).minimal;
  TransitionMonoid tm = TransitionMonoid::of(m, cap);
  json j;
  j["dfa_states"] = m.num_states;
  j["size"] = tm.size();
  j["aperiodic"] = is_aperiodic(tm);
  json els = json::array();
  size_t idem = 0;
  for (int x = 0; x < int(tm.size()); ++x) {
    idem += tm.idempotent(x);
    if (size_t(x) >= limit) continue;
    auto [index, period] = tm.index_period(x);
    els.push_back({{"id", x}, {"word", word_text(m.alphabet, tm.witness(x))}, {"map", tm.map(x)},
                   {"idempotent", tm.idempotent(x)}, {"index", index}, {"period", period}});
  }
  j["idempotents"] = idem;
  j["elements"] = els;
  j["truncated"] = tm.size() > limit;
  json groups = json::array();
  for (auto& g : maximal_subgroups(tm))
    if (g.size() > 1) {
      json gj = {{"identity", g.identity}, {"size", g.size()}, {"solvable", is_solvable(tm, g)}};
      if (auto t = kaplan_levy(tm, g)) gj["kaplan_levy"] = {t->a, t->b, t->c};
      groups.push_back(gj);
    }
  j["nontrivial_maximal_subgroups"] = groups;
  return j;
}

json classify_json(const OmqSpec& q) {
  Classification c = classify(q.ontology);
  json j;
  j["fragment"] = fragment_name(c.c);
  j["operators"] = opclass_name(c.o);
  j["linear"] = c.linear;
  j["bot_free"] = c.bot_free;
  j["idb"] = c.idb;
  j["query_kind"] = query_kind_name(query_kind(q));
  j["mode"] = q.mode == Mode::Boolean ? "boolean" : "specific";
  j["signature"] = q.signature;
  j["route"] = {{"fo", pick_route(q, Target::FO)}, {"fo-eq", pick_route(q, Target::FO_EQ)},
                {"fo-mod", pick_route(q, Target::FO_MOD)}, {"ladder", pick_route(q, Target::Ladder)}};
  return j;
}

json report_json(const DecisionReport& r) {
  json j;
  j["target"] = target_name(r.target);
  j["verdict"] = verdict_name(r.verdict);
  j["route"] = r.route;
  j["lowest"] = r.lowest ? json(def_class_key(*r.lowest)) : json(nullptr);
  if (r.rewriting) j["rewriting"] = *r.rewriting;
  j["evidence"] = r.evidence;
  j["caps_hit"] = r.caps_hit;
  if (r.generic) j["generic"] = verdict_name(*r.generic);
  return j;
}

// ---- oracle cross-check ----

std::string random_literal(std::mt19937& rng, const std::vector<std::string>& atoms) {
  std::string a = atoms[rng() % atoms.size()];
  int off = int(rng() % 3) - 1;
  return off == 0 ? a : (off > 0 ? "Of " : "Op ") + a;
}

std::string random_ontology(std::mt19937& rng, const std::vector<std::string>& atoms, int axioms, bool horn) {
  std::string o;
  for (int i = 0; i < axioms; ++i) {
    std::string x = random_literal(rng, atoms), y = random_literal(rng, atoms);
    switch (rng() % (horn ? 3 : 4)) {
      case 0: o += x + " -> " + y + "\n"; break;
      case 1: o += x + " & " + y + " -> " + random_literal(rng, atoms) + "\n"; break;
      case 2: o += x + " & " + y + " -> bot\n"; break;
      default: o += "top -> " + x + " | " + y + "\n";
    }
  }
  return o;
}

struct Tally {
  int checked = 0, mismatches = 0, capped = 0;
  json to_json() const { return {{"checked", checked}, {"mismatches", mismatches}, {"capped", capped}}; }
};

json crosscheck(bool full, const Caps& caps, int& code) {
  std::mt19937 rng(2024);
  int n_dfa = full ? 400 : 60, n_omq = full ? 120 : 25, len = full ? 4 : 3;
  json out;

  Tally crit;
  for (int i = 0; i < n_dfa; ++i) {
    int n = 1 + int(rng() % (full ? 6 : 4)), k = 1 + int(rng() % 2);
    std::vector<std::string> syms;
    for (int a = 0; a < k; ++a) syms.push_back(std::string(1, char('a' + a)));
    Dfa d(Alphabet(syms), n);
    for (int q = 0; q < n; ++q)
      for (int a = 0; a < k; ++a) d.set(q, a, int(rng() % unsigned(n)));
    for (int q = 0; q < n; ++q) d.finals[size_t(q)] = rng() % 2;
    DefClass c;
    criteria_json(d, caps.monoid, c);
    crit.checked++;
    crit.mismatches += c != definability_verdict(d, caps.monoid).lowest;
  }
  out["criteria_vs_algebra"] = crit.to_json();

  std::vector<std::string> atoms{"A", "B", "C"};
  const char* queries[] = {"A", "B & Df C", "Dp A", "C | Of A", "Bf B"};
  Tally answers, routes;
  for (int i = 0; i < n_omq; ++i) {
    bool horn = i % 2 == 0;
    OmqSpec q = parse_omq("[ontology]\n" + random_ontology(rng, atoms, 1 + int(rng() % 3), horn) + "[query]\n" +
                          queries[i % 5] + "\n[signature A B]\n");
    if (i % 3 == 0) q.mode = Mode::Specific;
    try {
      Nfa m = type_nfa(q, caps.types);
      for (auto& a : all_aboxes(q.signature.size(), len, false)) {
        answers.checked++;
        answers.mismatches += !(certain_answer_nfa(q, m, a) == certain_answer(q, a));
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExceeded) throw;
      answers.capped++;
    }
    for (Target t : {Target::FO, Target::FO_EQ, Target::Ladder}) {
      DecideOptions opt;
      opt.type_cap = caps.types;
      opt.monoid_cap = caps.monoid;
      opt.gap_cap = caps.gap;
      opt.cross_check = true;
      DecisionReport r = decide_rewritability(q, t, opt);
      if (r.verdict == Verdict::Unknown || !r.generic || *r.generic == Verdict::Unknown) {
        routes.capped++;
        continue;
      }
      routes.checked++;
      routes.mismatches += r.verdict != *r.generic;
    }
  }
  out["chase_vs_types"] = answers.to_json();
  out["routes_vs_generic"] = routes.to_json();
  out["suite"] = full ? "full" : "small";
  int mism = crit.mismatches + answers.mismatches + routes.mismatches;
  out["ok"] = mism == 0;
  code = mism ? 1 : 0;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Definability of regular languages and FO-rewritability of LTL ontology-mediated queries"};
  app.require_subcommand(1);
  app.fallthrough();
  Caps caps;
  bool compact = false;
  std::string target_s = "fo", route = "auto";
  app.add_flag("--json", compact, "compact single-line JSON");
  app.add_option("--target", target_s, "fo | fo-eq | fo-mod | ladder");
  app.add_option("--route", route, "auto | generic | linear | both | krom | core-ompeq | core-linear | linear-omaq | linear-ompq");
  app.add_option("--cap-types", caps.types, "cap on temporal subformulas / types");
  app.add_option("--cap-monoid", caps.monoid, "cap on transition monoid size");
  app.add_option("--cap-gap", caps.gap, "cap on witness gap lengths");

  std::string file, file2, word, how = "both", kind = "lt", out, suite = "small";
  int p = 7, states_cap = kDefaultTwoNfaCap;
  size_t limit = 200;
  bool criterion = false, algebraic = false;
  std::function<int()> action;

  auto* dfa = app.add_subcommand("dfa", "DFA commands")->require_subcommand(1);
  auto* dfa_min = dfa->add_subcommand("min", "minimize a DFA");
  dfa_min->add_option("file", file)->required();
  dfa_min->callback([&] {
    action = [&] {
      MinimizationData m = minimize(load_dfa(file));
      return emit({{"dfa", json::parse(to_json(m.minimal))}, {"classes", m.classes}}, compact);
    };
  });
  auto* dfa_def = dfa->add_subcommand("definability", "FO(<) / FO(<,≡) / FO(<,MOD) verdict");
  dfa_def->add_option("file", file)->required();
  dfa_def->add_flag("--criterion", criterion, "witness criteria only");
  dfa_def->add_flag("--algebraic", algebraic, "syntactic monoid only");
  dfa_def->add_flag("--both", "both (default)");
  dfa_def->callback([&] {
    action = [&] {
      std::string h = criterion && !algebraic ? "criterion" : algebraic && !criterion ? "algebraic" : "both";
      return emit(definability_json(load_dfa(file), h, caps.monoid), compact);
    };
  });

  auto* nfa = app.add_subcommand("nfa", "NFA commands")->require_subcommand(1);
  auto* nfa_def = nfa->add_subcommand("definability", "verdict of the determinized NFA");
  nfa_def->add_option("file", file)->required();
  nfa_def->callback([&] {
    action = [&] {
      Dfa d = minimize(determinize(load_nfa(file))).minimal;
      return emit(definability_json(d, "both", caps.monoid), compact);
    };
  });

  auto* two = app.add_subcommand("2nfa", "two-way NFA commands")->require_subcommand(1);
  auto* two_dfa = two->add_subcommand("to-dfa", "equivalent one-way DFA");
  two_dfa->add_option("file", file)->required();
  two_dfa->callback([&] {
    action = [&] {
      Dfa d = twonfa_to_dfa(load_twonfa(file));
      return emit({{"dfa", json::parse(to_json(d))}, {"minimal_states", minimize(d).minimal.num_states}}, compact);
    };
  });
  auto* two_acc = two->add_subcommand("accepts", "membership of a word");
  two_acc->add_option("file", file)->required();
  two_acc->add_option("word", word, "symbols, space separated if longer than one character");
  two_acc->callback([&] {
    action = [&] {
      TwoNfa t = load_twonfa(file);
      return emit({{"word", word}, {"accepted", twonfa_accepts(t, t.alphabet.parse_word(word))}}, compact);
    };
  });
  auto* two_def = two->add_subcommand("definability", "verdict via the behaviour monoid");
  two_def->add_option("file", file)->required();
  two_def->add_option("--cap-states", states_cap, "largest 2NFA accepted");
  two_def->callback([&] {
    action = [&] {
      TwoNfa t = load_twonfa(file);
      TwoNfaVerdict v = twonfa_definability(t, states_cap, caps.monoid);
      json j = verdict_json(v.verdict);
      j["behavior_monoid_size"] = v.behavior_monoid_size;
      j["dfa_states"] = v.dfa_states;
      json w = json::object();
      if (v.fo_u) w["fo_u"] = word_text(t.alphabet, *v.fo_u);
      if (v.fo_eq_u) w["fo_eq_u"] = word_text(t.alphabet, *v.fo_eq_u);
      if (v.fo_eq_v) w["fo_eq_v"] = word_text(t.alphabet, *v.fo_eq_v);
      if (v.mod_u) w["mod_u"] = word_text(t.alphabet, *v.mod_u);
      if (v.mod_v) w["mod_v"] = word_text(t.alphabet, *v.mod_v);
      j["witnesses"] = w;
      return emit(j, compact);
    };
  });

  auto* monoid = app.add_subcommand("monoid", "transition monoid commands")->require_subcommand(1);
  auto* mon_show = monoid->add_subcommand("show", "syntactic monoid of a DFA or NFA");
  mon_show->add_option("file", file)->required();
  mon_show->add_option("--limit", limit, "elements to list");
  mon_show->callback([&] {
    action = [&] { return emit(monoid_json(minimize(determinize(load_nfa(file))).minimal, caps.monoid, limit), compact); };
  });

  auto* omq = app.add_subcommand("omq", "ontology-mediated query commands")->require_subcommand(1);
  auto* omq_cls = omq->add_subcommand("classify", "fragment, query kind and planned route");
  omq_cls->add_option("file", file)->required();
  omq_cls->callback([&] { action = [&] { return emit(classify_json(load_omq(file)), compact); }; });
  auto* omq_ans = omq->add_subcommand("answer", "certain answers over an ABox");
  omq_ans->add_option("omq", file)->required();
  omq_ans->add_option("abox", file2)->required();
  omq_ans->add_option("--method", how, "auto | chase | types")->check(CLI::IsMember({"auto", "chase", "types", "both"}));
  omq_ans->callback([&] {
    action = [&] {
      OmqSpec q = load_omq(file);
      AboxWord a = load_abox(file2, q.signature);
      std::string m = how == "both" ? "auto" : how;
      Answer r = m == "chase" ? certain_answer_chase(q, a) : m == "types" ? certain_answer_types(q, a) : certain_answer(q, a);
      json j = {{"method", m}, {"mode", q.mode == Mode::Boolean ? "boolean" : "specific"}, {"yes", r.yes}};
      if (q.mode == Mode::Specific) j["positions"] = r.positions;
      return emit(j, compact);
    };
  });
  auto* omq_dec = omq->add_subcommand("decide", "rewritability verdict");
  omq_dec->add_option("file", file)->required();
  omq_dec->callback([&] {
    action = [&] {
      OmqSpec q = load_omq(file);
      Target t = parse_target(target_s);
      DecideOptions opt;
      opt.type_cap = caps.types;
      opt.monoid_cap = caps.monoid;
      opt.gap_cap = caps.gap;
      opt.route = route;
      if (route == "both") opt.route = "auto", opt.cross_check = true;
      if (route == "linear") opt.route = query_kind(q) == QueryKind::OMAQ ? "linear-omaq" : "linear-ompq";
      DecisionReport r = decide_rewritability(q, t, opt);
      int code = r.verdict == Verdict::Unknown ? 3 : 0;
      if (r.generic && *r.generic != Verdict::Unknown && r.verdict != Verdict::Unknown && *r.generic != r.verdict) code = 1;
      return emit(report_json(r), compact, code);
    };
  });

  auto* fixtures = app.add_subcommand("fixtures", "fixture automata")->require_subcommand(1);
  auto* bp = fixtures->add_subcommand("bp", "the B^p automata");
  bp->add_option("--kind", kind, "lt | eq | mod")->check(CLI::IsMember({"lt", "eq", "mod"}));
  bp->add_option("--p", p, "prime");
  bp->add_option("--out", out, "write here instead of standard output");
  bp->callback([&] {
    action = [&] {
      BpKind k = kind == "lt" ? BpKind::LT : kind == "eq" ? BpKind::EQ : BpKind::MOD;
      json j = json::parse(to_json(make_bp_automaton(k, p)));
      if (out.empty()) return emit(j, compact);
      std::ofstream f(out);
      if (!f) throw Error(ErrorKind::BadInput, "cannot write " + out);
      f << j.dump(2) << "\n";
      return emit({{"written", out}, {"states", j["states"]}}, compact);
    };
  });

  auto* oracle = app.add_subcommand("oracle", "brute-force cross-checks")->require_subcommand(1);
  auto* cross = oracle->add_subcommand("crosscheck", "criteria vs algebra, chase vs types, routes vs generic");
  cross->add_option("--suite", suite, "small | full")->check(CLI::IsMember({"small", "full"}));
  cross->callback([&] {
    action = [&] {
      int code = 0;
      json j = crosscheck(suite == "full", caps, code);
      return emit(j, compact, code);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    return action ? action() : 2;
  } catch (const Error& e) {
    int code = e.kind() == ErrorKind::CapExceeded ? 3 : 2;
    return emit({{"error", error_kind_name(e.kind())}, {"message", e.what()}}, compact, code);
  } catch (const std::exception& e) {
    return emit({{"error", "BadInput"}, {"message", e.what()}}, compact, 2);
  }
}
