#include <functional>

#include "fodef/deciders.hpp"

namespace fodef {

using namespace ltl;

const char* target_name(Target t) {
  switch (t) {
    case Target::FO: return "fo";
    case Target::FO_EQ: return "fo-eq";
    case Target::FO_MOD: return "fo-mod";
    default: return "ladder";
  }
}

Target parse_target(const std::string& s) {
  if (s == "fo") return Target::FO;
  if (s == "fo-eq") return Target::FO_EQ;
  if (s == "fo-mod") return Target::FO_MOD;
  if (s == "ladder") return Target::Ladder;
  throw Error(ErrorKind::BadInput, "unknown target " + s);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Yes: return "yes";
    case Verdict::No: return "no";
    default: return "unknown";
  }
}

namespace {

// is `c` at or below the target level
Verdict meets(DefClass c, Target t) {
  switch (t) {
    case Target::FO: return c == DefClass::FO_LT ? Verdict::Yes : Verdict::No;
    case Target::FO_EQ: return c <= DefClass::FO_LT_EQ ? Verdict::Yes : Verdict::No;
    case Target::FO_MOD: return c <= DefClass::FO_LT_MOD ? Verdict::Yes : Verdict::No;
    default: return Verdict::Yes;
  }
}

void set_class(DecisionReport& r, DefClass c) {
  r.lowest = c;
  r.verdict = meets(c, r.target);
}

bool next_only(const Classification& cl) { return !cl.has_box; }

bool krom_like(const Classification& cl) { return cl.c == Fragment::Core || cl.c == Fragment::Krom; }

// Ξ-preserving reductions to a Boolean ⊥-free OMQ
OmqSpec booleanize(const OmqSpec& q) {
  OmqSpec r = classify(q.ontology).bot_free ? q : remove_bot(q);
  if (r.mode == Mode::Specific) r = specific_to_boolean(r);
  return r;
}

void generic_route(const OmqSpec& q, const DecideOptions& opt, DecisionReport& r) {
  Dfa d = omq_language_dfa(q, opt.type_cap);
  DefinabilityVerdict v = definability_verdict(d, opt.monoid_cap);
  r.evidence["language_states"] = std::to_string(d.num_states);
  if (v.quasi_length) r.evidence["quasi_length"] = std::to_string(*v.quasi_length);
  if (v.unsolvable_group_size) r.evidence["unsolvable_group"] = std::to_string(*v.unsolvable_group_size);
  set_class(r, v.lowest);
}

void linear_omaq_route(const OmqSpec& q, const DecideOptions& opt, DecisionReport& r) {
  auto res = horn::omaq_language_dfa_linear(booleanize(q));
  r.evidence["language_states"] = std::to_string(res.dfa.num_states);
  r.evidence["raw_states"] = std::to_string(res.raw_states);
  set_class(r, definability_verdict(res.dfa, opt.monoid_cap).lowest);
}

std::string format_witness(const OmqSpec& q, const horn::OmpqWitness& w, bool eq) {
  Alphabet s = sigma_alphabet(horn::prepare_ompq(q).signature, false);
  std::string t = "A=" + s.format(w.a) + " B=" + s.format(w.b) + " D=" + s.format(w.d) + " k=" + std::to_string(w.k);
  if (eq) t += " V=" + s.format(w.v) + " U=" + s.format(w.u);
  return t;
}

// Outcome of one criterion: Yes = no witness, No = witness, or Unknown
Verdict run_ompq(const OmqSpec& q, bool eq, const DecideOptions& opt, DecisionReport& r) {
  horn::OmpqOptions o;
  o.length_cap = opt.gap_cap;
  auto c = eq ? horn::criterion_ompq_fo_eq(q, o) : horn::criterion_ompq_fo(q, o);
  std::string key = eq ? "fo_eq" : "fo";
  if (!c.note.empty()) r.evidence[key + "_note"] = c.note;
  if (c.outcome == horn::Outcome::Witness) {
    r.evidence[key + "_witness"] = format_witness(q, *c.witness, eq);
    return Verdict::No;
  }
  if (c.outcome == horn::Outcome::Unknown) r.caps_hit.push_back(key + ": " + c.note);
  return c.outcome == horn::Outcome::None ? Verdict::Yes : Verdict::Unknown;
}

void linear_ompq_route(const OmqSpec& q, const DecideOptions& opt, DecisionReport& r) {
  if (r.target == Target::FO_MOD) {
    r.evidence["fo_mod_route"] = "generic";
    generic_route(q, opt, r);
    return;
  }
  Verdict fo = Verdict::Unknown;
  if (r.target != Target::FO_EQ) {
    fo = run_ompq(q, false, opt, r);
    if (r.target == Target::FO) {
      r.verdict = fo;
      if (fo == Verdict::Yes) r.lowest = DefClass::FO_LT;
      return;
    }
    if (fo == Verdict::Yes) return set_class(r, DefClass::FO_LT);
    if (fo == Verdict::Unknown) return;
  }
  Verdict eq = run_ompq(q, true, opt, r);
  if (r.target == Target::FO_EQ) {
    r.verdict = eq;
    return;
  }
  if (eq == Verdict::Yes) return set_class(r, DefClass::FO_LT_EQ);
  if (eq == Verdict::Unknown) return;
  r.evidence["fo_mod_route"] = "generic";
  generic_route(q, opt, r);
}

void krom_route(const OmqSpec& q, DecisionReport& r) {
  KromDecision k = krom_decide_fo(q);
  r.evidence["exists_set"] = "";
  for (auto& b : k.cls.exists_set) r.evidence["exists_set"] += (r.evidence["exists_set"].empty() ? "" : " ") + b;
  r.evidence["forall_set"] = "";
  for (auto& b : k.cls.forall_set) r.evidence["forall_set"] += (r.evidence["forall_set"].empty() ? "" : " ") + b;
  if (k.rewritable) {
    r.rewriting = fo::to_string(*k.rewriting);
    set_class(r, DefClass::FO_LT);
  } else {
    r.evidence["reason"] = k.reason;
    set_class(r, DefClass::FO_LT_EQ);  // every Krom ○ OMAQ is FO(<,≡)-rewritable
  }
}

void core_ompeq_route(const OmqSpec& q, DecisionReport& r) {
  CoreOmpeqDecision d = core_ompeq_decide_fo(q);
  r.evidence["patterns"] = std::to_string(d.patterns.size());
  r.evidence["pattern_bound"] = std::to_string(d.bound);
  if (d.failing) r.evidence["failing_pattern"] = sigma_alphabet(d.xi, false).format(*d.failing);
  set_class(r, d.rewritable ? DefClass::FO_LT : DefClass::FO_LT_EQ);
}

void core_linear_route(const OmqSpec& q, const DecideOptions& opt, DecisionReport& r) {
  OmqSpec l = core_to_linear(q);
  Verdict v = run_ompq(l, false, opt, r);
  if (v == Verdict::Unknown) return;
  set_class(r, v == Verdict::Yes ? DefClass::FO_LT : DefClass::FO_LT_EQ);
}

}  // namespace

std::string pick_route(const OmqSpec& q, Target target) {
  Classification cl = classify(q.ontology);
  QueryKind k = query_kind(q);
  bool positive = k != QueryKind::OMQ;
  if (k == QueryKind::OMAQ && next_only(cl) && (cl.c == Fragment::Core || cl.c == Fragment::Horn)) {
    try {
      if (classify(booleanize(q).ontology).linear) return "linear-omaq";
    } catch (const Error&) {
    }
  }
  bool fo_level = target == Target::FO || target == Target::Ladder;
  if (!fo_level && next_only(cl) &&
      ((k == QueryKind::OMAQ && krom_like(cl)) || (positive && cl.c == Fragment::Core)))
    return "table";
  if (k == QueryKind::OMAQ && next_only(cl) && krom_like(cl)) return "krom";
  if (positive && next_only(cl) && cl.linear && (cl.c == Fragment::Core || cl.c == Fragment::Horn)) return "linear-ompq";
  if (k != QueryKind::OMPQ && positive && next_only(cl) && cl.c == Fragment::Core) return "core-ompeq";
  if (positive && next_only(cl) && cl.c == Fragment::Core) return "core-linear";
  return "generic";
}

DecisionReport decide_rewritability(const OmqSpec& q, Target target, const DecideOptions& opt) {
  DecisionReport r;
  r.target = target;
  r.route = opt.route == "auto" ? pick_route(q, target) : opt.route;
  auto run = [&](const std::string& route) {
    try {
      if (route == "generic") generic_route(q, opt, r);
      else if (route == "linear-omaq") linear_omaq_route(q, opt, r);
      else if (route == "linear-ompq") linear_ompq_route(q, opt, r);
      else if (route == "krom") krom_route(q, r);
      else if (route == "core-ompeq") core_ompeq_route(q, r);
      else if (route == "core-linear") core_linear_route(q, opt, r);
      else if (route == "table") {
        r.evidence["note"] = "Krom ○ OMAQs and core ○ OMPQs are all FO(<,≡)-rewritable";
        r.verdict = Verdict::Yes;
      } else {
        throw Error(ErrorKind::BadInput, "unknown route " + route);
      }
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExceeded) throw;
      r.verdict = Verdict::Unknown;
      r.lowest.reset();
      r.caps_hit.push_back(route + ": " + e.what());
    }
  };
  run(r.route);
  // an automatically chosen route that ran out of budget falls back to the generic one
  if (r.verdict == Verdict::Unknown && opt.route == "auto" && r.route != "generic") {
    r.evidence["fallback_from"] = r.route;
    r.route = "generic";
    run(r.route);
  }
  if (opt.cross_check && r.route != "generic") {
    DecisionReport g;
    g.target = target;
    try {
      generic_route(q, opt, g);
      r.generic = g.verdict;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::CapExceeded) throw;
      r.generic = Verdict::Unknown;
    }
  }
  return r;
}

}  // namespace fodef
