#include "fodef/fo_formula.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace fodef::fo {

namespace {
FPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

std::string term(const Term& t) {
  if (t.shift == 0) return t.var;
  return t.var + (t.shift > 0 ? "+" : "-") + std::to_string(std::abs(t.shift));
}
}  // namespace

FPtr truth() { return make({}); }
FPtr falsity() {
  Formula f;
  f.op = Op::False;
  return make(f);
}
FPtr pred(const std::string& p, const std::string& x, int shift) {
  Formula f;
  f.op = Op::Pred, f.pred = p, f.s = {x, shift};
  return make(f);
}
FPtr less(Term a, Term b) {
  Formula f;
  f.op = Op::Less, f.s = std::move(a), f.t = std::move(b);
  return make(f);
}
FPtr less_eq(Term a, Term b) { return negate(less(std::move(b), std::move(a))); }
FPtr equal(Term a, Term b) {
  Formula f;
  f.op = Op::Equal, f.s = std::move(a), f.t = std::move(b);
  return make(f);
}
FPtr mod(Term a, int r, int m) {
  Formula f;
  f.op = Op::Mod, f.s = std::move(a), f.r = r, f.m = m;
  return make(f);
}
FPtr negate(FPtr g) {
  if (g->op == Op::True) return falsity();
  if (g->op == Op::False) return truth();
  if (g->op == Op::Not) return g->args[0];
  Formula f;
  f.op = Op::Not, f.args = {std::move(g)};
  return make(f);
}
FPtr all(std::vector<FPtr> fs) {
  std::vector<FPtr> keep;
  for (auto& g : fs) {
    if (g->op == Op::False) return falsity();
    if (g->op != Op::True) keep.push_back(g);
  }
  if (keep.empty()) return truth();
  if (keep.size() == 1) return keep[0];
  Formula f;
  f.op = Op::And, f.args = std::move(keep);
  return make(f);
}
FPtr any(std::vector<FPtr> fs) {
  std::vector<FPtr> keep;
  for (auto& g : fs) {
    if (g->op == Op::True) return truth();
    if (g->op != Op::False) keep.push_back(g);
  }
  if (keep.empty()) return falsity();
  if (keep.size() == 1) return keep[0];
  Formula f;
  f.op = Op::Or, f.args = std::move(keep);
  return make(f);
}
FPtr exists(const std::string& x, FPtr g) {
  if (g->op == Op::False) return g;
  Formula f;
  f.op = Op::Exists, f.var = x, f.args = {std::move(g)};
  return make(f);
}
FPtr forall(const std::string& x, FPtr g) {
  if (g->op == Op::True) return g;
  Formula f;
  f.op = Op::Forall, f.var = x, f.args = {std::move(g)};
  return make(f);
}
FPtr count_mod(const std::string& x, int r, int m, FPtr g) {
  if (m < 1) throw Error(ErrorKind::BadInput, "modulus must be positive");
  Formula f;
  f.op = Op::CountMod, f.var = x, f.r = ((r % m) + m) % m, f.m = m, f.args = {std::move(g)};
  return make(f);
}

std::string to_string(const FPtr& f) {
  switch (f->op) {
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Pred: return f->pred + "(" + term(f->s) + ")";
    case Op::Less: return term(f->s) + " < " + term(f->t);
    case Op::Equal: return term(f->s) + " = " + term(f->t);
    case Op::Mod: return term(f->s) + " = " + std::to_string(f->r) + " mod " + std::to_string(f->m);
    case Op::Not: return "!" + (f->args[0]->op <= Op::Mod ? "(" + to_string(f->args[0]) + ")" : to_string(f->args[0]));
    case Op::And:
    case Op::Or: {
      std::string s = "(";
      for (size_t i = 0; i < f->args.size(); ++i) s += (i ? (f->op == Op::And ? " & " : " | ") : "") + to_string(f->args[i]);
      return s + ")";
    }
    case Op::Exists: return "exists " + f->var + ". " + to_string(f->args[0]);
    case Op::Forall: return "forall " + f->var + ". " + to_string(f->args[0]);
    case Op::CountMod:
      return "exists[" + std::to_string(f->r) + " mod " + std::to_string(f->m) + "] " + f->var + ". " +
             to_string(f->args[0]);
  }
  return "?";
}

namespace {
void free_rec(const FPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
  auto use = [&](const Term& t) {
    if (!t.var.empty() && !bound.count(t.var)) out.insert(t.var);
  };
  switch (f->op) {
    case Op::Pred:
    case Op::Mod: use(f->s); break;
    case Op::Less:
    case Op::Equal: use(f->s), use(f->t); break;
    case Op::Exists:
    case Op::Forall:
    case Op::CountMod: {
      bool had = bound.count(f->var);
      bound.insert(f->var);
      free_rec(f->args[0], bound, out);
      if (!had) bound.erase(f->var);
      break;
    }
    default:
      for (auto& g : f->args) free_rec(g, bound, out);
  }
}

void preds_rec(const FPtr& f, std::set<std::string>& out) {
  if (f->op == Op::Pred) out.insert(f->pred);
  for (auto& g : f->args) preds_rec(g, out);
}

struct Evaluator {
  const ltl::AboxWord& a;
  std::map<std::string, int> pred_bit;
  std::map<std::string, int> env;

  int val(const Term& t) const { return env.at(t.var) + t.shift; }
  bool eval(const FPtr& f) {
    int n = int(a.size());
    switch (f->op) {
      case Op::True: return true;
      case Op::False: return false;
      case Op::Pred: {
        int p = val(f->s);
        return p >= 0 && p < n && (a.letters[size_t(p)] >> pred_bit.at(f->pred) & 1);
      }
      case Op::Less: return val(f->s) < val(f->t);
      case Op::Equal: return val(f->s) == val(f->t);
      case Op::Mod: return ((val(f->s) - f->r) % f->m + f->m) % f->m == 0;
      case Op::Not: return !eval(f->args[0]);
      case Op::And:
        for (auto& g : f->args)
          if (!eval(g)) return false;
        return true;
      case Op::Or:
        for (auto& g : f->args)
          if (eval(g)) return true;
        return false;
      case Op::Exists:
      case Op::Forall:
      case Op::CountMod: {
        auto saved = env.find(f->var) != env.end() ? std::optional<int>(env[f->var]) : std::nullopt;
        int count = 0;
        bool result = f->op == Op::Forall;
        for (int i = 0; i < n; ++i) {
          env[f->var] = i;
          bool v = eval(f->args[0]);
          if (f->op == Op::Exists && v) { result = true; break; }
          if (f->op == Op::Forall && !v) { result = false; break; }
          count += v;
        }
        if (f->op == Op::CountMod) result = count % f->m == f->r;
        if (saved) env[f->var] = *saved;
        else env.erase(f->var);
        return result;
      }
    }
    return false;
  }
};
}  // namespace

std::set<std::string> free_vars(const FPtr& f) {
  std::set<std::string> bound, out;
  free_rec(f, bound, out);
  return out;
}

std::set<std::string> predicates(const FPtr& f) {
  std::set<std::string> out;
  preds_rec(f, out);
  return out;
}

bool is_plain_fo(const FPtr& f) {
  if (f->op == Op::Mod || f->op == Op::CountMod) return false;
  return std::all_of(f->args.begin(), f->args.end(), is_plain_fo);
}

EvalResult eval_fo_formula(const FPtr& f, const ltl::AboxWord& a, const std::vector<std::string>& xi) {
  Evaluator ev{a, {}, {}};
  for (size_t i = 0; i < xi.size(); ++i) ev.pred_bit[xi[i]] = int(i);
  for (auto& p : predicates(f))
    if (!ev.pred_bit.count(p)) throw Error(ErrorKind::UnboundPredicate, "predicate " + p + " is not in the signature");
  auto fv = free_vars(f);
  if (fv.size() > 1) throw Error(ErrorKind::BadInput, "more than one free variable");
  EvalResult r;
  if (fv.empty()) {
    r.value = ev.eval(f);
    return r;
  }
  r.free_var = *fv.begin();
  for (int i = 0; i < int(a.size()); ++i) {
    ev.env[r.free_var] = i;
    if (ev.eval(f)) r.positions.push_back(i);
  }
  r.value = !r.positions.empty();
  return r;
}

}  // namespace fodef::fo
