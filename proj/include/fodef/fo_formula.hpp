#pragma once
// Monadic first-order formulas over ABox structures: unary predicates, <, =,
// shifted terms x+c, x ≡ r (mod m) and modular counting quantifiers.
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fodef/ltl.hpp"

namespace fodef::fo {

enum class Op { True, False, Pred, Less, Equal, Mod, Not, And, Or, Exists, Forall, CountMod };

struct Term {
  std::string var;
  int shift = 0;
};

struct Formula;
using FPtr = std::shared_ptr<const Formula>;

struct Formula {
  Op op = Op::True;
  std::string pred;  // Pred
  Term s, t;         // Pred(s), s < t, s = t, s ≡ r (mod m)
  int r = 0, m = 1;  // Mod, CountMod
  std::string var;   // quantifiers
  std::vector<FPtr> args;
};

FPtr truth();
FPtr falsity();
FPtr pred(const std::string& p, const std::string& x, int shift = 0);
FPtr less(Term a, Term b);
FPtr less_eq(Term a, Term b);  // ¬(b < a)
FPtr equal(Term a, Term b);
FPtr mod(Term a, int r, int m);
FPtr negate(FPtr f);
FPtr all(std::vector<FPtr> fs);  // ⊤ for an empty list; constants folded
FPtr any(std::vector<FPtr> fs);  // ⊥ for an empty list
FPtr exists(const std::string& x, FPtr f);
FPtr forall(const std::string& x, FPtr f);
// the number of x satisfying f is ≡ r (mod m)
FPtr count_mod(const std::string& x, int r, int m, FPtr f);

std::string to_string(const FPtr& f);
std::set<std::string> free_vars(const FPtr& f);
std::set<std::string> predicates(const FPtr& f);
// no Mod and no CountMod
bool is_plain_fo(const FPtr& f);

struct EvalResult {
  bool value = false;          // sentences
  std::vector<int> positions;  // one free variable: satisfying positions
  std::string free_var;        // empty for sentences
};
// Model checking over 𝔖_A with domain tem(A) = 0..|A|−1.
EvalResult eval_fo_formula(const FPtr& f, const ltl::AboxWord& a, const std::vector<std::string>& xi);

}  // namespace fodef::fo
