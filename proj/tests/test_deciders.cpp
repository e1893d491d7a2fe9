#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "fodef/deciders.hpp"
#include "support.hpp"

using namespace fodef;
using namespace fodef::ltl;

namespace {

OmqSpec omq(const std::string& onto, const std::string& query, const std::string& extra = "") {
  return parse_omq("[ontology]\n" + onto + "\n[query]\n" + query + "\n" + extra);
}

AboxWord abox(const std::string& text, const OmqSpec& q) { return parse_abox(text, q.signature); }

// answers of a rewriting, in the shape certain_answer reports them
Answer rewriting_answer(const fo::FPtr& f, const OmqSpec& q, const AboxWord& a) {
  fo::EvalResult e = fo::eval_fo_formula(f, a, q.signature);
  Answer r;
  if (q.mode == Mode::Boolean) {
    r.yes = e.value;
    return r;
  }
  if (e.free_var.empty()) {
    if (e.value) {
      r.positions.resize(a.size());
      std::iota(r.positions.begin(), r.positions.end(), 0);
    }
  } else {
    r.positions = e.positions;
  }
  r.yes = !r.positions.empty();
  return r;
}

std::string literal_text(std::mt19937& rng, const std::vector<std::string>& atoms) {
  std::string a = atoms[rng() % atoms.size()];
  int off = int(rng() % 3) - 1;
  return off == 0 ? a : (off > 0 ? "Of " : "Op ") + a;
}

// random Krom ○-ontology: C → D, C ∧ D → ⊥, ⊤ → C ∨ D
std::string random_krom_text(std::mt19937& rng, const std::vector<std::string>& atoms, int axioms, bool core) {
  std::string o;
  for (int i = 0; i < axioms; ++i) {
    int form = int(rng() % (core ? 2 : 3));
    std::string x = literal_text(rng, atoms), y = literal_text(rng, atoms);
    if (form == 0) o += x + " -> " + y + "\n";
    else if (form == 1) o += x + " & " + y + " -> bot\n";
    else o += "top -> " + x + " | " + y + "\n";
  }
  return o;
}

const char* kRho3Xi = "[signature A0 A1 B0 B1 E]";

fo::FPtr rho1() {
  using namespace fo;
  auto between = all({less({"x", 0}, {"z", 0}), less_eq({"z", 0}, {"y", 0})});
  return all({pred("D", "x"),
              any({pred("C", "x"),
                   exists("y", all({pred("A", "y"), forall("z", any({negate(between), pred("B", "z")}))}))})});
}

fo::FPtr rho2() {
  using namespace fo;
  auto odd = [](const char* x, const char* y) {
    auto ex = mod({x, 0}, 0, 2), ey = mod({y, 0}, 0, 2);
    return any({all({ex, negate(ey)}), all({negate(ex), ey})});
  };
  auto body = any({all({pred("A", "x"), pred("A", "y"), odd("x", "y")}), all({pred("B", "x"), pred("B", "y"), odd("x", "y")}),
                   all({pred("A", "x"), pred("B", "y"), negate(odd("x", "y"))})});
  return any({pred("C", "x"), exists("x", exists("y", body))});
}

fo::FPtr rho3() {
  using namespace fo;
  auto window = all({less({"y", 0}, {"z", 0}), less_eq({"z", 0}, {"x", 0})});
  auto even_ones = count_mod("z", 0, 2, all({window, pred("A1", "z")}));
  return exists("x", exists("y", all({pred("E", "x"), less_eq({"y", 0}, {"x", 0}),
                                      forall("z", any({negate(window), pred("A0", "z"), pred("A1", "z")})),
                                      any({all({pred("B0", "y"), even_ones}), all({pred("B1", "y"), negate(even_ones)})})})));
}

}  // namespace

// ---- FO formulas ----

TEST(FoFormula, WorkedRewritings) {
  OmqSpec q1 = omq("A -> Bf B\nBf B -> C", "C & D", "[signature A B C D]");
  EXPECT_EQ(fo::eval_fo_formula(rho1(), abox("D@0\nB@1\nA@1", q1), q1.signature).positions, std::vector<int>{0});
  EXPECT_TRUE(fo::eval_fo_formula(rho1(), abox("D@0\nA@1", q1), q1.signature).positions.empty());

  std::vector<std::string> xi{"A0", "A1", "B0", "B1", "E"};
  auto word = [&](const std::string& e) {
    std::string t = "B0@0\nE@" + std::to_string(e.size()) + "\n";
    for (size_t i = 0; i < e.size(); ++i) t += std::string(e[i] == '1' ? "A1@" : "A0@") + std::to_string(i + 1) + "\n";
    return parse_abox(t, xi);
  };
  EXPECT_FALSE(fo::eval_fo_formula(rho3(), word("10"), xi).value);
  EXPECT_TRUE(fo::eval_fo_formula(rho3(), word("11"), xi).value);
  for (int n = 1; n <= 5; ++n)
    for (int e = 0; e < (1 << n); ++e) {
      std::string s;
      for (int i = 0; i < n; ++i) s += (e >> i & 1) ? '1' : '0';
      EXPECT_EQ(fo::eval_fo_formula(rho3(), word(s), xi).value, __builtin_popcount(unsigned(e)) % 2 == 0) << s;
    }
}

TEST(FoFormula, EmptyDomainAndErrors) {
  auto taut = fo::forall("x", fo::equal({"x", 0}, {"x", 0}));
  auto some = fo::exists("x", fo::equal({"x", 0}, {"x", 0}));
  EXPECT_TRUE(fo::eval_fo_formula(taut, AboxWord{}, {"A"}).value);
  EXPECT_FALSE(fo::eval_fo_formula(some, AboxWord{}, {"A"}).value);
  EXPECT_THROW(fo::eval_fo_formula(fo::exists("x", fo::pred("Z", "x")), AboxWord{}, {"A"}), Error);
  try {
    fo::eval_fo_formula(fo::pred("Z", "x"), AboxWord{}, {"A"});
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnboundPredicate);
  }
  EXPECT_TRUE(fo::is_plain_fo(rho1()));
  EXPECT_FALSE(fo::is_plain_fo(rho3()));
  EXPECT_EQ(fo::free_vars(rho2()), std::set<std::string>{"x"});
  EXPECT_TRUE(fo::free_vars(rho3()).empty());
}

// the worked rewritings against certain answers
TEST(FoFormula, WorkedRewritingsAreRewritings) {
  OmqSpec q1 = omq("A -> Bf B\nBf B -> C", "C & D", "[signature A B C D]");
  OmqSpec q2 = omq("Op A -> B\nOp B -> A\nA & B -> bot", "C", "[signature A B C]");
  q1.mode = q2.mode = Mode::Specific;
  for (auto& [q, f, len] : {std::tuple{q1, rho1(), 3}, std::tuple{q2, rho2(), 4}})
    for (auto& a : all_aboxes(q.signature.size(), len, false))
      ASSERT_EQ(rewriting_answer(f, q, a), certain_answer(q, a)) << abox_to_string(a, q.signature);
  OmqSpec q3 = omq("Op B0 & A0 -> B0\nOp B1 & A0 -> B1\nOp B1 & A1 -> B0\nOp B0 & A1 -> B1", "B0 & E", kRho3Xi);
  std::mt19937 rng(7);
  for (int i = 0; i < 400; ++i) {
    AboxWord a;
    a.letters.resize(1 + rng() % 6);
    // the worked rewriting reads each position as one bit: never both A0 and A1
    for (auto& l : a.letters) {
      l = Letter(rng() % 32);
      if ((l & 3) == 3) l &= ~Letter(rng() % 2 + 1);
    }
    ASSERT_EQ(rewriting_answer(rho3(), q3, a).yes, certain_answer(q3, a).yes) << abox_to_string(a, q3.signature);
  }
}

// ---- Krom ----

TEST(Krom, EntailmentExamples) {
  LiteralGraph g = literal_graph(parse_ontology("A -> Of B\nB -> Of C"));
  int A = g.literal("A", false), C = g.literal("C", false), nC = g.literal("C", true);
  EXPECT_TRUE(krom_entailment(g, A, C, 2));
  EXPECT_FALSE(krom_entailment(g, A, C, 1));
  EXPECT_TRUE(krom_entailment(g, nC, g.literal("A", true), -2));
  EXPECT_TRUE(nfa_accepts(krom_unary_nfa(g, A, C), {0, 0}));
  EXPECT_FALSE(nfa_accepts(krom_unary_nfa(g, A, C), {0}));
  for (int l = 0; l < g.num_literals(); ++l) {
    EXPECT_TRUE(krom_entailment(g, l, l, 0));
    Nfa m = krom_unary_nfa(g, l, l);
    EXPECT_EQ(m.num_states, g.num_literals());
    EXPECT_TRUE(nfa_accepts(m, {}));
  }
  // contrapositive closure of the edge set
  for (int l = 0; l < g.num_literals(); ++l)
    for (auto [l2, d] : g.edges[size_t(l)]) {
      auto& back = g.edges[size_t(LiteralGraph::neg(l2))];
      EXPECT_NE(std::find(back.begin(), back.end(), std::make_pair(LiteralGraph::neg(l), -d)), back.end());
    }
  EXPECT_THROW(literal_graph(parse_ontology("A & B -> C")), Error);
  EXPECT_THROW(literal_graph(parse_ontology("A -> Bf B")), Error);
}

TEST(Krom, HardnessOntologyEncodesTheNfa) {
  Nfa even = Nfa::from_dfa(fodef::testing::parity());  // (aa)*
  OmqSpec q = krom_hardness_omaq(even);
  LiteralGraph g = literal_graph(q.ontology, {"X", "Y"});
  int X = g.literal("X", false), nY = g.literal("Y", true);
  // X(i), Y(j) clash iff a^{j−i−1} ∈ L
  for (int n = 0; n <= 8; ++n) EXPECT_EQ(krom_entailment(g, X, nY, n + 1), n % 2 == 0) << n;
  EXPECT_FALSE(krom_entailment(g, X, nY, 0));
  for (int n = 0; n <= 5; ++n) {
    AboxWord a;
    a.letters.assign(size_t(n + 2), 0);
    a.letters.front() = 1, a.letters.back() = 2;  // X first, Y last
    EXPECT_EQ(certain_answer(q, a).yes, n % 2 == 0);
  }
}

TEST(Krom, UnaryLanguagesMatchModelOracle) {
  std::mt19937 rng(11);
  std::vector<std::string> atoms{"A", "B", "C"};
  int checked = 0;
  for (int inst = 0; inst < 20; ++inst) {
    std::string text = random_krom_text(rng, atoms, 2 + int(rng() % 3), false);
    Ontology o = parse_ontology(text);
    LiteralGraph g = literal_graph(o, atoms);
    ASSERT_LE(g.num_literals(), 6 + 2 * 4);
    for (int l1 = 0; l1 < 6; ++l1)
      for (int l2 = 0; l2 < 6; ++l2) {
        // {P(0), P'(n)} clashes iff O ⊨ L1 → ○ⁿ L2, with P → L1 and P' → ¬L2
        std::string a1 = g.atoms[size_t(l1 / 2)], a2 = g.atoms[size_t(l2 / 2)];
        std::string extra = (l1 & 1 ? "P & " + a1 + " -> bot\n" : "P -> " + a1 + "\n");
        extra += (l2 & 1 ? "Pq -> " + a2 + "\n" : "Pq & " + a2 + " -> bot\n");
        OmqSpec q = omq(text + extra, "Fresh", "[signature P Pq]");
        Nfa complement = type_nfa(q);
        Nfa m = krom_unary_nfa(g, l1, l2);
        for (int n = 0; n <= 6; ++n) {
          AboxWord a;
          a.letters.assign(size_t(n + 1), 0);
          a.letters[0] |= 1, a.letters[size_t(n)] |= 2;
          bool oracle = certain_answer_nfa(q, complement, a).yes;
          ASSERT_EQ(nfa_accepts(m, Word(size_t(n), 0)), oracle) << text << g.name(l1) << " " << g.name(l2) << " " << n;
          ASSERT_EQ(krom_entailment(g, l1, l2, n), oracle);
          ++checked;
        }
      }
  }
  EXPECT_EQ(checked, 20 * 36 * 7);
}

TEST(Krom, DecisionsOnHardnessFamily) {
  OmqSpec parity = krom_hardness_omaq(Nfa::from_dfa(fodef::testing::parity()));
  Dfa astar(fodef::testing::letters(1), 1);
  astar.set(0, 0, 0);
  astar.finals = {true};
  OmqSpec all = krom_hardness_omaq(Nfa::from_dfa(astar));
  for (Mode mode : {Mode::Boolean, Mode::Specific}) {
    parity.mode = all.mode = mode;
    KromDecision d = krom_decide_fo(parity);
    EXPECT_FALSE(d.rewritable);
    EXPECT_FALSE(d.reason.empty());
    KromDecision e = krom_decide_fo(all);
    ASSERT_TRUE(e.rewritable);
    for (auto& a : all_aboxes(2, 4, false))
      ASSERT_EQ(rewriting_answer(*e.rewriting, all, a), certain_answer(all, a)) << abox_to_string(a, all.signature);
  }
  OmqSpec empty = omq("", "A", "[signature A]");
  KromDecision b = krom_decide_fo(empty);
  ASSERT_TRUE(b.rewritable);
  EXPECT_EQ(fo::to_string(*b.rewriting), "exists x. A(x)");
  empty.mode = Mode::Specific;
  KromDecision s = krom_decide_fo(empty);
  ASSERT_TRUE(s.rewritable);
  for (auto& a : all_aboxes(1, 3, false)) EXPECT_EQ(rewriting_answer(*s.rewriting, empty, a), certain_answer(empty, a));
}

TEST(Krom, EmittedRewritingsAreCorrect) {
  std::mt19937 rng(5);
  std::vector<std::string> atoms{"A", "B", "C"};
  int rewritable = 0, not_rewritable = 0;
  for (int inst = 0; inst < 40; ++inst) {
    std::string text = random_krom_text(rng, atoms, 1 + int(rng() % 3), false);
    OmqSpec q = omq(text, atoms[rng() % 3], inst % 2 ? "[signature A B]" : "[signature B C]");
    q.mode = inst % 4 < 2 ? Mode::Boolean : Mode::Specific;
    KromDecision d = krom_decide_fo(q);
    bool generic = definability_verdict(omq_language_dfa(q)).lowest == DefClass::FO_LT;
    ASSERT_EQ(d.rewritable, generic) << text << to_text(q);
    if (!d.rewritable) {
      ++not_rewritable;
      continue;
    }
    ++rewritable;
    ASSERT_TRUE(fo::is_plain_fo(*d.rewriting));
    for (auto& a : all_aboxes(2, 4, false))
      ASSERT_EQ(rewriting_answer(*d.rewriting, q, a), certain_answer(q, a))
          << to_text(q) << abox_to_string(a, q.signature) << "\n" << fo::to_string(*d.rewriting);
  }
  EXPECT_GT(rewritable, 10);
}

// ---- core ----

TEST(Core, ToLinearWorkedExample) {
  OmqSpec q = omq("Op A -> B\nOf D -> C\nC & B -> bot", "B", "[signature A B D]");
  OmqSpec l = core_to_linear(q);
  std::set<std::string> got;
  for (auto& ax : l.ontology.axioms) got.insert(to_string(ax));
  for (const char* s : {"Op A' -> B'", "B_bar' -> Op A_bar'", "Of D' -> C'", "C_bar' -> Of D_bar'", "C' -> B_bar'",
                        "A -> A'", "A & A_bar' -> bot", "B -> B'", "D -> D'", "D & D_bar' -> bot"})
    EXPECT_TRUE(got.count(s)) << s;
  EXPECT_EQ(got.size(), 11u);
  EXPECT_TRUE(classify(l.ontology).linear);
  AboxWord a = abox("A@0\nD@2", q);
  EXPECT_TRUE(certain_answer(q, a).yes);
  EXPECT_TRUE(certain_answer(l, a).yes);
  for (Mode mode : {Mode::Boolean, Mode::Specific})
    for (const char* k : {"B", "C & Df B", "Dp D"}) {
      OmqSpec p = q;
      p.query = parse_concept(k);
      p.mode = mode;
      OmqSpec pl = core_to_linear(p);
      for (auto& w : all_aboxes(3, 3, false)) ASSERT_EQ(certain_answer(p, w), certain_answer(pl, w)) << k;
    }
  EXPECT_THROW(core_to_linear(omq("A -> B | C", "A")), Error);
}

TEST(Core, ToLinearPreservesAnswersRandom) {
  std::mt19937 rng(3);
  std::vector<std::string> atoms{"A", "B", "C"};
  for (int inst = 0; inst < 20; ++inst) {
    const char* queries[] = {"A", "B & Df C", "Dp (A | C)", "Of B"};
    OmqSpec q = omq(random_krom_text(rng, atoms, 1 + int(rng() % 3), true), queries[inst % 4], "[signature A B]");
    q.mode = inst % 3 ? Mode::Boolean : Mode::Specific;
    OmqSpec l = core_to_linear(q);
    ASSERT_TRUE(classify(l.ontology).linear);
    for (auto& w : all_aboxes(2, 3, false)) ASSERT_EQ(certain_answer(q, w), certain_answer(l, w)) << to_text(q);
  }
}

TEST(Core, UpwardClosure) {
  Alphabet s = sigma_alphabet({"A", "B"}, false);
  Dfa everything(s, 1);
  for (int a = 0; a < 4; ++a) everything.set(0, a, 0);
  everything.finals = {true};
  EXPECT_TRUE(equivalent(upward_closure_dfa(everything), everything));
  // {∅}: every one-letter word
  Dfa single(s, 3);
  for (int a = 0; a < 4; ++a) single.set(0, a, a == 0 ? 1 : 2), single.set(1, a, 2), single.set(2, a, 2);
  single.finals = {false, true, false};
  Dfa up = upward_closure_dfa(single);
  for (auto& w : all_words(4, 3)) EXPECT_EQ(up.accepts(w), w.size() == 1);
  EXPECT_THROW(upward_closure_dfa(fodef::testing::astar_bstar()), Error);
  EXPECT_EQ(data_patterns(2, 2).size(), 1u + 3u + 4u);  // ε; A, B, AB; A·A, A·B, B·A, B·B
}

TEST(Core, DecompositionIdentity) {
  std::vector<OmqSpec> qs = {omq("B -> Of Of B", "B & A", "[signature A B]"), omq("A -> Of B", "B & Dp C", "[signature A C]"),
                             omq("", "A", "[signature A B]"), omq("Op A -> B\nB -> C", "Df (C & A)", "[signature A B]")};
  for (auto& q : qs) {
    OmqSpec p = horn::prepare_ompq(q);
    horn::TypeSetDfa t = horn::build_typeset_dfa(p);
    Dfa lang = omq_language_dfa(q);
    Alphabet s = sigma_alphabet(q.signature, false);
    Dfa none(s, 1);
    for (int a = 0; a < none.k(); ++a) none.set(0, a, 0);
    Dfa u = none;
    for (auto& w : data_patterns(q.signature.size(), 2)) {
      Dfa lw = layered_automaton(t, w);
      ASSERT_TRUE(equivalent(lw, product_intersect(lang, pattern_dfa(w, s))));
      u = product_union(u, upward_closure_dfa(lw));
    }
    for (auto& w : all_words(int(s.size()), 4)) ASSERT_EQ(u.accepts(w), lang.accepts(w)) << to_text(q) << s.format(w);
    EXPECT_TRUE(equivalent(u, lang));
  }
}

TEST(Core, OmpeqDecisions) {
  OmqSpec par = omq("B -> Of Of B", "B & A", "[signature A B]");
  CoreOmpeqDecision d = core_ompeq_decide_fo(par);
  EXPECT_FALSE(d.rewritable);
  ASSERT_TRUE(d.failing);
  EXPECT_EQ(definability_verdict(omq_language_dfa(par)).lowest, DefClass::FO_LT_EQ);
  OmqSpec plain = omq("", "A", "[signature A]");
  CoreOmpeqDecision e = core_ompeq_decide_fo(plain);
  EXPECT_TRUE(e.rewritable);
  EXPECT_EQ(e.patterns.size(), 2u);
  EXPECT_THROW(core_ompeq_decide_fo(omq("A -> Bf B", "A", "[signature A]")), Error);
}

TEST(Core, OmpeqAgreesWithGenericAndKrom) {
  std::mt19937 rng(17);
  std::vector<std::string> atoms{"A", "B", "C"};
  const char* queries[] = {"A", "C", "B & Df C", "Dp A & C", "A | Of B"};
  int capped = 0;
  for (int inst = 0; inst < 30; ++inst) {
    OmqSpec q = omq(random_krom_text(rng, atoms, 1 + int(rng() % 3), true), queries[inst % 5], "[signature A B]");
    if (inst % 3 == 2) q.mode = Mode::Specific;
    CoreOmpeqDecision d;
    try {
      d = core_ompeq_decide_fo(q);
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::CapExceeded);
      ++capped;
      continue;
    }
    bool generic = definability_verdict(omq_language_dfa(q)).lowest == DefClass::FO_LT;
    ASSERT_EQ(d.rewritable, generic) << to_text(q);
    if (q.query->kind == Kind::Atom) ASSERT_EQ(krom_decide_fo(q).rewritable, generic) << to_text(q);
  }
  EXPECT_LE(capped, 5);
}

// ---- dispatch ----

TEST(Decide, WorkedLadder) {
  OmqSpec q1 = omq("A -> Bf B\nBf B -> C", "C & D");
  OmqSpec q2 = omq("Op A -> B\nOp B -> A\nA & B -> bot", "C", "[signature A C]");
  OmqSpec q3 = omq("Op B0 & A0 -> B0\nOp B1 & A0 -> B1\nOp B1 & A1 -> B0\nOp B0 & A1 -> B1", "B0 & E");
  DecideOptions opt;
  opt.cross_check = true;
  auto v = [&](const OmqSpec& q, Target t) {
    DecisionReport r = decide_rewritability(q, t, opt);
    EXPECT_EQ(r.generic.value_or(r.verdict), r.verdict) << r.route;
    return r.verdict;
  };
  EXPECT_EQ(v(q1, Target::FO), Verdict::Yes);
  EXPECT_EQ(v(q2, Target::FO), Verdict::No);
  EXPECT_EQ(v(q2, Target::FO_EQ), Verdict::Yes);
  EXPECT_EQ(v(q3, Target::FO_EQ), Verdict::No);
  EXPECT_EQ(v(q3, Target::FO_MOD), Verdict::Yes);
  EXPECT_EQ(decide_rewritability(q2, Target::Ladder).lowest, DefClass::FO_LT_EQ);
  EXPECT_EQ(decide_rewritability(q3, Target::Ladder).lowest, DefClass::FO_LT_MOD);
  EXPECT_EQ(decide_rewritability(q2, Target::FO).route, "krom");
  EXPECT_EQ(decide_rewritability(q3, Target::FO).route, "linear-ompq");
}

TEST(Decide, RoutesAgreeWithGeneric) {
  std::mt19937 rng(23);
  std::vector<std::string> atoms{"A", "B", "C"};
  const char* queries[] = {"A", "C", "B & Df C", "Dp A & C", "Bf A | B"};
  std::set<std::string> routes;
  for (int inst = 0; inst < 40; ++inst) {
    bool core = inst % 2;
    OmqSpec q = omq(random_krom_text(rng, atoms, 1 + int(rng() % 3), core), queries[inst % 5], "[signature A B]");
    if (!core && q.query->kind != Kind::Atom) q.query = atom("C");
    if (inst % 3 == 0) q.mode = Mode::Specific;
    for (Target t : {Target::FO, Target::Ladder}) {
      DecideOptions opt;
      opt.cross_check = true;
      DecisionReport r = decide_rewritability(q, t, opt);
      routes.insert(r.route);
      ASSERT_NE(r.verdict, Verdict::Unknown) << to_text(q);
      ASSERT_EQ(r.generic, r.verdict) << r.route << "\n" << to_text(q);
      if (t == Target::Ladder) {
        DecisionReport g = decide_rewritability(q, t, DecideOptions{.route = "generic"});
        ASSERT_EQ(r.lowest, g.lowest) << r.route << "\n" << to_text(q);
      }
    }
  }
  EXPECT_GE(routes.size(), 3u);
}

TEST(Decide, CapsGiveUnknown) {
  OmqSpec q = omq("Op B0 & A0 -> B0\nOp B1 & A0 -> B1\nOp B1 & A1 -> B0\nOp B0 & A1 -> B1", "B0 & E");
  DecideOptions opt;
  opt.route = "generic";
  opt.type_cap = 3;
  DecisionReport r = decide_rewritability(q, Target::FO, opt);
  EXPECT_EQ(r.verdict, Verdict::Unknown);
  EXPECT_FALSE(r.caps_hit.empty());
  EXPECT_THROW(parse_target("fo-rpr"), Error);
}
