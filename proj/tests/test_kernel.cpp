#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>
#include <vector>

#include "doctest.h"
#include "epsilon/classical.hpp"
#include "epsilon/kernel.hpp"
#include "epsilon/parse.hpp"
#include "epsilon/print.hpp"

using namespace epsilon;

namespace {

Signature psig() {
  Signature s;
  s.declare_pred("P", 1);
  s.declare_pred("Q", 1);
  s.declare_fun("c", 0);
  s.declare_fun("d", 0);
  s.declare_fun("a", 0);
  return s;
}

Signature asig() {
  auto s = Signature::with_arithmetic();
  s.declare_pred("P", 1);
  return s;
}

// Every model over {P/1, c/0, d/0, a/0} with universe size n.
std::vector<FiniteModel> small_models(int n) {
  std::vector<FiniteModel> out;
  for (uint32_t pmask = 0; pmask < (1u << n); pmask++)
    for (int c = 0; c < n; c++)
      for (int d = 0; d < n; d++)
        for (int a = 0; a < n; a++) {
          FiniteModel m;
          for (int i = 0; i < n; i++) m.elems.push_back(std::to_string(i));
          m.funcs["c"][{}] = c;
          m.funcs["d"][{}] = d;
          m.funcs["a"][{}] = a;
          m.preds["P"];
          m.preds["Q"];
          for (int i = 0; i < n; i++)
            if (pmask & (1u << i)) m.preds["P"].insert({i});
          out.push_back(std::move(m));
        }
  return out;
}

}  // namespace

TEST_CASE("modus ponens closes the trivial derivation") {
  auto sig = psig();
  Derivation d;
  d.sig = sig;
  d.add(parse_formula("P(c)", sig), j_premise());
  d.add(parse_formula("P(c) -> P(c)", sig), j_taut());
  d.add(parse_formula("P(c)", sig), j_mp(1, 0));
  auto rep = check(d, Profile::CP);
  CHECK(rep.ok);
  CHECK(rep.checked == 3);
  CHECK(rep.message.empty());
  CHECK(alpha_eq(d.conclusion(), parse_formula("P(c)", sig)));

  SUBCASE("modus ponens with swapped references fails") {
    d.lines[2].just = j_mp(0, 1);
    auto bad = check(d, Profile::CP);
    CHECK_FALSE(bad.ok);
    CHECK(bad.bad_line == 2);
    CHECK(bad.message.find("line 3") != std::string::npos);
  }
}

TEST_CASE("truth-table tautology and consequence checks") {
  auto sig = psig();
  CHECK(is_tautology(parse_formula("P(c) or not P(c)", sig)));
  CHECK(is_tautology(parse_formula("true", sig)));
  CHECK_FALSE(is_tautology(parse_formula("P(c) -> P(d)", sig)));
  // Atoms are counted up to alpha-equivalence: both quantified subformulas
  // below are the same atom.
  CHECK(is_tautology(parse_formula("(forall x. P(x)) or not (forall y. P(y))", sig)));
  CHECK_FALSE(is_tautology(parse_formula("(forall x. P(x)) or not (exists y. P(y))", sig)));

  std::vector<FormulaPtr> prem = {parse_formula("P(c) -> Q(c)", sig), parse_formula("P(c)", sig)};
  CHECK(tautological_consequence(prem, parse_formula("Q(c)", sig)));
  CHECK_FALSE(tautological_consequence(prem, parse_formula("Q(d)", sig)));
  CHECK(tautological_consequence({}, parse_formula("P(c) or not P(c)", sig)));

  SUBCASE("distinct-atom limit is enforced") {
    auto arith = asig();
    FormulaPtr f = parse_formula("0 = 1", arith);
    for (int i = 1; i < 21; i++) f = mk_or(f, mk_eq(mk_numeral(i), mk_numeral(i + 1)));
    CHECK_THROWS_AS((void)is_tautology(f), KernelError);
    CHECK_NOTHROW((void)is_tautology(f, 21));
  }
}

TEST_CASE("critical-formula schema passes under CP_eps and is refused under CP") {
  auto sig = psig();
  Derivation d;
  d.sig = sig;
  d.add(parse_formula("P(c) -> P(eps x. P(x))", sig), j_eps(mk_const("c")));
  CHECK(check(d, Profile::CP_eps).ok);
  CHECK(check(d, Profile::CP_eps_star).ok);

  auto rep = check(d, Profile::CP);
  CHECK_FALSE(rep.ok);
  CHECK(rep.bad_line == 0);
  CHECK(rep.message.find("not admitted") != std::string::npos);

  SUBCASE("CP refuses epsilon terms even on premise lines") {
    Derivation p;
    p.sig = sig;
    p.add(parse_formula("P(eps x. P(x))", sig), j_premise());
    auto r = check(p, Profile::CP);
    CHECK_FALSE(r.ok);
    CHECK(r.message.find("forbids epsilon") != std::string::npos);
  }

  SUBCASE("wrong witness is rejected") {
    d.lines[0].just = j_eps(mk_const("d"));
    CHECK_FALSE(check(d, Profile::CP_eps).ok);
  }
}

TEST_CASE("improper formulas are refused exactly in the starred profile") {
  auto sig = psig();
  // The epsilon scope captures the outer universal variable.
  auto f = parse_formula("forall x. x = eps y. y = x", sig);
  REQUIRE_FALSE(is_proper(f));
  Derivation d;
  d.sig = sig;
  d.add(f, j_premise());
  CHECK(check(d, Profile::CP_eps).ok);
  auto rep = check(d, Profile::CP_eps_star);
  CHECK_FALSE(rep.ok);
  CHECK(rep.message.find("proper") != std::string::npos);
}

TEST_CASE("extensionality schema belongs to CP_eps but not to the starred profile") {
  auto sig = psig();
  auto f = parse_formula(
      "(forall x. (P(x) -> Q(x)) and (Q(x) -> P(x))) -> (eps x. P(x)) = (eps x. Q(x))", sig);
  Derivation d;
  d.sig = sig;
  d.add(f, j_eps2());
  CHECK(check(d, Profile::CP_eps).ok);
  auto rep = check(d, Profile::CP_eps_star);
  CHECK_FALSE(rep.ok);
  CHECK(rep.message.find("not admitted") != std::string::npos);

  SUBCASE("a one-sided antecedent is not extensionality") {
    Derivation b;
    b.sig = sig;
    b.add(parse_formula("(forall x. P(x) -> Q(x)) -> (eps x. P(x)) = (eps x. Q(x))", sig),
          j_eps2());
    CHECK_FALSE(check(b, Profile::CP_eps).ok);
  }
}

TEST_CASE("existential form of the epsilon schema") {
  auto sig = psig();
  Derivation d;
  d.sig = sig;
  d.add(parse_formula("(exists x. P(x)) -> P(eps x. P(x))", sig), j_epsex());
  CHECK(check(d, Profile::CP_eps).ok);
  CHECK(check(d, Profile::CP_eps_star).ok);

  SUBCASE("mismatched body is rejected") {
    d.lines[0].formula = parse_formula("(exists x. P(x)) -> Q(eps x. P(x))", sig);
    CHECK_FALSE(check(d, Profile::CP_eps).ok);
  }
}

TEST_CASE("quantifier axioms and rules") {
  auto sig = psig();

  SUBCASE("instantiation and existence-introduction axioms") {
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("(forall x. P(x)) -> P(c)", sig), j_inst(mk_const("c")));
    d.add(parse_formula("P(c) -> (exists x. P(x))", sig), j_exi(mk_const("c")));
    CHECK(check(d, Profile::CP).ok);
    d.lines[0].just = j_inst(mk_const("d"));
    CHECK_FALSE(check(d, Profile::CP).ok);
  }

  SUBCASE("existence elimination with a fresh eigenconstant") {
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("forall x. (P(x) -> P(c))", sig), j_premise());
    d.add(parse_formula("(forall x. (P(x) -> P(c))) -> (P(a) -> P(c))", sig),
          j_inst(mk_const("a")));
    d.add(parse_formula("P(a) -> P(c)", sig), j_mp(1, 0));
    d.add(parse_formula("(exists x. P(x)) -> P(c)", sig), j_exe(2, "a"));
    CHECK(check(d, Profile::CP).ok);

    SUBCASE("eigenconstant may not occur in the inferred formula") {
      Derivation b;
      b.sig = sig;
      b.add(parse_formula("P(a) -> Q(a)", sig), j_premise());
      b.add(parse_formula("(exists x. P(x)) -> Q(a)", sig), j_exe(0, "a"));
      auto rep = check(b, Profile::CP);
      CHECK_FALSE(rep.ok);
      CHECK(rep.message.find("occurs in the inferred formula") != std::string::npos);
    }

    SUBCASE("eigenconstant may not occur in any premise") {
      d.lines.insert(d.lines.begin(), {parse_formula("P(a)", sig), j_premise(), ""});
      for (auto& ln : d.lines)
        for (auto& r : ln.just.refs) r++;
      auto rep = check(d, Profile::CP);
      CHECK_FALSE(rep.ok);
      CHECK(rep.message.find("occurs in the premise on line 1") != std::string::npos);
    }

    SUBCASE("numerals are never eigenconstants") {
      auto arith = asig();
      Derivation b;
      b.sig = arith;
      b.add(parse_formula("P(0) -> 0 = 0", arith), j_premise());
      b.add(parse_formula("(exists x. P(x)) -> 0 = 0", arith), j_exe(0, "0"));
      auto rep = check(b, Profile::CP);
      CHECK_FALSE(rep.ok);
      CHECK(rep.message.find("numeral") != std::string::npos);
    }
  }

  SUBCASE("generalization closes a universal conclusion") {
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("forall x. P(x)", sig), j_premise());
    d.add(parse_formula("(forall x. P(x)) -> P(a)", sig), j_inst(mk_const("a")));
    d.add(parse_formula("(forall x. P(x)) -> (forall y. P(y))", sig), j_gen(1, "a"));
    d.add(parse_formula("forall y. P(y)", sig), j_mp(2, 0));
    CHECK(check(d, Profile::CP).ok);
    CHECK(check(d, Profile::CP_eps).ok);
  }
}

TEST_CASE("equality schemas") {
  auto sig = psig();

  Derivation d;
  d.sig = sig;
  d.add(parse_formula("c = c", sig), j_eqrefl());
  d.add(parse_formula("c = d -> d = c", sig), j_eqsym());
  // Replacement may rewrite only some occurrences.
  d.add(parse_formula("c = d -> (P(c) and P(c) -> P(c) and P(d))", sig), j_eqsubst());
  d.add(parse_formula("c = d -> (P(c) -> P(c))", sig), j_eqsubst());
  CHECK(check(d, Profile::CP).ok);

  SUBCASE("replacement must track the equated terms") {
    Derivation b;
    b.sig = sig;
    b.add(parse_formula("c = d -> (P(c) -> Q(d))", sig), j_eqsubst());
    CHECK_FALSE(check(b, Profile::CP).ok);
  }

  SUBCASE("rewrites_to matcher") {
    auto t = mk_const("c"), u = mk_const("d");
    CHECK(rewrites_to(parse_formula("P(c) and Q(c)", sig), parse_formula("P(d) and Q(c)", sig), t, u));
    CHECK(rewrites_to(parse_formula("P(c) and Q(c)", sig), parse_formula("P(d) and Q(d)", sig), t, u));
    CHECK(rewrites_to(parse_formula("P(c)", sig), parse_formula("P(c)", sig), t, u));
    CHECK_FALSE(rewrites_to(parse_formula("P(d)", sig), parse_formula("P(c)", sig), t, u));
    CHECK(rewrites_to(parse_formula("Q(eps x. P(c) and P(x))", sig),
                      parse_formula("Q(eps x. P(d) and P(x))", sig), t, u));
    CHECK_FALSE(rewrites_to(parse_formula("forall x. P(c)", sig),
                            parse_formula("exists x. P(d)", sig), t, u));
  }

  SUBCASE("schema predicates agree with the matchers") {
    CHECK(is_eq_reflexivity(parse_formula("d = d", sig)));
    CHECK_FALSE(is_eq_reflexivity(parse_formula("c = d", sig)));
    CHECK(is_eq_symmetry(parse_formula("c = d -> d = c", sig)));
    CHECK_FALSE(is_eq_symmetry(parse_formula("c = d -> c = d", sig)));
    CHECK(is_eq_substitution(parse_formula("c = d -> (P(c) -> P(d))", sig)));
    CHECK_FALSE(is_eq_substitution(parse_formula("c = d -> (P(d) -> P(c))", sig)));
  }
}

TEST_CASE("arithmetic order axioms for the least witness") {
  auto sig = asig();
  Derivation d;
  d.sig = sig;
  d.add(parse_formula("not ((eps x. x < 2) < 2) -> not (1 < 2)", sig), j_e1(mk_numeral(1)));
  d.add(parse_formula("(eps x. x < 2) = 1 + 1 -> not (1 < 2)", sig), j_e2(mk_numeral(1)));
  CHECK(check(d, Profile::CP_eps).ok);
  CHECK(check(d, Profile::CP_eps_star).ok);

  SUBCASE("the successor shape of the second axiom is mandatory") {
    Derivation b;
    b.sig = sig;
    b.add(parse_formula("(eps x. x < 2) = 2 -> not (1 < 2)", sig), j_e2(mk_numeral(1)));
    CHECK_FALSE(check(b, Profile::CP_eps).ok);
  }

  SUBCASE("order axioms are not part of CP") {
    auto rep = check(d, Profile::CP);
    CHECK_FALSE(rep.ok);
    CHECK(rep.message.find("not admitted") != std::string::npos);
  }
}

TEST_CASE("line hygiene: closed sentences and backward references") {
  auto sig = psig();

  SUBCASE("open formulas are refused") {
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("P(x)", sig), j_premise());
    auto rep = check(d, Profile::CP);
    CHECK_FALSE(rep.ok);
    CHECK(rep.message.find("closed sentence") != std::string::npos);
  }

  SUBCASE("references must point at earlier lines") {
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("P(c)", sig), j_tautcons({0}));
    auto rep = check(d, Profile::CP);
    CHECK_FALSE(rep.ok);
    CHECK(rep.message.find("earlier line") != std::string::npos);
  }

  SUBCASE("empty derivations do not pass") {
    Derivation d;
    d.sig = sig;
    CHECK_FALSE(check(d, Profile::CP).ok);
    CHECK_THROWS_AS(d.conclusion(), KernelError);
  }
}

TEST_CASE("elementary calculus: propositional and equality reasoning over epsilon terms") {
  auto sig = psig();
  Derivation d;
  d.sig = sig;
  d.add(parse_formula("(eps x. P(x)) = c", sig), j_premise());
  d.add(parse_formula("(eps x. P(x)) = c -> c = (eps x. P(x))", sig), j_eqsym());
  d.add(parse_formula("c = (eps x. P(x))", sig), j_mp(1, 0));
  CHECK(check(d, Profile::CE).ok);

  SUBCASE("quantified lines are refused") {
    Derivation b;
    b.sig = sig;
    b.add(parse_formula("forall x. P(x)", sig), j_premise());
    auto rep = check(b, Profile::CE);
    CHECK_FALSE(rep.ok);
    CHECK(rep.message.find("forbids quantifiers") != std::string::npos);
  }

  SUBCASE("quantifier axioms are not admitted") {
    Derivation b;
    b.sig = sig;
    b.add(parse_formula("P(c) -> P(c)", sig), j_inst(mk_const("c")));
    auto rep = check(b, Profile::CE);
    CHECK_FALSE(rep.ok);
    CHECK(rep.message.find("not admitted") != std::string::npos);
  }
}

TEST_CASE("the intuitionistic profile refuses truth-table checking") {
  auto sig = psig();
  Derivation d;
  d.sig = sig;
  d.add(parse_formula("P(c) or not P(c)", sig), j_taut());
  auto rep = check(d, Profile::CPI_eps);
  CHECK_FALSE(rep.ok);
  CHECK(rep.bad_line == -1);
  CHECK(rep.checked == 0);
  CHECK(rep.message.find("truth table") != std::string::npos);
  CHECK(rep.message.find("Kripke") != std::string::npos);
}

TEST_CASE("critical formulas are collected in line order") {
  SUBCASE("no epsilon lines, no critical formulas") {
    auto sig = psig();
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("P(c)", sig), j_premise());
    d.add(parse_formula("P(c) -> (exists x. P(x))", sig), j_exi(mk_const("c")));
    d.add(parse_formula("exists x. P(x)", sig), j_mp(1, 0));
    REQUIRE(check(d, Profile::CP_eps).ok);
    CHECK(critical_formulas(d).empty());
  }

  SUBCASE("single instance with a numeral witness") {
    auto sig = asig();
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("2 = 2 -> (eps x. x = 2) = 2", sig), j_eps(mk_numeral(2)));
    REQUIRE(check(d, Profile::CP_eps).ok);
    auto cfs = critical_formulas(d);
    REQUIRE(cfs.size() == 1);
    CHECK(cfs[0].line == 0);
    CHECK(alpha_eq(cfs[0].witness, mk_numeral(2)));
    CHECK(alpha_eq(cfs[0].eps_term, parse_term("eps x. x = 2", sig)));
  }

  SUBCASE("nested instances expose both epsilon terms") {
    auto sig = asig();
    auto eps_b = parse_term("eps y. y = 2", sig);
    auto eps_a = parse_term("eps x. x = (eps y. y = 2) + 2", sig);
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("0 = 2 -> (eps y. y = 2) = 2", sig), j_eps(mk_numeral(0)));
    d.add(parse_formula("2 = (eps y. y = 2) + 2 -> "
                        "(eps x. x = (eps y. y = 2) + 2) = (eps y. y = 2) + 2",
                        sig),
          j_eps(mk_numeral(2)));
    d.add(parse_formula("(eps x. x = (eps y. y = 2) + 2) = 2 -> (eps y. y = 2) = 2", sig),
          j_eps(eps_a));
    REQUIRE(check(d, Profile::CP_eps).ok);
    auto cfs = critical_formulas(d);
    REQUIRE(cfs.size() == 3);
    CHECK(alpha_eq(cfs[0].eps_term, eps_b));
    CHECK(alpha_eq(cfs[1].eps_term, eps_a));
    CHECK(alpha_eq(cfs[2].eps_term, eps_b));
    CHECK(alpha_eq(cfs[2].witness, eps_a));
    CHECK(cfs[0].line == 0);
    CHECK(cfs[1].line == 1);
    CHECK(cfs[2].line == 2);
  }
}

TEST_CASE("soundness spot-check: accepted lines hold in every model of the premises") {
  auto sig = psig();
  std::vector<Derivation> corpus;

  {
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("P(c)", sig), j_premise());
    d.add(parse_formula("P(c) -> P(c)", sig), j_taut());
    d.add(parse_formula("P(c)", sig), j_mp(1, 0));
    corpus.push_back(d);
  }
  {
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("P(c)", sig), j_premise());
    d.add(parse_formula("P(c) -> (exists x. P(x))", sig), j_exi(mk_const("c")));
    d.add(parse_formula("exists x. P(x)", sig), j_mp(1, 0));
    corpus.push_back(d);
  }
  {
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("forall x. (P(x) -> P(c))", sig), j_premise());
    d.add(parse_formula("(forall x. (P(x) -> P(c))) -> (P(a) -> P(c))", sig),
          j_inst(mk_const("a")));
    d.add(parse_formula("P(a) -> P(c)", sig), j_mp(1, 0));
    d.add(parse_formula("(exists x. P(x)) -> P(c)", sig), j_exe(2, "a"));
    corpus.push_back(d);
  }
  {
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("forall x. P(x)", sig), j_premise());
    d.add(parse_formula("(forall x. P(x)) -> P(a)", sig), j_inst(mk_const("a")));
    d.add(parse_formula("(forall x. P(x)) -> (forall y. P(y))", sig), j_gen(1, "a"));
    d.add(parse_formula("forall y. P(y)", sig), j_mp(2, 0));
    corpus.push_back(d);
  }
  {
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("c = a", sig), j_premise());
    d.add(parse_formula("P(c)", sig), j_premise());
    d.add(parse_formula("c = a -> (P(c) -> P(a))", sig), j_eqsubst());
    d.add(parse_formula("P(a)", sig), j_tautcons({0, 1, 2}));
    corpus.push_back(d);
  }

  long long models_tried = 0, lines_checked = 0;
  for (auto& d : corpus) {
    REQUIRE(check(d, Profile::CP).ok);
    for (int n = 1; n <= 3; n++) {
      auto cf = ChoiceFunction::minimum(n);
      for (auto& m : small_models(n)) {
        bool premises_hold = true;
        for (auto& ln : d.lines)
          if (ln.just.rule == Rule::Premise && !eval_formula(ln.formula, m, cf))
            premises_hold = false;
        models_tried++;
        if (!premises_hold) continue;
        for (auto& ln : d.lines) {
          CHECK(eval_formula(ln.formula, m, cf));
          lines_checked++;
        }
      }
    }
  }
  CHECK(models_tried == 5 * (2 * 1 + 4 * 8 + 8 * 27));
  CHECK(lines_checked > 400);
}

#include "epsilon/elimination.hpp"
#include "epsilon/induction.hpp"

namespace {

// Proofs of epsilon-free sentences in the proper fragment, used both for
// the transform tests and as the shape of the shipped corpus files.
std::vector<Derivation> star_corpus() {
  auto sig = psig();
  std::vector<Derivation> out;
  {
    // premise -> existential via the critical formula
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("P(c)", sig), j_premise());
    d.add(parse_formula("P(c) -> P(eps x. P(x))", sig), j_eps(mk_const("c")));
    d.add(parse_formula("P(eps x. P(x))", sig), j_mp(1, 0));
    d.add(parse_formula("P(eps x. P(x)) -> (exists x. P(x))", sig),
          j_exi(parse_term("eps x. P(x)", sig)));
    d.add(parse_formula("exists x. P(x)", sig), j_mp(3, 2));
    out.push_back(d);
  }
  {
    // existential-form roundtrip
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("(exists x. P(x)) -> P(eps x. P(x))", sig), j_epsex());
    d.add(parse_formula("P(eps x. P(x)) -> (exists x. P(x))", sig),
          j_exi(parse_term("eps x. P(x)", sig)));
    d.add(parse_formula("(exists x. P(x)) -> (exists x. P(x))", sig), j_tautcons({0, 1}));
    out.push_back(d);
  }
  {
    // two independent choice terms
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("P(c)", sig), j_premise());
    d.add(parse_formula("P(c) -> P(eps x. P(x))", sig), j_eps(mk_const("c")));
    d.add(parse_formula("P(eps x. P(x))", sig), j_mp(1, 0));
    d.add(parse_formula("P(eps x. P(x)) -> (exists x. P(x))", sig),
          j_exi(parse_term("eps x. P(x)", sig)));
    d.add(parse_formula("exists x. P(x)", sig), j_mp(3, 2));
    d.add(parse_formula("Q(d)", sig), j_premise());
    d.add(parse_formula("Q(d) -> Q(eps y. Q(y))", sig), j_eps(mk_const("d")));
    d.add(parse_formula("Q(eps y. Q(y))", sig), j_mp(6, 5));
    d.add(parse_formula("Q(eps y. Q(y)) -> (exists y. Q(y))", sig),
          j_exi(parse_term("eps y. Q(y)", sig)));
    d.add(parse_formula("exists y. Q(y)", sig), j_mp(8, 7));
    d.add(parse_formula("(exists x. P(x)) and (exists y. Q(y))", sig), j_tautcons({4, 9}));
    out.push_back(d);
  }
  {
    // case split feeding one choice term from two witnesses
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("P(c) or P(d)", sig), j_premise());
    d.add(parse_formula("P(c) -> P(eps x. P(x))", sig), j_eps(mk_const("c")));
    d.add(parse_formula("P(d) -> P(eps x. P(x))", sig), j_eps(mk_const("d")));
    d.add(parse_formula("P(eps x. P(x))", sig), j_tautcons({0, 1, 2}));
    d.add(parse_formula("P(eps x. P(x)) -> (exists x. P(x))", sig),
          j_exi(parse_term("eps x. P(x)", sig)));
    d.add(parse_formula("exists x. P(x)", sig), j_mp(4, 3));
    out.push_back(d);
  }
  {
    // nested choice terms of rank two
    Signature rs;
    rs.declare_pred("R", 2);
    rs.declare_fun("c", 0);
    rs.declare_fun("d", 0);
    Derivation d;
    d.sig = rs;
    auto e1 = parse_term("eps y. R(c, y)", rs);
    auto e2 = parse_term("eps x. R(x, eps y. R(c, y))", rs);
    d.add(parse_formula("R(c, d)", rs), j_premise());
    d.add(parse_formula("R(c, d) -> R(c, eps y. R(c, y))", rs), j_eps(mk_const("d")));
    d.add(parse_formula("R(c, eps y. R(c, y))", rs), j_mp(1, 0));
    d.add(parse_formula("R(c, eps y. R(c, y)) -> R(eps x. R(x, eps y. R(c, y)), eps y. R(c, y))",
                        rs),
          j_eps(mk_const("c")));
    d.add(parse_formula("R(eps x. R(x, eps y. R(c, y)), eps y. R(c, y))", rs), j_mp(3, 2));
    d.add(mk_imp(d.lines[4].formula,
                 parse_formula("exists y. R(eps x. R(x, eps y. R(c, y)), y)", rs)),
          j_exi(e1));
    d.add(parse_formula("exists y. R(eps x. R(x, eps y. R(c, y)), y)", rs), j_mp(5, 4));
    d.add(mk_imp(d.lines[6].formula, parse_formula("exists x. exists y. R(x, y)", rs)), j_exi(e2));
    d.add(parse_formula("exists x. exists y. R(x, y)", rs), j_mp(7, 6));
    out.push_back(d);
  }
  return out;
}

}  // namespace

TEST_CASE("one elimination round trades the choice term for a hypothesis") {
  auto sig = psig();
  auto corpus = star_corpus();
  auto& d = corpus[0];
  auto target = parse_term("eps x. P(x)", sig);

  auto step = eliminate_one_epsilon(d, target);
  CHECK(step.constant == "a0");
  REQUIRE(step.h != nullptr);
  CHECK(alpha_eq(step.h, parse_formula("(exists x. P(x)) -> P(a)", sig)) == false);
  Signature esig = sig;
  esig.declare_fun("a0", 0);
  CHECK(alpha_eq(step.h, parse_formula("(exists x. P(x)) -> P(a0)", esig)));
  CHECK(derivation_epsilon_terms(step.out).empty());
  CHECK(check(step.out, Profile::CP).ok);
  CHECK(alpha_eq(step.out.conclusion(),
                 mk_imp(step.h, parse_formula("exists x. P(x)", sig))));

  SUBCASE("absent target is the identity transform") {
    Derivation plain;
    plain.sig = sig;
    plain.add(parse_formula("P(c) -> P(c)", sig), j_taut());
    auto id = eliminate_one_epsilon(plain, target);
    CHECK(id.h == nullptr);
    CHECK(id.constant.empty());
    CHECK(id.out.lines.size() == 1);
  }

  SUBCASE("only innermost targets are accepted") {
    Signature rs;
    rs.declare_pred("R", 2);
    rs.declare_fun("c", 0);
    auto nested = parse_term("eps x. R(x, eps y. R(c, y))", rs);
    CHECK_THROWS_WITH_AS(eliminate_one_epsilon(d, nested),
                         doctest::Contains("not innermost"), EliminationError);
  }

  SUBCASE("premises may not mention the target") {
    Derivation b;
    b.sig = sig;
    b.add(parse_formula("P(eps x. P(x))", sig), j_premise());
    CHECK_THROWS_WITH_AS(eliminate_one_epsilon(b, target),
                         doctest::Contains("premise contains the elimination target"),
                         EliminationError);
  }

  SUBCASE("quantifier rules must already be gone") {
    Derivation b;
    b.sig = sig;
    b.add(parse_formula("P(a) -> (exists x. P(x))", sig), j_exi(mk_const("a")));
    b.add(parse_formula("(exists x. P(x)) -> (exists x. P(x))", sig), j_exe(0, "a"));
    b.add(parse_formula("P(c) -> P(eps x. P(x))", sig), j_eps(mk_const("c")));
    CHECK_THROWS_WITH_AS(eliminate_one_epsilon(b, target),
                         doctest::Contains("quantifier rules"), EliminationError);
  }
}

TEST_CASE("full elimination returns an epsilon-free derivation with the same conclusion") {
  auto corpus = star_corpus();
  for (auto& d : corpus) {
    REQUIRE(check(d, Profile::CP_eps_star).ok);
    REQUIRE_FALSE(derivation_epsilon_terms(d).empty());
    auto out = second_epsilon_theorem(d);
    CHECK(derivation_epsilon_terms(out).empty());
    CHECK(check(out, Profile::CP).ok);
    CHECK(alpha_eq(out.conclusion(), d.conclusion()));
    bool uses_exe = false;
    for (auto& ln : out.lines) uses_exe = uses_exe || ln.just.rule == Rule::Exe;
    CHECK(uses_exe);
  }

  SUBCASE("epsilon-free input is returned unchanged") {
    auto sig = psig();
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("P(c)", sig), j_premise());
    d.add(parse_formula("P(c) -> (exists x. P(x))", sig), j_exi(mk_const("c")));
    d.add(parse_formula("exists x. P(x)", sig), j_mp(1, 0));
    auto out = second_epsilon_theorem(d);
    CHECK(out.lines.size() == d.lines.size());
    CHECK(alpha_eq(out.conclusion(), d.conclusion()));
  }

  SUBCASE("epsilon conclusions are refused") {
    auto sig = psig();
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("P(c) -> P(eps x. P(x))", sig), j_eps(mk_const("c")));
    CHECK_THROWS_WITH_AS(second_epsilon_theorem(d), doctest::Contains("conclusion"),
                         EliminationError);
  }

  SUBCASE("order-axiom lines are refused") {
    auto sig = asig();
    Derivation d;
    d.sig = sig;
    d.add(parse_formula("(eps x. x < 2) = 1 + 1 -> not (1 < 2)", sig), j_e2(mk_numeral(1)));
    d.add(parse_formula("0 = 0", sig), j_eqrefl());
    CHECK_THROWS_WITH_AS(second_epsilon_theorem(d), doctest::Contains("order axioms"),
                         EliminationError);
  }
}

TEST_CASE("instance verification for quantifier-free entailments") {
  auto sig = Signature::with_arithmetic();
  sig.declare_fun("g", 1);
  sig.declare_fun("s", 0);
  std::vector<FormulaPtr> sigma = {parse_formula("forall x. not (x < x)", sig),
                                   parse_formula("forall x. x < g(x)", sig)};

  SUBCASE("a goal that is itself an instance of the premises") {
    MatrixInstance prem{1, {{"x", mk_numeral(0)}}, parse_formula("0 < g(0)", sig)};
    MatrixInstance goal{-1, {}, parse_formula("0 < g(0)", sig)};
    auto rep = first_theorem_instance_check(sigma, parse_formula("0 < g(0)", sig), {prem, goal});
    CHECK(rep.ok);
    CHECK(rep.entailed);
    CHECK(rep.valuations >= 1);
  }

  SUBCASE("a disjunctive goal from one premise instance") {
    auto goal_f = parse_formula("(s < g(s)) or (s = g(s))", sig);
    MatrixInstance prem{1, {{"x", mk_const("s")}}, parse_formula("s < g(s)", sig)};
    MatrixInstance goal{-1, {}, goal_f};
    auto rep = first_theorem_instance_check(sigma, goal_f, {prem, goal});
    CHECK(rep.ok);
    CHECK(rep.entailed);
  }

  SUBCASE("an unrelated goal atom yields a countervaluation") {
    MatrixInstance prem{1, {{"x", mk_numeral(0)}}, parse_formula("0 < g(0)", sig)};
    MatrixInstance goal{-1, {}, parse_formula("0 = 1", sig)};
    auto rep = first_theorem_instance_check(sigma, parse_formula("0 = 1", sig), {prem, goal});
    CHECK(rep.ok);
    CHECK_FALSE(rep.entailed);
    CHECK(rep.countervaluation.find("0 = 1 := false") != std::string::npos);
    CHECK(rep.countervaluation.find("0 < g(0) := true") != std::string::npos);
  }

  SUBCASE("equality axioms join the premise side") {
    Signature ps = psig();
    std::vector<FormulaPtr> sg = {parse_formula("c = d", ps), parse_formula("P(c)", ps)};
    MatrixInstance m0{0, {}, parse_formula("c = d", ps)};
    MatrixInstance m1{1, {}, parse_formula("P(c)", ps)};
    MatrixInstance goal{-1, {}, parse_formula("P(d)", ps)};
    auto eqax = parse_formula("c = d -> (P(c) -> P(d))", ps);
    auto rep = first_theorem_instance_check(sg, parse_formula("P(d)", ps), {m0, m1, goal}, {eqax});
    CHECK(rep.ok);
    CHECK(rep.entailed);
    auto rep2 = first_theorem_instance_check(sg, parse_formula("P(d)", ps), {m0, m1, goal});
    CHECK(rep2.ok);
    CHECK_FALSE(rep2.entailed);
  }

  SUBCASE("bogus candidates are reported") {
    MatrixInstance wrong{1, {{"x", mk_numeral(0)}}, parse_formula("1 < g(0)", sig)};
    MatrixInstance unknown{1, {{"y", mk_numeral(0)}}, parse_formula("0 < g(0)", sig)};
    MatrixInstance open_sub{1, {{"x", mk_free("z")}}, parse_formula("0 < g(0)", sig)};
    MatrixInstance goal{-1, {}, parse_formula("0 < g(0)", sig)};
    auto rep = first_theorem_instance_check(sigma, parse_formula("0 < g(0)", sig),
                                            {wrong, unknown, open_sub, goal},
                                            {parse_formula("0 < 1", sig)});
    CHECK_FALSE(rep.ok);
    REQUIRE(rep.errors.size() == 4);
    CHECK(rep.errors[0].find("not a matrix instance") != std::string::npos);
    CHECK(rep.errors[1].find("unknown variable") != std::string::npos);
    CHECK(rep.errors[2].find("not a closed term") != std::string::npos);
    CHECK(rep.errors[3].find("no equality schema") != std::string::npos);
  }

  SUBCASE("goal prefixes must be existential") {
    auto g = parse_formula("forall x. x < g(x)", sig);
    MatrixInstance goal{-1, {{"x", mk_numeral(0)}}, parse_formula("0 < g(0)", sig)};
    auto rep = first_theorem_instance_check(sigma, g, {goal});
    CHECK_FALSE(rep.ok);
    CHECK(rep.errors[0].find("not purely existential") != std::string::npos);
  }
}

TEST_CASE("induction replay") {
  auto sig = Signature::with_arithmetic();

  SUBCASE("a lower-bound predicate replays and evaluates true") {
    auto rep = replay_induction(parse_formula("0 <= x", sig), "x");
    CHECK(rep.check.ok);
    CHECK(rep.derivation.lines.size() == 17);
    CHECK(rep.line8_shape_ok);
    CHECK(rep.all_lines_true);
    CHECK(rep.line_truth.size() == 17);
    std::vector<std::string> milestones;
    for (auto& ln : rep.derivation.lines)
      if (ln.label != "(aux)") milestones.push_back(ln.label);
    CHECK(milestones == std::vector<std::string>{"(1)", "(2)", "(3)", "(4)", "(5)", "(6)", "(7)",
                                                 "(8)", "(9)", "(10)"});
    CHECK(alpha_eq(rep.s, parse_term("eps x. not (0 <= x)", sig)));
    // the milestone (8) line in full
    bool found = false;
    for (auto& ln : rep.derivation.lines)
      if (ln.label == "(8)") {
        found = true;
        CHECK(alpha_eq(ln.formula,
                       parse_formula("(eps x. not (0 <= x)) = pd(eps x. not (0 <= x)) + 1 -> "
                                     "not not (0 <= pd(eps x. not (0 <= x)))",
                                     sig)));
      }
    CHECK(found);
  }

  SUBCASE("degenerate predicate: the choice term is a null term") {
    auto rep = replay_induction(parse_formula("x = x", sig), "x");
    CHECK(rep.check.ok);
    CHECK(rep.all_lines_true);
    LeastNumberEval ev{12};
    CHECK(ev.term(rep.s) == 0);
    CHECK(!ev.defaulted.empty());
  }

  SUBCASE("predecessor bound replays") {
    auto rep = replay_induction(parse_formula("pd(x) <= x", sig), "x");
    CHECK(rep.check.ok);
    CHECK(rep.all_lines_true);
  }

  SUBCASE("a false induction step still checks but evaluates false") {
    auto rep = replay_induction(parse_formula("x < 5", sig), "x");
    CHECK(rep.check.ok);          // the derivation is formally correct
    CHECK(rep.line8_shape_ok);
    CHECK_FALSE(rep.all_lines_true);  // the step premise fails at x = 4
    int premise_step = 8, conclusion = 16;
    CHECK_FALSE(rep.line_truth[premise_step]);
    CHECK_FALSE(rep.line_truth[conclusion]);
  }

  SUBCASE("proper mode checks in the starred profile") {
    auto rep = replay_induction(parse_formula("0 <= x", sig), "x", true);
    CHECK(rep.proper_mode);
    CHECK(rep.check.ok);
  }

  SUBCASE("improper formulas are refused in proper mode") {
    auto f = parse_formula("(eps y. y = x) = x", sig);
    CHECK_THROWS_WITH_AS(replay_induction(f, "x", true), doctest::Contains("improper"),
                         InductionError);
  }

  SUBCASE("the formula must be unary") {
    CHECK_THROWS_AS(replay_induction(parse_formula("0 = 0", sig), "x"), InductionError);
    CHECK_THROWS_AS(replay_induction(parse_formula("x = y", sig), "x"), InductionError);
  }
}
