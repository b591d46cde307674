#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "epsilon/parse.hpp"
#include "epsilon/print.hpp"
#include "epsilon/transform.hpp"

using namespace epsilon;

static Signature base_sig() {
  Signature s;
  s.declare_pred("P", 1);
  s.declare_pred("Q", 1);
  s.declare_pred("R", 2);
  s.declare_fun("c", 0);
  return s;
}

TEST_CASE("existential rule") {
  auto sig = base_sig();
  auto f = parse_formula("exists x. P(x)", sig);
  auto out = existential_to_epsilon(f);
  CHECK(alpha_eq(out, parse_formula("P(eps x. P(x))", sig)));
  CHECK_THROWS_AS(existential_to_epsilon(parse_formula("P(c)", sig)), TransformError);
}

TEST_CASE("universal rule is classical only") {
  auto sig = base_sig();
  auto f = parse_formula("forall x. P(x)", sig);
  auto out = universal_to_epsilon(f, Mode::Classical);
  CHECK(alpha_eq(out, parse_formula("P(eps x. not P(x))", sig)));
  CHECK_THROWS_WITH_AS(universal_to_epsilon(f, Mode::Intuitionistic),
                       doctest::Contains("Markov"), TransformError);
}

TEST_CASE("full translation is innermost first and quantifier free") {
  auto sig = base_sig();
  auto f = parse_formula("forall x. exists y. R(x, y)", sig);
  Trace tr;
  auto out = epsilon_translate(f, Mode::Classical, &tr);
  CHECK(!contains_quantifier(out));

  // inner step first: R(x, eps y. R(x, y)), then the universal step
  REQUIRE(tr.size() == 2);
  CHECK(tr[0].rule == "exists-to-eps");
  CHECK(tr[1].rule == "forall-to-eps");

  auto inner = parse_formula("R(x, eps y. R(x, y))", sig);
  auto tau = parse_term("eps x. not R(x, eps y. R(x, y))", sig);
  auto expected = substitute(inner, "x", tau);
  CHECK(alpha_eq(out, expected));
  CHECK(epsilon_rank(out) == 3);
}

TEST_CASE("translation under connectives and inside eps bodies") {
  auto sig = base_sig();
  auto f = parse_formula("P(c) -> P(eps z. exists w. R(z, w))", sig);
  auto out = epsilon_translate(f, Mode::Classical);
  CHECK(!contains_quantifier(out));
  auto expected = parse_formula("P(c) -> P(eps z. R(z, eps w. R(z, w)))", sig);
  CHECK(alpha_eq(out, expected));
}

TEST_CASE("intuitionistic translation accepts pure existentials") {
  auto sig = base_sig();
  auto f = parse_formula("exists x. exists y. R(x, y)", sig);
  CHECK(!contains_quantifier(epsilon_translate(f, Mode::Intuitionistic)));
  CHECK_THROWS_AS(epsilon_translate(parse_formula("forall x. P(x)", sig), Mode::Intuitionistic),
                  TransformError);
}

TEST_CASE("prenex pulls left to right with renaming") {
  auto sig = base_sig();
  auto p1 = prenex(parse_formula("(forall x. P(x)) -> Q(c)", sig));
  REQUIRE(p1.prefix.size() == 1);
  CHECK(p1.prefix[0].first == Quant::Exists);
  CHECK(alpha_eq(p1.attach(), parse_formula("exists x. (P(x) -> Q(c))", sig)));

  auto p2 = prenex(parse_formula("not exists x. P(x)", sig));
  CHECK(alpha_eq(p2.attach(), parse_formula("forall x. not P(x)", sig)));

  auto p3 = prenex(parse_formula("(forall x. P(x)) and (exists y. Q(y))", sig));
  REQUIRE(p3.prefix.size() == 2);
  CHECK(p3.prefix[0].first == Quant::Forall);
  CHECK(p3.prefix[1].first == Quant::Exists);
  CHECK(alpha_eq(p3.attach(),
                 parse_formula("forall x. exists y. (P(x) and Q(y))", sig)));

  // same hint on both sides: names stay distinct
  auto p4 = prenex(parse_formula("(forall x. P(x)) or (forall x. Q(x))", sig));
  REQUIRE(p4.prefix.size() == 2);
  CHECK(p4.prefix[0].second != p4.prefix[1].second);
  CHECK(alpha_eq(p4.attach(),
                 parse_formula("forall x. forall y. (P(x) or Q(y))", sig)));
}

TEST_CASE("prenex trace names the commutation rules") {
  auto sig = base_sig();
  Trace tr;
  prenex(parse_formula("(forall x. P(x)) -> Q(c)", sig), &tr);
  REQUIRE(tr.size() == 1);
  CHECK(tr[0].rule == "prenex-imp-left-forall");
  CHECK(tr[0].before == "(forall x. P(x)) -> Q(c)");
  CHECK(tr[0].after == "exists x. P(x) -> Q(c)");  // binder body extends maximally
}

TEST_CASE("prenex refuses eps terms") {
  auto sig = base_sig();
  CHECK_THROWS_AS(prenex(parse_formula("P(eps x. P(x))", sig)), TransformError);
}

TEST_CASE("skolem resolution of the order axioms") {
  auto sig = Signature::with_arithmetic();
  auto a4 = parse_formula("forall x. exists y. x < y", sig);
  auto a5 = parse_formula("exists x. forall y. x = y or x < y", sig);
  auto res = skolem_resolve({a4, a5}, sig);

  REQUIRE(res.defs.size() == 2);
  CHECK(res.defs[0].name == "g");
  CHECK(res.defs[0].params == std::vector<std::string>{"x"});
  CHECK(alpha_eq(res.defs[0].definition, parse_term("eps y. x < y", sig)));
  CHECK(res.defs[1].name == "s");
  CHECK(res.defs[1].params.empty());
  CHECK(alpha_eq(res.defs[1].definition,
                 parse_term("eps x. forall y. x = y or x < y", sig)));

  REQUIRE(res.axioms.size() == 2);
  CHECK(alpha_eq(res.axioms[0], parse_formula("forall x. x < g(x)", res.extended)));
  CHECK(alpha_eq(res.axioms[1], parse_formula("forall y. s = y or s < y", res.extended)));

  auto mats = matrices(res.axioms);
  REQUIRE(mats.size() == 2);
  CHECK(alpha_eq(mats[0], parse_formula("x < g(x)", res.extended)));
  CHECK(alpha_eq(mats[1], parse_formula("s = y or s < y", res.extended)));
}

TEST_CASE("skolem naming skips declared symbols") {
  Signature sig = base_sig();
  sig.declare_fun("s", 0);
  auto a = parse_formula("exists x. P(x)", sig);
  auto res = skolem_resolve({a}, sig);
  REQUIRE(res.defs.size() == 1);
  CHECK(res.defs[0].name == "s1");
}

TEST_CASE("iterated existentials chain their definitions") {
  auto sig = base_sig();
  auto a = parse_formula("forall x. exists y. exists z. R(y, z)", sig);
  auto res = skolem_resolve({a}, sig);
  REQUIRE(res.defs.size() == 2);
  CHECK(res.defs[0].name == "g");
  CHECK(alpha_eq(res.defs[0].definition,
                 parse_term("eps y. exists z. R(y, z)", sig)));
  CHECK(res.defs[1].name == "g1");
  // second definition mentions the first symbol
  CHECK(function_symbols(res.defs[1].definition).count("g") == 1);
  CHECK(alpha_eq(res.axioms[0],
                 parse_formula("forall x. R(g(x), g1(x))", res.extended)));
}

TEST_CASE("matrices expose distinct free variables") {
  auto sig = Signature::with_arithmetic();
  auto a1 = parse_formula("forall x. forall y. forall z. (x < y and y < z) -> x < z", sig);
  auto mats = matrices({a1});
  REQUIRE(mats.size() == 1);
  CHECK(free_vars(mats[0]) == std::set<std::string>{"x", "y", "z"});
}
