#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "epsilon/classical.hpp"
#include "epsilon/parse.hpp"
#include "epsilon/print.hpp"

using namespace epsilon;

// Ordered universe 0..n-1 with natural < and <= tables.
static FiniteModel ordered_model(int n) {
  FiniteModel m;
  for (int i = 0; i < n; ++i) m.elems.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i < j) m.preds["<"].insert({i, j});
      if (i <= j) m.preds["<="].insert({i, j});
    }
  return m;
}

static std::vector<FormulaPtr> battery() {
  Signature sig = pc_signature();
  std::vector<std::string> texts = {
      "P(x)",  "not P(x)", "P(x) and not (x = c)", "P(x) or x = c",
      "x = c", "not (x = x)", "x = x", "P(x) -> P(c)",
  };
  std::vector<FormulaPtr> out;
  for (auto& t : texts) out.push_back(parse_formula(t, sig));
  return out;
}

TEST_CASE("choice function enumeration and invariants") {
  CHECK(all_choice_functions(1).size() == 1);
  CHECK(all_choice_functions(2).size() == 2);
  auto cfs = all_choice_functions(3);
  CHECK(cfs.size() == 24);
  CHECK(count_choice_functions(2) == 2);
  CHECK(count_choice_functions(3) == 24);
  CHECK((long long)cfs.size() == count_choice_functions(3));
  for (auto& cf : cfs) cf.validate();
  // first in enumeration order picks least members everywhere
  CHECK(cfs.front().table == ChoiceFunction::minimum(3).table);
  ChoiceFunction big = ChoiceFunction::minimum(20);
  CHECK(big(0b1100) == 2);
  CHECK(big(0) == 0);  // empty set falls back to the full-set choice
}

TEST_CASE("extension examples") {
  auto m = ordered_model(3);
  auto cf = ChoiceFunction::minimum(3);
  Signature sig = Signature::with_arithmetic();
  CHECK(extension(parse_formula("x < 2", sig), m, cf) == 0b011);
  CHECK(extension(parse_formula("not (x = x)", sig), m, cf) == 0);
  CHECK(extension(parse_formula("x = x", sig), m, cf) == 0b111);
  CHECK_THROWS_AS(extension(parse_formula("x < y", sig), m, cf), SemanticsError);
}

TEST_CASE("eval of eps terms and null-term collapse") {
  auto m = ordered_model(3);
  auto cf = ChoiceFunction::minimum(3);
  Signature sig = Signature::with_arithmetic();
  CHECK(eval_term(parse_term("eps x. x < 2", sig), m, cf) == 0);
  CHECK(eval_term(parse_term("eps x. not (x = x)", sig), m, cf) ==
        eval_term(parse_term("eps x. x = x", sig), m, cf));
  CHECK_THROWS_AS(eval_term(parse_term("5", sig), m, cf), SemanticsError);
  CHECK_THROWS_AS(eval_formula(parse_formula("x < 1", sig), m, cf), SemanticsError);
}

TEST_CASE("exists and forall equivalences, exhaustive to size 3") {
  auto ex = check_exists_equivalence(3);
  CHECK(ex.ok());
  CHECK(ex.models == 34);   // 1*2 + 2*8 + 3*... = sum of n * 2^n models per size
  CHECK(ex.choices == 27);  // 1 + 2 + 24
  CHECK(ex.instances == (2 * 1 + 8 * 2 + 24 * 24) * 8);
  auto fa = check_forall_equivalence(3);
  CHECK(fa.ok());
  auto nc = check_null_collapse(3);
  CHECK(nc.ok());
}

TEST_CASE("exists equivalence on random triples") {
  std::mt19937 rng(20260813);
  Signature sig = pc_signature();
  auto bat = battery();
  for (int trial = 0; trial < 500; ++trial) {
    int n = 1 + (int)(rng() % 3);
    FiniteModel m;
    for (int i = 0; i < n; ++i) m.elems.push_back("e" + std::to_string(i));
    m.funcs["c"][{}] = (int)(rng() % n);
    for (int a = 0; a < n; ++a)
      if (rng() & 1u) m.preds["P"].insert({a});
    if (!m.preds.count("P")) m.preds["P"] = {};
    ChoiceFunction cf;
    cf.n = n;
    cf.table.assign(1u << n, 0);
    for (uint32_t mask = 1; mask < (1u << n); ++mask) {
      std::vector<int> mem;
      for (int e = 0; e < n; ++e)
        if ((mask >> e) & 1u) mem.push_back(e);
      cf.table[mask] = mem[rng() % mem.size()];
    }
    cf.table[0] = cf.table[(1u << n) - 1];
    cf.validate();
    auto& f = bat[rng() % bat.size()];
    bool lhs = eval_formula(mk_exists("x", f), m, cf);
    bool rhs = eval_formula(substitute(f, "x", mk_eps("x", f)), m, cf);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("alpha-equal inputs evaluate identically") {
  auto m = ordered_model(3);
  Signature sig = Signature::with_arithmetic();
  auto a = parse_formula("exists u. forall v. u <= v", sig);
  auto b = parse_formula("exists p. forall q. p <= q", sig);
  REQUIRE(alpha_eq(a, b));
  for (auto& cf : all_choice_functions(3)) CHECK(eval_formula(a, m, cf) == eval_formula(b, m, cf));
  auto ta = parse_term("eps x. forall y. x <= y", sig);
  auto tb = parse_term("eps s. forall t. s <= t", sig);
  for (auto& cf : all_choice_functions(3)) CHECK(eval_term(ta, m, cf) == eval_term(tb, m, cf));
}

TEST_CASE("critical schema F(a) -> F(eps F) holds in every model") {
  auto bat = battery();
  for (int n = 1; n <= 3; ++n) {
    auto cfs = all_choice_functions(n);
    for (auto& m : all_pc_models(n))
      for (auto& cf : cfs)
        for (auto& f : bat) {
          auto feps = substitute(f, "x", mk_eps("x", f));
          for (int a = 0; a < n; ++a) {
            bool fa = eval_formula(f, m, cf, {{"x", a}});
            if (fa) CHECK(eval_formula(feps, m, cf));
          }
        }
  }
}

TEST_CASE("generic reading: G(eps F) over all choice functions tracks extension inclusion") {
  auto bat = battery();
  for (int n = 1; n <= 3; ++n) {
    auto cfs = all_choice_functions(n);
    for (auto& m : all_pc_models(n))
      for (auto& f : bat)
        for (auto& g : bat) {
          uint32_t xf = extension(f, m, cfs.front());
          uint32_t xg = extension(g, m, cfs.front());
          if (xf == 0) continue;
          bool included = (xf & ~xg) == 0;
          bool all_true = true, some_false = false;
          for (auto& cf : cfs) {
            bool v = eval_formula(substitute(g, "x", mk_eps("x", f)), m, cf);
            all_true = all_true && v;
            some_false = some_false || !v;
          }
          if (included)
            CHECK(all_true);
          else
            CHECK(some_false);
        }
  }
}

TEST_CASE("extensionality is structurally guaranteed") {
  Signature sig = Signature::with_arithmetic();
  auto m = ordered_model(3);
  auto cf = ChoiceFunction::minimum(3);
  std::vector<std::pair<FormulaPtr, FormulaPtr>> pairs = {
      {parse_formula("x < 2", sig), parse_formula("not (2 <= x)", sig)},
      {parse_formula("x = x", sig), parse_formula("not (x = x)", sig)},
  };
  auto rep = check_ackermann(m, cf, pairs);
  CHECK(rep.ok());
  CHECK(rep.pairs == 2);
  CHECK(rep.structurally_guaranteed);

  // random pairs on random models
  std::mt19937 rng(97);
  auto bat = battery();
  for (int trial = 0; trial < 200; ++trial) {
    int n = 1 + (int)(rng() % 3);
    auto models = all_pc_models(n);
    auto cfs = all_choice_functions(n);
    auto& mm = models[rng() % models.size()];
    auto& cc = cfs[rng() % cfs.size()];
    auto r = check_ackermann(mm, cc, {{bat[rng() % bat.size()], bat[rng() % bat.size()]}});
    CHECK(r.ok());
  }
}

TEST_CASE("definite description status") {
  Signature sig = pc_signature();
  FiniteModel m;
  m.elems = {"e0", "e1"};
  m.funcs["c"][{}] = 1;
  m.preds["P"] = {};
  auto cf = ChoiceFunction::minimum(2);
  auto r1 = iota_check(parse_formula("x = c", sig), m, cf);
  CHECK(r1.ok());
  CHECK(r1.element == 1);
  auto r2 = iota_check(parse_formula("x = x", sig), m, cf);
  CHECK(r2.status == IotaResult::Status::NoUniqueness);
  auto r3 = iota_check(parse_formula("not (x = x)", sig), m, cf);
  CHECK(r3.status == IotaResult::Status::NoExistence);
}

TEST_CASE("abstraction representatives") {
  auto cf4 = ChoiceFunction::minimum(4);
  FiniteModel parity;
  parity.elems = {"0", "1", "2", "3"};
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      if ((a & 1) == (b & 1)) parity.preds["sim"].insert({a, b});
  auto rep = abstraction_representative("sim", parity, cf4);
  REQUIRE(rep.ok);
  CHECK(rep.rep == std::vector<int>{0, 1, 0, 1});

  FiniteModel ident;
  ident.elems = {"0", "1", "2"};
  for (int a = 0; a < 3; ++a) ident.preds["sim"].insert({a, a});
  auto rid = abstraction_representative("sim", ident, ChoiceFunction::minimum(3));
  REQUIRE(rid.ok);
  CHECK(rid.rep == std::vector<int>{0, 1, 2});

  FiniteModel total;
  total.elems = {"0", "1", "2"};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) total.preds["sim"].insert({a, b});
  auto rtot = abstraction_representative("sim", total, ChoiceFunction::minimum(3));
  REQUIRE(rtot.ok);
  CHECK(rtot.rep == std::vector<int>{0, 0, 0});

  FiniteModel broken = parity;
  broken.preds["sim"].erase({2, 2});
  auto rb = abstraction_representative("sim", broken, cf4);
  CHECK_FALSE(rb.ok);
  CHECK(rb.witness == "reflexivity fails at 2");

  FiniteModel asym = ident;
  asym.preds["sim"].insert({0, 1});
  auto ra = abstraction_representative("sim", asym, ChoiceFunction::minimum(3));
  CHECK_FALSE(ra.ok);
  CHECK(ra.witness == "symmetry fails at (0, 1)");
}

TEST_CASE("finitist matrix verification of the order axioms") {
  Signature sig = Signature::with_arithmetic();
  sig.declare_fun("g", 1);
  sig.declare_fun("s", 0);
  std::vector<FormulaPtr> mats = {
      parse_formula("not (x < x)", sig),
      parse_formula("(x < y) and (y < z) -> (x < z)", sig),
      parse_formula("(x < y) or (y < x) or (x = y)", sig),
      parse_formula("x < g(x)", sig),
      parse_formula("(s = y) or (s < y)", sig),
  };
  FinitistInterp good;
  good.funcs["g"] = [](const std::vector<uint64_t>& a) { return a[0] + 1; };
  good.funcs["s"] = [](const std::vector<uint64_t>&) { return uint64_t(0); };
  auto rep = verify_matrices(mats, 10, good);
  CHECK(rep.ok);
  CHECK(rep.instances == 10 + 1000 + 100 + 10 + 10);

  FinitistInterp wrong = good;
  wrong.funcs["g"] = [](const std::vector<uint64_t>& a) { return a[0]; };
  auto bad = verify_matrices(mats, 3, wrong);
  CHECK_FALSE(bad.ok);
  CHECK(bad.counterexample.find("x = 0") != std::string::npos);
  CHECK(bad.counterexample.find("x < g(x)") != std::string::npos);

  CHECK(verify_matrices({}, 10, good).ok);
  CHECK_THROWS_AS(verify_matrices({parse_formula("forall x. x < g(x)", sig)}, 3, good),
                  SemanticsError);
  CHECK_THROWS_AS(verify_matrices({parse_formula("x < (eps y. x < y)", sig)}, 3, good),
                  SemanticsError);
}

TEST_CASE("finitist evaluation is unbounded above the substitution cap") {
  Signature sig = Signature::with_arithmetic();
  FinitistInterp interp;
  CHECK(finitist_eval_term(parse_term("3 + 4 * 2", sig), interp) == 11);
  CHECK(finitist_eval_term(parse_term("pd(0)", sig), interp) == 0);
  CHECK(finitist_eval_term(parse_term("pd(7)", sig), interp) == 6);
  // 9 < 9+1 evaluates above the cap used for substitution
  CHECK(finitist_eval_formula(parse_formula("9 < 9 + 1", sig), interp));
}

TEST_CASE("bounded grid has no infinitesimal") {
  auto rep = infinitesimal_null_demo(4);
  CHECK(rep.grid_size == 23);
  CHECK(rep.extension_elems.empty());
  CHECK(rep.is_null_term);
  CHECK(rep.iprime_true);
  CHECK(rep.variant_extension == std::vector<std::string>{"0"});
  CHECK(rep.epsilon_elem == "-4");  // Phi(empty) = Phi(U) = least grid point

  auto small = infinitesimal_null_demo(2);
  CHECK(small.grid_size == 7);
  CHECK(small.is_null_term);
  CHECK(small.variant_extension == std::vector<std::string>{"0"});
}

TEST_CASE("validity without derivability for the null-term identity") {
  auto rep = cpi_validity_demo(3);
  CHECK(rep.valid_everywhere);
  CHECK_FALSE(rep.derivability_checked);
  CHECK(rep.models == 34);
  CHECK(rep.choices == 27);
}

TEST_CASE("model validation") {
  Signature sig = pc_signature();
  FiniteModel m;
  m.elems = {"e0", "e1"};
  m.preds["P"] = {};
  CHECK_THROWS_AS(m.validate(sig), SemanticsError);  // missing table for c
  m.funcs["c"][{}] = 1;
  m.validate(sig);
  m.funcs["c"][{}] = 2;
  CHECK_THROWS_AS(m.validate(sig), SemanticsError);  // value out of range
}
