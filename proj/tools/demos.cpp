#include "demos.hpp"

#include <cstdio>
#include <string>
#include <vector>

#include "epsilon/classical.hpp"
#include "epsilon/heyting.hpp"
#include "epsilon/hsubst.hpp"
#include "epsilon/induction.hpp"
#include "epsilon/kernel.hpp"
#include "epsilon/kripke.hpp"
#include "epsilon/parse.hpp"
#include "epsilon/print.hpp"
#include "epsilon/syntax.hpp"
#include "epsilon/textio.hpp"

using namespace epsilon;

namespace {

void say(const std::string& s) { std::fputs((s + "\n").c_str(), stdout); }

bool verdict(const std::string& what, bool ok) {
  say("  " + what + ": " + (ok ? "yes" : "NO"));
  return ok;
}

// The five quantifier-free order-axiom matrices over <, g and s.
std::vector<FormulaPtr> order_matrices(Signature& sig) {
  sig = Signature::with_arithmetic();
  sig.declare_fun("g", 1);
  sig.declare_fun("s", 0);
  return {
      parse_formula("not (x < x)", sig),
      parse_formula("(x < y) and (y < z) -> (x < z)", sig),
      parse_formula("(x < y) or (y < x) or (x = y)", sig),
      parse_formula("x < g(x)", sig),
      parse_formula("(s = y) or (s < y)", sig),
  };
}

int demo_a1a5(std::uint64_t cap) {
  if (cap == 0) cap = 10;
  Signature sig;
  auto mats = order_matrices(sig);
  say("finitist verification of the five order-axiom matrices");
  say("  matrices:");
  for (auto& m : mats) say("    " + print(m));
  say("  interpretation: g(x) = x + 1, s = 0, substituted numerals below " +
      std::to_string(cap));

  FinitistInterp good;
  good.funcs["g"] = [](const std::vector<std::uint64_t>& a) { return a[0] + 1; };
  good.funcs["s"] = [](const std::vector<std::uint64_t>&) { return std::uint64_t(0); };
  auto rep = verify_matrices(mats, cap, good);
  say("  instances checked: " + std::to_string(rep.instances));
  bool ok = verdict("all instances true", rep.ok);

  FinitistInterp wrong = good;
  wrong.funcs["g"] = [](const std::vector<std::uint64_t>& a) { return a[0]; };
  auto bad = verify_matrices(mats, 3, wrong);
  say("  variant g(x) = x:");
  if (!bad.ok) say("    counterexample: " + bad.counterexample);
  ok = verdict("variant refuted at x = 0",
               !bad.ok && bad.counterexample.find("x = 0") != std::string::npos) &&
       ok;
  return ok ? 0 : 1;
}

int demo_infinitesimal(std::uint64_t cap) {
  if (cap == 0) cap = 4;  // reduced rationals p/q, |p|,q <= cap; cap 4 -> 23 grid points
  auto rep = infinitesimal_null_demo((int)cap);
  say("bounded-grid null-term demonstration (scaled rationals, cap " + std::to_string(cap) + ")");
  say("  grid points: " + std::to_string(rep.grid_size));
  say("  extension of the would-be-infinitesimal predicate: " +
      (rep.extension_elems.empty() ? std::string("empty")
                                   : std::to_string(rep.extension_elems.size()) + " elements"));
  bool ok = verdict("the choice term is a null term", rep.is_null_term);
  say("  it falls on the default element: " + rep.epsilon_elem);
  ok = verdict("the negated predicate holds at it vacuously", rep.iprime_true) && ok;
  std::string variant = "{";
  for (size_t i = 0; i < rep.variant_extension.size(); i++)
    variant += (i ? ", " : "") + rep.variant_extension[i];
  variant += "}";
  say("  variant without the nonzero conjunct: extension " + variant);
  ok = verdict("variant extension is exactly {0}",
               rep.variant_extension == std::vector<std::string>{"0"}) &&
       ok;
  return ok ? 0 : 1;
}

int demo_cardinals() {
  say("representative-of-class demonstration (parity on {0, 1, 2, 3})");
  FiniteModel parity;
  parity.elems = {"0", "1", "2", "3"};
  for (int a = 0; a < 4; a++)
    for (int b = 0; b < 4; b++)
      if ((a & 1) == (b & 1)) parity.preds["sim"].insert({a, b});
  auto rep = abstraction_representative("sim", parity, ChoiceFunction::minimum(4));
  bool ok = rep.ok;
  if (!rep.ok) say("  violation: " + rep.witness);
  for (size_t a = 0; a < rep.rep.size(); a++)
    say("  rep(" + parity.elems[a] + ") = " + parity.elems[rep.rep[a]]);
  ok = verdict("law a ~ b <-> rep(a) = rep(b)", rep.ok) && ok;
  ok = verdict("representatives are {0, 1, 0, 1}", rep.rep == std::vector<int>{0, 1, 0, 1}) && ok;

  FiniteModel total = parity;
  total.preds["sim"].clear();
  for (int a = 0; a < 4; a++)
    for (int b = 0; b < 4; b++) total.preds["sim"].insert({a, b});
  auto rt = abstraction_representative("sim", total, ChoiceFunction::minimum(4));
  ok = verdict("total relation collapses to one representative",
               rt.ok && rt.rep == std::vector<int>{0, 0, 0, 0}) &&
       ok;
  return ok ? 0 : 1;
}

int demo_induction(std::uint64_t cap) {
  if (cap == 0) cap = 12;
  auto sig = Signature::with_arithmetic();
  auto a = parse_formula("0 <= x", sig);
  say("derived-induction replay for A(x) := 0 <= x (semantics at cap " + std::to_string(cap) +
      ")");
  auto rep = replay_induction(a, "x", false, cap);
  say("");
  std::fputs(show_derivation(rep.derivation).c_str(), stdout);
  say("");
  bool ok = verdict("derivation checks under CP_eps", rep.check.ok);
  if (!rep.check.ok) say("  " + rep.check.message);
  ok = verdict("milestone (8) has the successor shape", rep.line8_shape_ok) && ok;
  ok = verdict("every line true under least-number semantics", rep.all_lines_true) && ok;
  return ok ? 0 : 1;
}

int demo_nested_substitution(std::uint64_t cap, bool trace) {
  if (cap == 0) cap = 8;
  auto sig = Signature::with_arithmetic();
  auto eps_b = parse_term("eps y. y = 2", sig);
  auto eps_a = parse_term("eps x. x = (eps y. y = 2) + 2", sig);
  std::vector<CriticalFormula> cs = {
      {parse_formula("0 = 2 -> (eps y. y = 2) = 2", sig), eps_b, mk_numeral(0), 0},
      {parse_formula("2 = (eps y. y = 2) + 2 -> "
                     "(eps x. x = (eps y. y = 2) + 2) = (eps y. y = 2) + 2",
                     sig),
       eps_a, mk_numeral(2), 1},
      {parse_formula("(eps x. x = (eps y. y = 2) + 2) = 2 -> (eps y. y = 2) = 2", sig), eps_b,
       eps_a, 2},
  };
  say("iterative repair on the nested two-term system (cap " + std::to_string(cap) + ")");
  say("  critical formulas:");
  for (auto& c : cs) say("    " + print(c.formula));
  auto res = hsubst_solve(cs, cap);
  say("  events:");
  for (auto& ev : res.history)
    say("    " + ev.kind + " " + print(ev.term) + ": " + std::to_string(ev.old_value) + " -> " +
        std::to_string(ev.new_value) + " (critical " + std::to_string(ev.critical + 1) + ")");
  for (auto& n : res.notes) say("  note: " + n);
  say("  sweeps: " + std::to_string(res.iterations));
  say("  final assignment: " + show_assignment(res.assignment));
  bool ok = verdict("system resolved", res.resolved);
  ok = verdict("history is repair, repair, reset",
               res.history.size() == 3 && res.history[0].kind == "repair" &&
                   res.history[1].kind == "repair" && res.history[2].kind == "reset") &&
       ok;
  if (trace) {
    LeastNumberEval ev{cap, &res.assignment};
    for (auto& c : cs)
      say("  check " + print(c.formula) + ": " + (ev.formula(c.formula) ? "true" : "false"));
  }
  return ok ? 0 : 1;
}

int demo_bell() {
  say("excluded-middle search over Kripke structures (<= 3 worlds, <= 2 elements)");
  auto rep = bell_lem_search(3, 2);
  say("  structures: " + std::to_string(rep.structures));
  say("  choice combinations: " + std::to_string(rep.choice_combos));
  say("  existence schema forced at the root: " + std::to_string(rep.eps_admissible));
  say("  ... with extensionality forced too: " + std::to_string(rep.eps2_admissible));
  say("  LEM countermodels under both schemas: " + std::to_string(rep.lem_countermodels));
  say("  LEM refuted with the existence schema alone: " +
      std::to_string(rep.lem_refuted_without_eps2));
  say("  global-variant countermodels (recorded, not asserted): " +
      std::to_string(rep.global_variant_countermodels));
  for (auto& n : rep.notes) say("  note: " + n);
  bool ok = verdict("no countermodel once both schemas are forced", rep.ok());
  ok = verdict("the existence schema alone leaves LEM refutable",
               rep.lem_refuted_without_eps2 > 0) &&
       ok;
  return ok ? 0 : 1;
}

int demo_heyting_gap() {
  say("double-negation gap on the three-point space with opens {}, {a}, {a, b, c}");
  auto sp = make_space(3, {0u, 1u, 7u});
  uint32_t x = 1u;
  auto [x_back, ddx] = double_negation_gap(sp, x);
  say("  X         = " + sp.set_name(x_back));
  say("  not X     = " + sp.set_name(sp.neg(x)));
  say("  not not X = " + sp.set_name(ddx));
  bool ok = verdict("not not X strictly contains X", ddx == 7u && x_back == 1u && ddx != x_back);

  // On every space with at most 3 points: F -> not not F is full, and every
  // clopen extension satisfies excluded middle.
  long long spaces = 0, checks = 0;
  bool battery = true;
  for (int n = 1; n <= 3; n++)
    for (auto& s : all_topologies(n)) {
      spaces++;
      for (uint32_t u : s.opens) {
        checks++;
        battery = battery && s.imp(u, s.neg(s.neg(u))) == s.full_mask();
        if (s.is_clopen(u)) battery = battery && (u | s.neg(u)) == s.full_mask();
      }
    }
  say("  spaces enumerated: " + std::to_string(spaces) + ", opens checked: " +
      std::to_string(checks));
  ok = verdict("F -> not not F full everywhere; clopen extensions satisfy LEM", battery) && ok;
  return ok ? 0 : 1;
}

}  // namespace

int run_demo(const std::string& name, std::uint64_t cap, bool trace) {
  if (name == "a1a5") return demo_a1a5(cap);
  if (name == "infinitesimal") return demo_infinitesimal(cap);
  if (name == "cardinals") return demo_cardinals();
  if (name == "induction") return demo_induction(cap);
  if (name == "nested-substitution") return demo_nested_substitution(cap, trace);
  if (name == "bell") return demo_bell();
  if (name == "heyting-gap") return demo_heyting_gap();
  std::fputs(("unknown demo: " + name +
              " (expected a1a5, infinitesimal, cardinals, induction, nested-substitution, "
              "bell, heyting-gap)\n")
                 .c_str(),
             stderr);
  return 2;
}
