#include "epsilon/induction.hpp"

#include "epsilon/print.hpp"

namespace epsilon {

InductionReport replay_induction(const FormulaPtr& a, const std::string& var, bool proper_mode,
                                 uint64_t cap) {
  if (!a) throw InductionError("missing induction formula");
  auto fv = free_vars(a);
  if (fv.size() != 1 || !fv.count(var))
    throw InductionError("induction formula must have exactly the free variable '" + var + "'");
  if (proper_mode && !is_proper(a))
    throw InductionError("improper induction formula in proper mode: " + print(a));

  InductionReport rep;
  rep.proper_mode = proper_mode;
  rep.cap = cap;

  const TermPtr s = mk_eps(var, mk_not(a));
  const TermPtr t = mk_app("pd", {s});
  const TermPtr zero = mk_numeral(0);
  const TermPtr t1 = mk_app("+", {t, mk_numeral(1)});
  rep.s = s;
  rep.t = t;

  auto A = [&](const TermPtr& at) { return substitute(a, var, at); };
  const FormulaPtr step =
      mk_forall(var, mk_imp(a, substitute(a, var, mk_app("+", {mk_free(var), mk_numeral(1)}))));

  Derivation& d = rep.derivation;
  d.sig = Signature::with_arithmetic();

  d.add(mk_or(mk_eq(s, zero), mk_eq(t1, s)), j_premise(), "(aux)");          // 0
  d.add(mk_imp(mk_eq(t1, s), mk_eq(s, t1)), j_eqsym(), "(aux)");             // 1
  d.add(mk_or(mk_eq(s, zero), mk_eq(s, t1)), j_tautcons({0, 1}), "(1)");     // 2
  d.add(A(zero), j_premise(), "(2)");                                        // 3
  d.add(mk_imp(mk_eq(s, zero), mk_eq(zero, s)), j_eqsym(), "(aux)");         // 4
  d.add(mk_imp(mk_eq(zero, s), mk_imp(A(zero), A(s))), j_eqsubst(), "(aux)");  // 5
  d.add(mk_imp(mk_eq(s, zero), mk_imp(A(zero), A(s))), j_tautcons({4, 5}), "(3)");  // 6
  d.add(mk_imp(mk_eq(s, zero), A(s)), j_tautcons({6, 3}), "(4)");            // 7
  d.add(step, j_premise(), "(5)");                                           // 8
  d.add(mk_imp(step, mk_imp(A(t), A(t1))), j_inst(t), "(aux)");              // 9
  d.add(mk_imp(A(t), A(t1)), j_mp(9, 8), "(6)");                             // 10
  d.add(mk_imp(mk_eq(s, t1), mk_eq(t1, s)), j_eqsym(), "(aux)");             // 11
  d.add(mk_imp(mk_eq(t1, s), mk_imp(A(t1), A(s))), j_eqsubst(), "(aux)");    // 12
  d.add(mk_imp(mk_eq(s, t1), mk_imp(A(t1), A(s))), j_tautcons({11, 12}), "(7)");  // 13
  d.add(mk_imp(mk_eq(s, t1), mk_not(mk_not(A(t)))), j_e2(t), "(8)");         // 14
  d.add(mk_imp(mk_eq(s, t1), A(s)), j_tautcons({10, 13, 14}), "(9)");        // 15
  d.add(A(s), j_tautcons({2, 7, 15}), "(10)");                               // 16

  rep.check = check(d, proper_mode ? Profile::CP_eps_star : Profile::CP_eps);

  // Independent shape test of the "(8)" line.
  for (auto& ln : d.lines)
    if (ln.label == "(8)")
      rep.line8_shape_ok =
          alpha_eq(ln.formula, mk_imp(mk_eq(s, mk_app("+", {mk_app("pd", {s}), mk_numeral(1)})),
                                      mk_not(mk_not(A(mk_app("pd", {s}))))));

  rep.all_lines_true = true;
  for (auto& ln : d.lines) {
    LeastNumberEval ev{cap};
    bool truth = ev.formula(ln.formula);
    rep.line_truth.push_back(truth);
    rep.all_lines_true = rep.all_lines_true && truth;
  }
  return rep;
}

}  // namespace epsilon
