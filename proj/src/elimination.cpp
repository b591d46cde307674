#include "epsilon/elimination.hpp"

#include <algorithm>

#include "epsilon/print.hpp"
#include "epsilon/transform.hpp"

namespace epsilon {

std::vector<TermPtr> derivation_epsilon_terms(const Derivation& d) {
  std::set<TermPtr, TermLess> seen;
  for (auto& ln : d.lines)
    for (auto& e : epsilon_subterms(ln.formula)) seen.insert(e);
  return {seen.begin(), seen.end()};
}

std::string fresh_elimination_constant(const Derivation& d) {
  std::set<std::string> used;
  for (auto& [name, arity] : d.sig.funcs) used.insert(name);
  for (auto& ln : d.lines)
    for (auto& s : function_symbols(ln.formula)) used.insert(s);
  for (int k = 0;; k++) {
    std::string cand = "a" + std::to_string(k);
    if (!used.count(cand)) return cand;
  }
}

namespace {

[[noreturn]] void refuse(int line, const std::string& what) {
  throw EliminationError("line " + std::to_string(line + 1) + ": " + what);
}

bool occurs_in(const FormulaPtr& f, const TermPtr& target) {
  for (auto& e : epsilon_subterms(f))
    if (alpha_eq(e, target)) return true;
  return false;
}

}  // namespace

EliminationStep eliminate_one_epsilon(const Derivation& d, const TermPtr& target) {
  if (!target || !std::get_if<Eps>(&target->node))
    throw EliminationError("elimination target must be an epsilon term");
  const auto& teps = std::get<Eps>(target->node);
  if (contains_eps(teps.body))
    throw EliminationError("elimination target is not innermost: " + print(target));
  check_or_throw(d, Profile::CP_eps_star);

  bool occurs = false;
  for (auto& ln : d.lines)
    if (occurs_in(ln.formula, target)) occurs = true;
  if (!occurs) return {d, nullptr, "", target};

  const std::string a = fresh_elimination_constant(d);
  const TermPtr ac = mk_const(a);
  const FormulaPtr ex = mk_exists_raw(teps.body, teps.hint.empty() ? "x" : teps.hint);
  const FormulaPtr ba = open_binder(teps.body, ac);
  const FormulaPtr h = mk_imp(ex, ba);

  Derivation out;
  out.sig = d.sig;
  out.sig.declare_fun(a, 0);

  auto emit = [&](FormulaPtr f, Justification j, std::string label = "") {
    out.add(std::move(f), std::move(j), std::move(label));
    return (int)out.lines.size() - 1;
  };
  auto subst = [&](const FormulaPtr& f) { return replace_term(f, target, ac); };
  auto subst_t = [&](const TermPtr& t) { return t ? replace_term(t, target, ac) : t; };

  std::vector<int> map(d.lines.size(), -1);
  for (size_t i = 0; i < d.lines.size(); i++) {
    auto& ln = d.lines[i];
    const FormulaPtr fp = subst(ln.formula);
    switch (ln.just.rule) {
      case Rule::Premise:
        if (occurs_in(ln.formula, target)) refuse((int)i, "premise contains the elimination target");
        emit(ln.formula, j_premise(), ln.label);
        map[i] = emit(mk_imp(h, ln.formula), j_tautcons({(int)out.lines.size() - 1}));
        break;

      case Rule::Taut:
        map[i] = emit(mk_imp(h, fp), j_taut(), ln.label);
        break;

      case Rule::TautCons:
      case Rule::MP: {
        std::vector<int> refs;
        for (int r : ln.just.refs) refs.push_back(map[r]);
        map[i] = emit(mk_imp(h, fp), j_tautcons(std::move(refs)), ln.label);
        break;
      }

      case Rule::Inst:
      case Rule::Exi: {
        int p0 = emit(fp, {ln.just.rule, {}, subst_t(ln.just.t), ""}, ln.label);
        map[i] = emit(mk_imp(h, fp), j_tautcons({p0}));
        break;
      }

      case Rule::EqRefl:
      case Rule::EqSym:
      case Rule::EqSubst: {
        int p0 = emit(fp, {ln.just.rule, {}, nullptr, ""}, ln.label);
        map[i] = emit(mk_imp(h, fp), j_tautcons({p0}));
        break;
      }

      case Rule::Eps: {
        auto* imp = std::get_if<Imp>(&ln.formula->node);
        bool on_target = alpha_eq(imp->rhs, open_binder(teps.body, target)) &&
                         alpha_eq(imp->lhs, open_binder(teps.body, ln.just.t));
        if (on_target) {
          // F(t) -> F(target) turns into F(t') -> exists x F, then weakens under h.
          TermPtr w = subst_t(ln.just.t);
          int p0 = emit(mk_imp(open_binder(teps.body, w), ex), j_exi(w), ln.label);
          map[i] = emit(mk_imp(h, fp), j_tautcons({p0}));
        } else if (!contains_eps(fp)) {
          // vacuous binder: both sides collapsed to the same formula
          map[i] = emit(mk_imp(h, fp), j_taut(), ln.label);
        } else {
          int p0 = emit(fp, j_eps(subst_t(ln.just.t)), ln.label);
          map[i] = emit(mk_imp(h, fp), j_tautcons({p0}));
        }
        break;
      }

      case Rule::EpsEx: {
        auto* imp = std::get_if<Imp>(&ln.formula->node);
        auto* exn = std::get_if<Exists>(&imp->lhs->node);
        TermPtr e = mk_eps_raw(exn->body, exn->hint.empty() ? "x" : exn->hint);
        if (alpha_eq(e, target)) {
          map[i] = emit(mk_imp(h, fp), j_taut(), ln.label);  // fp is h up to hints
        } else if (!contains_eps(ln.formula)) {
          refuse((int)i, "vacuous choice binder in an existential-form line");
        } else {
          int p0 = emit(fp, j_epsex(), ln.label);
          map[i] = emit(mk_imp(h, fp), j_tautcons({p0}));
        }
        break;
      }

      case Rule::E1: {
        auto* imp = std::get_if<Imp>(&ln.formula->node);
        auto* l = std::get_if<Not>(&imp->lhs->node);
        if (alpha_eq(l->sub, open_binder(teps.body, target)))
          refuse((int)i, "order axiom anchored on the elimination target: " + print(ln.formula));
        int p0 = emit(fp, {Rule::E1, {}, subst_t(ln.just.t), ""}, ln.label);
        map[i] = emit(mk_imp(h, fp), j_tautcons({p0}));
        break;
      }

      case Rule::E2: {
        auto* imp = std::get_if<Imp>(&ln.formula->node);
        auto* eq = std::get_if<Eq>(&imp->lhs->node);
        if (alpha_eq(eq->lhs, target))
          refuse((int)i, "order axiom anchored on the elimination target: " + print(ln.formula));
        int p0 = emit(fp, {Rule::E2, {}, subst_t(ln.just.t), ""}, ln.label);
        map[i] = emit(mk_imp(h, fp), j_tautcons({p0}));
        break;
      }

      case Rule::Exe:
      case Rule::Gen:
        refuse((int)i, "quantifier rules must be discharged before elimination");

      case Rule::Eps2:
        refuse((int)i, "extensionality lines are outside the proper fragment");
    }
  }

  check_or_throw(out, Profile::CP_eps_star);
  if (derivation_epsilon_terms(out).size() >= derivation_epsilon_terms(d).size())
    throw EliminationError("internal: elimination failed to reduce the epsilon-term count");
  return {std::move(out), h, a, target};
}

Derivation second_epsilon_theorem(const Derivation& d, std::vector<std::string>* trace) {
  check_or_throw(d, Profile::CP_eps_star);
  if (contains_eps(d.conclusion()))
    throw EliminationError("conclusion contains epsilon terms: " + print(d.conclusion()));

  Derivation cur = d;
  for (size_t i = 0; i < cur.lines.size(); i++) {
    auto& ln = cur.lines[i];
    if (ln.just.rule == Rule::Premise && contains_eps(ln.formula))
      refuse((int)i, "premise contains epsilon terms: " + print(ln.formula));
    if (ln.just.rule == Rule::E1 || ln.just.rule == Rule::E2)
      refuse((int)i, "order axioms tie epsilon terms to least witnesses; they have no "
                     "epsilon-free counterpart");
    if (ln.just.rule == Rule::Exe || ln.just.rule == Rule::Gen)
      refuse((int)i, "quantifier rules must be discharged before elimination");
    if (ln.just.rule == Rule::EpsEx && !contains_eps(ln.formula))
      refuse((int)i, "vacuous choice binder in an existential-form line");
    // A vacuous critical formula is a tautology; normalize so the epsilon
    // justification does not linger after every term is gone.
    if (ln.just.rule == Rule::Eps && !contains_eps(ln.formula)) ln.just = j_taut();
  }

  struct Layer {
    FormulaPtr ex, ba;
    std::string a;
  };
  std::vector<Layer> layers;

  while (true) {
    auto terms = derivation_epsilon_terms(cur);
    if (terms.empty()) break;
    TermPtr target;
    for (auto& e : terms)
      if (!contains_eps(std::get<Eps>(e->node).body)) {
        target = e;
        break;
      }
    auto step = eliminate_one_epsilon(cur, target);
    auto* hi = std::get_if<Imp>(&step.h->node);
    if (trace)
      trace->push_back("ROUND " + std::to_string(layers.size() + 1) + ": eliminate " +
                       print(target) + " via " + step.constant + ", " +
                       std::to_string(cur.lines.size()) + " -> " +
                       std::to_string(step.out.lines.size()) + " lines");
    layers.push_back({hi->lhs, hi->rhs, step.constant});
    cur = std::move(step.out);
  }

  while (!layers.empty()) {
    Layer L = layers.back();
    layers.pop_back();
    if (trace) trace->push_back("DISCHARGE " + L.a + ": " + print(mk_imp(L.ex, L.ba)));
    FormulaPtr h = mk_imp(L.ex, L.ba);
    auto* im = std::get_if<Imp>(&cur.conclusion()->node);
    FormulaPtr psi = im->rhs;
    int n0 = (int)cur.lines.size() - 1;
    cur.add(mk_imp(L.ba, h), j_taut());
    int l1 = (int)cur.lines.size() - 1;
    cur.add(mk_imp(L.ba, psi), j_tautcons({n0, l1}));
    int l2 = (int)cur.lines.size() - 1;
    cur.add(mk_imp(L.ex, psi), j_exe(l2, L.a));
    int l3 = (int)cur.lines.size() - 1;
    cur.add(mk_imp(mk_not(L.ex), h), j_taut());
    int l4 = (int)cur.lines.size() - 1;
    cur.add(mk_imp(mk_not(L.ex), psi), j_tautcons({n0, l4}));
    int l5 = (int)cur.lines.size() - 1;
    cur.add(psi, j_tautcons({l3, l5}));
  }

  check_or_throw(cur, Profile::CP);
  if (!alpha_eq(cur.conclusion(), d.conclusion()))
    throw EliminationError("internal: elimination changed the conclusion");
  return cur;
}

FirstTheoremReport first_theorem_instance_check(const std::vector<FormulaPtr>& sigma,
                                                const FormulaPtr& goal,
                                                const std::vector<MatrixInstance>& instances,
                                                const std::vector<FormulaPtr>& equality_axioms) {
  FirstTheoremReport rep;
  std::vector<FormulaPtr> prem, goals;

  for (size_t k = 0; k < instances.size(); k++) {
    auto& inst = instances[k];
    auto err = [&](const std::string& what) {
      rep.errors.push_back("instance " + std::to_string(k + 1) + ": " + what);
    };
    if (!inst.formula) {
      err("missing formula");
      continue;
    }
    if (inst.source >= (int)sigma.size()) {
      err("source index out of range");
      continue;
    }
    const FormulaPtr& src = inst.source >= 0 ? sigma[inst.source] : goal;
    PrenexForm pf;
    try {
      pf = prenex(src);
    } catch (const std::exception& e) {
      err(std::string("source has no prenex form: ") + e.what());
      continue;
    }
    bool bad = false;
    if (inst.source < 0)
      for (auto& [q, v] : pf.prefix)
        if (q != Quant::Exists) {
          err("goal prefix is not purely existential");
          bad = true;
          break;
        }
    std::set<std::string> vars;
    for (auto& [q, v] : pf.prefix) vars.insert(v);
    for (auto& [v, t] : inst.sub) {
      if (!vars.count(v)) {
        err("substitutes unknown variable '" + v + "'");
        bad = true;
      } else if (!t || !free_vars(t).empty()) {
        err("substitution for '" + v + "' is not a closed term");
        bad = true;
      }
    }
    if (bad) continue;
    FormulaPtr expect = pf.matrix;
    for (auto& [q, v] : pf.prefix) {
      auto it = inst.sub.find(v);
      if (it == inst.sub.end()) {
        err("omits prefix variable '" + v + "'");
        bad = true;
        break;
      }
      expect = substitute(expect, v, it->second);
    }
    if (bad) continue;
    if (!alpha_eq(expect, inst.formula)) {
      err("not a matrix instance of its source (expected " + print(expect) + ", got " +
          print(inst.formula) + ")");
      continue;
    }
    (inst.source >= 0 ? prem : goals).push_back(inst.formula);
  }

  for (size_t k = 0; k < equality_axioms.size(); k++) {
    auto& f = equality_axioms[k];
    if (is_eq_reflexivity(f) || is_eq_symmetry(f) || is_eq_substitution(f))
      prem.push_back(f);
    else
      rep.errors.push_back("equality axiom " + std::to_string(k + 1) +
                           " matches no equality schema: " + print(f));
  }
  if (goals.empty()) rep.errors.push_back("no goal instances supplied");
  rep.ok = rep.errors.empty();
  if (!rep.ok) return rep;

  FormulaPtr disj = goals[0];
  for (size_t k = 1; k < goals.size(); k++) disj = mk_or(disj, goals[k]);
  std::vector<FormulaPtr> all = prem;
  all.push_back(disj);
  auto atoms = propositional_atoms(all);
  if (atoms.size() > 20) {
    rep.ok = false;
    rep.errors.push_back("entailment check exceeds the atom limit (" +
                         std::to_string(atoms.size()) + " > 20)");
    return rep;
  }
  uint64_t total = 1ull << atoms.size();
  for (uint64_t v = 0; v < total; v++) {
    rep.valuations++;
    std::map<FormulaPtr, bool, FormulaLess> val;
    for (size_t b = 0; b < atoms.size(); b++) val[atoms[b]] = (v >> b) & 1u;
    bool all_prem = true;
    for (auto& p : prem)
      if (!eval_propositional(p, val)) {
        all_prem = false;
        break;
      }
    if (!all_prem || eval_propositional(disj, val)) continue;
    std::string cv;
    for (size_t b = 0; b < atoms.size(); b++) {
      if (!cv.empty()) cv += "\n";
      cv += print(atoms[b]) + " := " + (((v >> b) & 1u) ? "true" : "false");
    }
    rep.countervaluation = cv;
    rep.entailed = false;
    return rep;
  }
  rep.entailed = true;
  return rep;
}

}  // namespace epsilon
