#include "epsilon/kernel.hpp"

#include <map>
#include <sstream>

#include "epsilon/print.hpp"

namespace epsilon {

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Premise: return "premise";
    case Rule::Taut: return "taut";
    case Rule::TautCons: return "tautcons";
    case Rule::MP: return "mp";
    case Rule::Inst: return "inst";
    case Rule::Exi: return "exi";
    case Rule::Exe: return "exe";
    case Rule::Gen: return "gen";
    case Rule::Eps: return "eps";
    case Rule::EpsEx: return "epsex";
    case Rule::Eps2: return "eps2";
    case Rule::EqRefl: return "eqrefl";
    case Rule::EqSym: return "eqsym";
    case Rule::EqSubst: return "eqsubst";
    case Rule::E1: return "e1";
    case Rule::E2: return "e2";
  }
  return "?";
}

std::string profile_name(Profile p) {
  switch (p) {
    case Profile::CP: return "CP";
    case Profile::CP_eps: return "CP_eps";
    case Profile::CP_eps_star: return "CP_eps_star";
    case Profile::CE: return "CE";
    case Profile::CPI_eps: return "CPI_eps";
  }
  return "?";
}

Justification j_premise() { return {Rule::Premise, {}, nullptr, ""}; }
Justification j_taut() { return {Rule::Taut, {}, nullptr, ""}; }
Justification j_tautcons(std::vector<int> refs) { return {Rule::TautCons, std::move(refs), nullptr, ""}; }
Justification j_mp(int i, int j) { return {Rule::MP, {i, j}, nullptr, ""}; }
Justification j_inst(TermPtr t) { return {Rule::Inst, {}, std::move(t), ""}; }
Justification j_exi(TermPtr t) { return {Rule::Exi, {}, std::move(t), ""}; }
Justification j_exe(int line, std::string c) { return {Rule::Exe, {line}, nullptr, std::move(c)}; }
Justification j_gen(int line, std::string c) { return {Rule::Gen, {line}, nullptr, std::move(c)}; }
Justification j_eps(TermPtr t) { return {Rule::Eps, {}, std::move(t), ""}; }
Justification j_epsex() { return {Rule::EpsEx, {}, nullptr, ""}; }
Justification j_eps2() { return {Rule::Eps2, {}, nullptr, ""}; }
Justification j_eqrefl() { return {Rule::EqRefl, {}, nullptr, ""}; }
Justification j_eqsym() { return {Rule::EqSym, {}, nullptr, ""}; }
Justification j_eqsubst() { return {Rule::EqSubst, {}, nullptr, ""}; }
Justification j_e1(TermPtr t) { return {Rule::E1, {}, std::move(t), ""}; }
Justification j_e2(TermPtr t) { return {Rule::E2, {}, std::move(t), ""}; }

FormulaPtr Derivation::conclusion() const {
  if (lines.empty()) throw KernelError("empty derivation has no conclusion");
  return lines.back().formula;
}

void Derivation::add(FormulaPtr f, Justification j, std::string label) {
  lines.push_back({std::move(f), std::move(j), std::move(label)});
}

// ---- truth-table procedures ----

namespace {

using AtomMap = std::map<FormulaPtr, int, FormulaLess>;

void collect_atoms(const FormulaPtr& f, AtomMap& atoms) {
  if (std::get_if<Pred>(&f->node) || std::get_if<Eq>(&f->node) ||
      std::get_if<Forall>(&f->node) || std::get_if<Exists>(&f->node)) {
    atoms.try_emplace(f, (int)atoms.size());
    return;
  }
  if (auto* n = std::get_if<Not>(&f->node)) return collect_atoms(n->sub, atoms);
  if (auto* a = std::get_if<And>(&f->node)) {
    collect_atoms(a->lhs, atoms);
    collect_atoms(a->rhs, atoms);
    return;
  }
  if (auto* o = std::get_if<Or>(&f->node)) {
    collect_atoms(o->lhs, atoms);
    collect_atoms(o->rhs, atoms);
    return;
  }
  if (auto* i = std::get_if<Imp>(&f->node)) {
    collect_atoms(i->lhs, atoms);
    collect_atoms(i->rhs, atoms);
    return;
  }
  // Truth / Falsity carry no atoms
}

bool eval_prop(const FormulaPtr& f, const AtomMap& atoms, uint32_t val) {
  if (std::get_if<Pred>(&f->node) || std::get_if<Eq>(&f->node) ||
      std::get_if<Forall>(&f->node) || std::get_if<Exists>(&f->node))
    return (val >> atoms.at(f)) & 1u;
  if (std::get_if<Truth>(&f->node)) return true;
  if (std::get_if<Falsity>(&f->node)) return false;
  if (auto* n = std::get_if<Not>(&f->node)) return !eval_prop(n->sub, atoms, val);
  if (auto* a = std::get_if<And>(&f->node))
    return eval_prop(a->lhs, atoms, val) && eval_prop(a->rhs, atoms, val);
  if (auto* o = std::get_if<Or>(&f->node))
    return eval_prop(o->lhs, atoms, val) || eval_prop(o->rhs, atoms, val);
  auto* i = std::get_if<Imp>(&f->node);
  return !eval_prop(i->lhs, atoms, val) || eval_prop(i->rhs, atoms, val);
}

void guard_atom_count(const AtomMap& atoms, int max_atoms) {
  if ((int)atoms.size() > max_atoms)
    throw KernelError("truth-table check exceeds the atom limit (" +
                      std::to_string(atoms.size()) + " > " + std::to_string(max_atoms) + ")");
}

}  // namespace

bool is_tautology(const FormulaPtr& f, int max_atoms) {
  AtomMap atoms;
  collect_atoms(f, atoms);
  guard_atom_count(atoms, max_atoms);
  uint64_t total = 1ull << atoms.size();
  for (uint64_t v = 0; v < total; v++)
    if (!eval_prop(f, atoms, (uint32_t)v)) return false;
  return true;
}

bool tautological_consequence(const std::vector<FormulaPtr>& premises, const FormulaPtr& f,
                              int max_atoms) {
  AtomMap atoms;
  for (auto& p : premises) collect_atoms(p, atoms);
  collect_atoms(f, atoms);
  guard_atom_count(atoms, max_atoms);
  uint64_t total = 1ull << atoms.size();
  for (uint64_t v = 0; v < total; v++) {
    bool all = true;
    for (auto& p : premises)
      if (!eval_prop(p, atoms, (uint32_t)v)) {
        all = false;
        break;
      }
    if (all && !eval_prop(f, atoms, (uint32_t)v)) return false;
  }
  return true;
}

std::vector<FormulaPtr> propositional_atoms(const std::vector<FormulaPtr>& fs) {
  AtomMap atoms;
  for (auto& f : fs) collect_atoms(f, atoms);
  std::vector<FormulaPtr> out(atoms.size());
  for (auto& [f, idx] : atoms) out[idx] = f;
  return out;
}

bool eval_propositional(const FormulaPtr& f,
                        const std::map<FormulaPtr, bool, FormulaLess>& valuation) {
  if (std::get_if<Pred>(&f->node) || std::get_if<Eq>(&f->node) ||
      std::get_if<Forall>(&f->node) || std::get_if<Exists>(&f->node)) {
    auto it = valuation.find(f);
    if (it == valuation.end()) throw KernelError("no valuation for atom: " + print(f));
    return it->second;
  }
  if (std::get_if<Truth>(&f->node)) return true;
  if (std::get_if<Falsity>(&f->node)) return false;
  if (auto* n = std::get_if<Not>(&f->node)) return !eval_propositional(n->sub, valuation);
  if (auto* a = std::get_if<And>(&f->node))
    return eval_propositional(a->lhs, valuation) && eval_propositional(a->rhs, valuation);
  if (auto* o = std::get_if<Or>(&f->node))
    return eval_propositional(o->lhs, valuation) || eval_propositional(o->rhs, valuation);
  auto* i = std::get_if<Imp>(&f->node);
  return !eval_propositional(i->lhs, valuation) || eval_propositional(i->rhs, valuation);
}

// ---- schema matchers ----

namespace {

bool closed_term_at(const TermPtr& t, int depth);

bool closed_formula_at(const FormulaPtr& f, int depth) {
  if (auto* p = std::get_if<Pred>(&f->node)) {
    for (auto& a : p->args)
      if (!closed_term_at(a, depth)) return false;
    return true;
  }
  if (auto* e = std::get_if<Eq>(&f->node))
    return closed_term_at(e->lhs, depth) && closed_term_at(e->rhs, depth);
  if (std::get_if<Truth>(&f->node) || std::get_if<Falsity>(&f->node)) return true;
  if (auto* n = std::get_if<Not>(&f->node)) return closed_formula_at(n->sub, depth);
  if (auto* a = std::get_if<And>(&f->node))
    return closed_formula_at(a->lhs, depth) && closed_formula_at(a->rhs, depth);
  if (auto* o = std::get_if<Or>(&f->node))
    return closed_formula_at(o->lhs, depth) && closed_formula_at(o->rhs, depth);
  if (auto* i = std::get_if<Imp>(&f->node))
    return closed_formula_at(i->lhs, depth) && closed_formula_at(i->rhs, depth);
  if (auto* fa = std::get_if<Forall>(&f->node)) return closed_formula_at(fa->body, depth + 1);
  return closed_formula_at(std::get<Exists>(f->node).body, depth + 1);
}

bool closed_term_at(const TermPtr& t, int depth) {
  if (auto* b = std::get_if<Bound>(&t->node)) return b->index < depth;
  if (std::get_if<Free>(&t->node)) return false;
  if (auto* a = std::get_if<App>(&t->node)) {
    for (auto& x : a->args)
      if (!closed_term_at(x, depth)) return false;
    return true;
  }
  return closed_formula_at(std::get<Eps>(t->node).body, depth + 1);
}

bool closed_term(const TermPtr& t) { return closed_term_at(t, 0); }

// Match eps_side as B[x := eps x B] and wit_side as B[x := w]; return the
// epsilon term on success.  Candidates are the closed epsilon subterms of
// both sides, plus (for a vacuous binder) the epsilon term built from
// eps_side itself.
TermPtr find_critical(const FormulaPtr& eps_side, const FormulaPtr& wit_side, const TermPtr& w) {
  if (!w || !closed_term(w)) return nullptr;
  std::vector<TermPtr> pool = epsilon_subterms(eps_side);
  for (auto& e : epsilon_subterms(wit_side)) pool.push_back(e);
  pool.push_back(mk_eps_raw(eps_side, "x"));
  for (auto& e : pool) {
    if (!closed_term(e)) continue;
    auto& body = std::get<Eps>(e->node).body;
    if (alpha_eq(eps_side, open_binder(body, e)) && alpha_eq(wit_side, open_binder(body, w)))
      return e;
  }
  return nullptr;
}

const Imp* as_imp(const FormulaPtr& f) { return std::get_if<Imp>(&f->node); }

}  // namespace

TermPtr match_critical_instance(const FormulaPtr& eps_side, const FormulaPtr& wit_side,
                                const TermPtr& witness) {
  return find_critical(eps_side, wit_side, witness);
}

bool rewrites_to(const FormulaPtr& F, const FormulaPtr& G, const TermPtr& t, const TermPtr& u) {
  auto term_rw = [&](const TermPtr& a, const TermPtr& b, auto&& tself, auto&& fself) -> bool {
    if (alpha_eq(a, t) && alpha_eq(b, u)) return true;
    if (a->node.index() != b->node.index()) return false;
    if (auto* x = std::get_if<Bound>(&a->node)) return x->index == std::get<Bound>(b->node).index;
    if (auto* x = std::get_if<Free>(&a->node)) return x->name == std::get<Free>(b->node).name;
    if (auto* x = std::get_if<App>(&a->node)) {
      auto& y = std::get<App>(b->node);
      if (x->fn != y.fn || x->args.size() != y.args.size()) return false;
      for (size_t i = 0; i < x->args.size(); i++)
        if (!tself(x->args[i], y.args[i], tself, fself)) return false;
      return true;
    }
    return fself(std::get<Eps>(a->node).body, std::get<Eps>(b->node).body, tself, fself);
  };
  auto form_rw = [&](const FormulaPtr& a, const FormulaPtr& b, auto&& tself, auto&& fself) -> bool {
    if (a->node.index() != b->node.index()) return false;
    if (auto* x = std::get_if<Pred>(&a->node)) {
      auto& y = std::get<Pred>(b->node);
      if (x->name != y.name || x->args.size() != y.args.size()) return false;
      for (size_t i = 0; i < x->args.size(); i++)
        if (!tself(x->args[i], y.args[i], tself, fself)) return false;
      return true;
    }
    if (auto* x = std::get_if<Eq>(&a->node)) {
      auto& y = std::get<Eq>(b->node);
      return tself(x->lhs, y.lhs, tself, fself) && tself(x->rhs, y.rhs, tself, fself);
    }
    if (std::get_if<Truth>(&a->node) || std::get_if<Falsity>(&a->node)) return true;
    if (auto* x = std::get_if<Not>(&a->node))
      return fself(x->sub, std::get<Not>(b->node).sub, tself, fself);
    if (auto* x = std::get_if<And>(&a->node)) {
      auto& y = std::get<And>(b->node);
      return fself(x->lhs, y.lhs, tself, fself) && fself(x->rhs, y.rhs, tself, fself);
    }
    if (auto* x = std::get_if<Or>(&a->node)) {
      auto& y = std::get<Or>(b->node);
      return fself(x->lhs, y.lhs, tself, fself) && fself(x->rhs, y.rhs, tself, fself);
    }
    if (auto* x = std::get_if<Imp>(&a->node)) {
      auto& y = std::get<Imp>(b->node);
      return fself(x->lhs, y.lhs, tself, fself) && fself(x->rhs, y.rhs, tself, fself);
    }
    if (auto* x = std::get_if<Forall>(&a->node))
      return fself(x->body, std::get<Forall>(b->node).body, tself, fself);
    return fself(std::get<Exists>(a->node).body, std::get<Exists>(b->node).body, tself, fself);
  };
  return form_rw(F, G, term_rw, form_rw);
}

bool is_eq_reflexivity(const FormulaPtr& f) {
  auto* e = std::get_if<Eq>(&f->node);
  return e && alpha_eq(e->lhs, e->rhs);
}

bool is_eq_symmetry(const FormulaPtr& f) {
  auto* i = as_imp(f);
  if (!i) return false;
  auto* l = std::get_if<Eq>(&i->lhs->node);
  auto* r = std::get_if<Eq>(&i->rhs->node);
  return l && r && alpha_eq(l->lhs, r->rhs) && alpha_eq(l->rhs, r->lhs);
}

bool is_eq_substitution(const FormulaPtr& f) {
  auto* i = as_imp(f);
  if (!i) return false;
  auto* e = std::get_if<Eq>(&i->lhs->node);
  auto* body = as_imp(i->rhs);
  if (!e || !body) return false;
  return rewrites_to(body->lhs, body->rhs, e->lhs, e->rhs);
}

// ---- line checking ----

namespace {

bool admits(Profile p, Rule r) {
  switch (r) {
    case Rule::Premise:
    case Rule::Taut:
    case Rule::TautCons:
    case Rule::MP:
    case Rule::EqRefl:
    case Rule::EqSym:
    case Rule::EqSubst: return p != Profile::CPI_eps;
    case Rule::Inst:
    case Rule::Exi:
    case Rule::Exe:
    case Rule::Gen:
      return p == Profile::CP || p == Profile::CP_eps || p == Profile::CP_eps_star;
    case Rule::Eps:
    case Rule::EpsEx:
    case Rule::E1:
    case Rule::E2: return p == Profile::CP_eps || p == Profile::CP_eps_star;
    case Rule::Eps2: return p == Profile::CP_eps;
  }
  return false;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw KernelError("line " + std::to_string(line + 1) + ": " + what);
}

void check_eigenconstant(const Derivation& d, int i, const std::string& c) {
  auto& f = d.lines[i].formula;
  if (c.empty()) fail(i, "missing eigenconstant");
  if (is_numeral(c)) fail(i, "eigenconstant '" + c + "' may not be a numeral");
  if (auto ar = d.sig.fun_arity(c); ar && *ar != 0)
    fail(i, "eigenconstant '" + c + "' is declared with arity " + std::to_string(*ar));
  if (function_symbols(f).count(c))
    fail(i, "eigenconstant '" + c + "' occurs in the inferred formula");
  for (size_t k = 0; k < d.lines.size(); k++)
    if (d.lines[k].just.rule == Rule::Premise && function_symbols(d.lines[k].formula).count(c))
      fail(i, "eigenconstant '" + c + "' occurs in the premise on line " + std::to_string(k + 1));
}

void check_line(const Derivation& d, int i, Profile p) {
  auto& ln = d.lines[i];
  auto& f = ln.formula;
  auto& j = ln.just;
  if (!f) fail(i, "missing formula");
  if (!closed_formula_at(f, 0)) fail(i, "formula is not a closed sentence: " + print(f));
  if (!admits(p, j.rule))
    fail(i, "rule '" + rule_name(j.rule) + "' is not admitted by profile " + profile_name(p));
  if (p == Profile::CP && contains_eps(f))
    fail(i, "profile CP forbids epsilon terms: " + print(f));
  if (p == Profile::CE && contains_quantifier(f))
    fail(i, "profile CE forbids quantifiers: " + print(f));
  if (p == Profile::CP_eps_star && !is_proper(f))
    fail(i, "profile CP_eps_star requires proper formulas (no epsilon scope may capture an outer "
            "bound variable): " +
            print(f));
  for (int r : j.refs)
    if (r < 0 || r >= i)
      fail(i, "reference " + std::to_string(r + 1) + " is not an earlier line");

  auto want_refs = [&](size_t n) {
    if (j.refs.size() != n)
      fail(i, "rule '" + rule_name(j.rule) + "' takes " + std::to_string(n) + " reference(s)");
  };
  auto want_witness = [&]() {
    if (!j.t) fail(i, "rule '" + rule_name(j.rule) + "' needs a witness term");
    if (!closed_term(j.t)) fail(i, "witness term is not closed: " + print(j.t));
  };

  switch (j.rule) {
    case Rule::Premise: want_refs(0); return;

    case Rule::Taut:
      want_refs(0);
      if (!is_tautology(f)) fail(i, "not a propositional tautology: " + print(f));
      return;

    case Rule::TautCons: {
      std::vector<FormulaPtr> prem;
      for (int r : j.refs) prem.push_back(d.lines[r].formula);
      if (!tautological_consequence(prem, f))
        fail(i, "not a tautological consequence of the referenced lines: " + print(f));
      return;
    }

    case Rule::MP: {
      want_refs(2);
      auto& imp = d.lines[j.refs[0]].formula;
      auto& ante = d.lines[j.refs[1]].formula;
      if (!alpha_eq(imp, mk_imp(ante, f)))
        fail(i, "line " + std::to_string(j.refs[0] + 1) + " is not '" +
                print(mk_imp(ante, f)) + "'");
      return;
    }

    case Rule::Inst: {
      want_refs(0);
      want_witness();
      auto* imp = as_imp(f);
      const Forall* fa = imp ? std::get_if<Forall>(&imp->lhs->node) : nullptr;
      if (!fa || !alpha_eq(imp->rhs, open_binder(fa->body, j.t)))
        fail(i, "not an instance of (forall x F) -> F(t) with t = " + print(j.t));
      return;
    }

    case Rule::Exi: {
      want_refs(0);
      want_witness();
      auto* imp = as_imp(f);
      const Exists* ex = imp ? std::get_if<Exists>(&imp->rhs->node) : nullptr;
      if (!ex || !alpha_eq(imp->lhs, open_binder(ex->body, j.t)))
        fail(i, "not an instance of F(t) -> (exists x F) with t = " + print(j.t));
      return;
    }

    case Rule::Exe: {
      want_refs(1);
      auto* imp = as_imp(f);
      const Exists* ex = imp ? std::get_if<Exists>(&imp->lhs->node) : nullptr;
      auto* prev = as_imp(d.lines[j.refs[0]].formula);
      if (!ex || !prev) fail(i, "exe expects F(a) -> C on the referenced line and (exists x F) -> C here");
      if (!alpha_eq(prev->rhs, imp->rhs)) fail(i, "exe changed the consequent");
      if (!alpha_eq(prev->lhs, open_binder(ex->body, mk_const(j.c))))
        fail(i, "referenced line is not '" + print(mk_imp(open_binder(ex->body, mk_const(j.c)), imp->rhs)) + "'");
      check_eigenconstant(d, i, j.c);
      return;
    }

    case Rule::Gen: {
      want_refs(1);
      auto* imp = as_imp(f);
      const Forall* fa = imp ? std::get_if<Forall>(&imp->rhs->node) : nullptr;
      auto* prev = as_imp(d.lines[j.refs[0]].formula);
      if (!fa || !prev) fail(i, "gen expects C -> F(a) on the referenced line and C -> (forall x F) here");
      if (!alpha_eq(prev->lhs, imp->lhs)) fail(i, "gen changed the antecedent");
      if (!alpha_eq(prev->rhs, open_binder(fa->body, mk_const(j.c))))
        fail(i, "referenced line is not '" + print(mk_imp(imp->lhs, open_binder(fa->body, mk_const(j.c)))) + "'");
      check_eigenconstant(d, i, j.c);
      return;
    }

    case Rule::Eps: {
      want_refs(0);
      want_witness();
      auto* imp = as_imp(f);
      if (!imp || !find_critical(imp->rhs, imp->lhs, j.t))
        fail(i, "not a critical formula F(t) -> F(eps x F) with t = " + (j.t ? print(j.t) : "?"));
      return;
    }

    case Rule::EpsEx: {
      want_refs(0);
      auto* imp = as_imp(f);
      const Exists* ex = imp ? std::get_if<Exists>(&imp->lhs->node) : nullptr;
      if (!ex) fail(i, "not of the form (exists x F) -> F(eps x F)");
      auto e = mk_eps_raw(ex->body, ex->hint.empty() ? "x" : ex->hint);
      if (!closed_term(e) || !alpha_eq(imp->rhs, open_binder(ex->body, e)))
        fail(i, "not of the form (exists x F) -> F(eps x F)");
      return;
    }

    case Rule::Eps2: {
      want_refs(0);
      auto* imp = as_imp(f);
      const Forall* fa = imp ? std::get_if<Forall>(&imp->lhs->node) : nullptr;
      const Eq* eq = imp ? std::get_if<Eq>(&imp->rhs->node) : nullptr;
      if (!fa || !eq) fail(i, "not of the form (forall x (F <-> G)) -> eps x F = eps x G");
      auto* le = std::get_if<Eps>(&eq->lhs->node);
      auto* re = std::get_if<Eps>(&eq->rhs->node);
      if (!le || !re ||
          !alpha_eq(fa->body, mk_and(mk_imp(le->body, re->body), mk_imp(re->body, le->body))))
        fail(i, "not of the form (forall x (F <-> G)) -> eps x F = eps x G");
      return;
    }

    case Rule::EqRefl:
      want_refs(0);
      if (!is_eq_reflexivity(f)) fail(i, "not of the form t = t");
      return;

    case Rule::EqSym:
      want_refs(0);
      if (!is_eq_symmetry(f)) fail(i, "not of the form t = u -> u = t");
      return;

    case Rule::EqSubst:
      want_refs(0);
      if (!is_eq_substitution(f))
        fail(i, "not of the form t = u -> (F -> G) with G rewriting occurrences of t to u");
      return;

    case Rule::E1: {
      want_refs(0);
      want_witness();
      auto* imp = as_imp(f);
      const Not* l = imp ? std::get_if<Not>(&imp->lhs->node) : nullptr;
      const Not* r = imp ? std::get_if<Not>(&imp->rhs->node) : nullptr;
      if (!l || !r || !find_critical(l->sub, r->sub, j.t))
        fail(i, "not an instance of not A(eps x A) -> not A(t) with t = " + (j.t ? print(j.t) : "?"));
      return;
    }

    case Rule::E2: {
      want_refs(0);
      want_witness();
      auto* imp = as_imp(f);
      const Eq* eq = imp ? std::get_if<Eq>(&imp->lhs->node) : nullptr;
      const Not* r = imp ? std::get_if<Not>(&imp->rhs->node) : nullptr;
      const Eps* le = eq ? std::get_if<Eps>(&eq->lhs->node) : nullptr;
      if (!le || !r || !closed_term(eq->lhs) ||
          !alpha_eq(eq->rhs, mk_app("+", {j.t, mk_numeral(1)})) ||
          !alpha_eq(r->sub, open_binder(le->body, j.t)))
        fail(i, "not an instance of eps x A = t + 1 -> not A(t) with t = " + (j.t ? print(j.t) : "?"));
      return;
    }
  }
  fail(i, "unknown rule");
}

}  // namespace

CheckReport check(const Derivation& d, Profile p) {
  CheckReport rep;
  if (p == Profile::CPI_eps) {
    rep.message =
        "profile CPI_eps is not mechanically checkable here: taut/tautcons justifications decide "
        "formulas by classical truth tables, which are unsound for intuitionistic derivability; "
        "use the Kripke and topological tools to study CPI_eps validity instead";
    return rep;
  }
  if (d.lines.empty()) {
    rep.message = "empty derivation";
    return rep;
  }
  for (size_t i = 0; i < d.lines.size(); i++) {
    try {
      check_line(d, (int)i, p);
    } catch (const KernelError& e) {
      rep.bad_line = (int)i;
      rep.message = e.what();
      return rep;
    }
    rep.checked++;
  }
  rep.ok = true;
  return rep;
}

void check_or_throw(const Derivation& d, Profile p) {
  auto rep = check(d, p);
  if (!rep.ok) throw KernelError(rep.message);
}

std::vector<CriticalFormula> critical_formulas(const Derivation& d) {
  std::vector<CriticalFormula> out;
  for (size_t i = 0; i < d.lines.size(); i++) {
    auto& ln = d.lines[i];
    if (ln.just.rule != Rule::Eps) continue;
    auto* imp = as_imp(ln.formula);
    if (!imp || !ln.just.t) continue;
    auto e = find_critical(imp->rhs, imp->lhs, ln.just.t);
    if (e) out.push_back({ln.formula, e, ln.just.t, (int)i});
  }
  return out;
}

}  // namespace epsilon
