#include "epsilon/hsubst.hpp"

#include <algorithm>

#include "epsilon/print.hpp"

namespace epsilon {

namespace {

bool closed_term_here(const TermPtr& t, int depth);

bool closed_formula_here(const FormulaPtr& f, int depth) {
  if (auto* p = std::get_if<Pred>(&f->node)) {
    for (auto& a : p->args)
      if (!closed_term_here(a, depth)) return false;
    return true;
  }
  if (auto* e = std::get_if<Eq>(&f->node))
    return closed_term_here(e->lhs, depth) && closed_term_here(e->rhs, depth);
  if (std::get_if<Truth>(&f->node) || std::get_if<Falsity>(&f->node)) return true;
  if (auto* n = std::get_if<Not>(&f->node)) return closed_formula_here(n->sub, depth);
  if (auto* a = std::get_if<And>(&f->node))
    return closed_formula_here(a->lhs, depth) && closed_formula_here(a->rhs, depth);
  if (auto* o = std::get_if<Or>(&f->node))
    return closed_formula_here(o->lhs, depth) && closed_formula_here(o->rhs, depth);
  if (auto* i = std::get_if<Imp>(&f->node))
    return closed_formula_here(i->lhs, depth) && closed_formula_here(i->rhs, depth);
  if (auto* fa = std::get_if<Forall>(&f->node)) return closed_formula_here(fa->body, depth + 1);
  return closed_formula_here(std::get<Exists>(f->node).body, depth + 1);
}

bool closed_term_here(const TermPtr& t, int depth) {
  if (auto* b = std::get_if<Bound>(&t->node)) return b->index < depth;
  if (std::get_if<Free>(&t->node)) return false;
  if (auto* a = std::get_if<App>(&t->node)) {
    for (auto& x : a->args)
      if (!closed_term_here(x, depth)) return false;
    return true;
  }
  return closed_formula_here(std::get<Eps>(t->node).body, depth + 1);
}

}  // namespace

uint64_t LeastNumberEval::term(const TermPtr& t) {
  if (auto* b = std::get_if<Bound>(&t->node)) {
    if (b->index >= (int)stack_.size()) throw HsubstError("loose bound index in term");
    return stack_[stack_.size() - 1 - b->index];
  }
  if (auto* fr = std::get_if<Free>(&t->node))
    throw HsubstError("unbound variable: " + fr->name);
  if (auto* a = std::get_if<App>(&t->node)) {
    if (is_numeral(a->fn)) return std::stoull(a->fn);
    if (a->fn == "+" && a->args.size() == 2) return term(a->args[0]) + term(a->args[1]);
    if (a->fn == "*" && a->args.size() == 2) return term(a->args[0]) * term(a->args[1]);
    if (a->fn == "pd" && a->args.size() == 1) {
      uint64_t v = term(a->args[0]);
      return v == 0 ? 0 : v - 1;
    }
    throw HsubstError("uninterpreted function symbol: " + a->fn);
  }
  auto* e = std::get_if<Eps>(&t->node);
  if (assignment && closed_term_here(t, 0)) {
    auto it = assignment->find(t);
    if (it != assignment->end()) return it->second;
  }
  for (uint64_t n = 0; n < cap; n++) {
    stack_.push_back(n);
    bool hit = formula(e->body);
    stack_.pop_back();
    if (hit) return n;
  }
  if (closed_term_here(t, 0)) defaulted.insert(print(t));
  return 0;
}

bool LeastNumberEval::formula(const FormulaPtr& f) {
  if (auto* p = std::get_if<Pred>(&f->node)) {
    if (p->name == "<" && p->args.size() == 2) return term(p->args[0]) < term(p->args[1]);
    if (p->name == "<=" && p->args.size() == 2) return term(p->args[0]) <= term(p->args[1]);
    throw HsubstError("uninterpreted predicate symbol: " + p->name);
  }
  if (auto* e = std::get_if<Eq>(&f->node)) return term(e->lhs) == term(e->rhs);
  if (std::get_if<Truth>(&f->node)) return true;
  if (std::get_if<Falsity>(&f->node)) return false;
  if (auto* n = std::get_if<Not>(&f->node)) return !formula(n->sub);
  if (auto* a = std::get_if<And>(&f->node)) return formula(a->lhs) && formula(a->rhs);
  if (auto* o = std::get_if<Or>(&f->node)) return formula(o->lhs) || formula(o->rhs);
  if (auto* i = std::get_if<Imp>(&f->node)) return !formula(i->lhs) || formula(i->rhs);
  if (auto* fa = std::get_if<Forall>(&f->node)) {
    for (uint64_t n = 0; n < cap; n++) {
      stack_.push_back(n);
      bool hit = formula(fa->body);
      stack_.pop_back();
      if (!hit) return false;
    }
    return true;
  }
  auto* ex = std::get_if<Exists>(&f->node);
  for (uint64_t n = 0; n < cap; n++) {
    stack_.push_back(n);
    bool hit = formula(ex->body);
    stack_.pop_back();
    if (hit) return true;
  }
  return false;
}

OrderAxiomReport check_order_axioms(const FormulaPtr& f, const std::string& var, uint64_t cap) {
  OrderAxiomReport rep;
  TermPtr e = mk_eps(var, f);
  LeastNumberEval ev{cap};
  rep.eps_value = ev.term(e);
  rep.defaulted = !ev.defaulted.empty();
  LeastNumberEval base{cap};
  bool f_at_eps = base.formula(substitute(f, var, mk_numeral(rep.eps_value)));
  for (uint64_t t = 0; t < cap; t++) {
    LeastNumberEval step{cap};
    bool f_at_t = step.formula(substitute(f, var, mk_numeral(t)));
    rep.checks++;
    if (!f_at_eps && f_at_t)
      rep.violations.push_back("not F(eps) held but F(" + std::to_string(t) + ") is true");
    rep.checks++;
    if (rep.eps_value == t + 1 && f_at_t)
      rep.violations.push_back("eps = " + std::to_string(t) + " + 1 but F(" + std::to_string(t) +
                               ") is true");
    rep.checks++;
    if (f_at_t && rep.eps_value > t)
      rep.violations.push_back("F(" + std::to_string(t) + ") holds but eps = " +
                               std::to_string(rep.eps_value) + " is larger (minimality)");
  }
  return rep;
}

std::string show_assignment(const EpsAssignment& s) {
  std::string out;
  for (auto& [t, v] : s) {
    if (!out.empty()) out += ", ";
    out += print(t) + " := " + std::to_string(v);
  }
  return "{" + out + "}";
}

SolveResult hsubst_solve(const std::vector<CriticalFormula>& criticals, uint64_t cap,
                         long long max_iter) {
  SolveResult res;
  if (cap == 0) throw HsubstError("evaluation bound must be positive");

  EpsAssignment& s = res.assignment;
  for (auto& cf : criticals) {
    if (!cf.formula || !cf.eps_term || !cf.witness)
      throw HsubstError("critical formula entry is incomplete");
    if (!closed_formula_here(cf.formula, 0))
      throw HsubstError("critical formula is not closed: " + print(cf.formula));
    std::vector<TermPtr> pool = epsilon_subterms(cf.formula);
    pool.push_back(cf.eps_term);
    for (auto& e : epsilon_subterms(cf.witness)) pool.push_back(e);
    for (auto& e : pool) {
      if (!closed_term_here(e, 0))
        throw HsubstError("open epsilon term in critical formula: " + print(cf.formula));
      if (epsilon_rank(e) > 2)
        throw HsubstError("epsilon nesting deeper than 2 is out of scope: " + print(e));
      s.emplace(e, 0);
    }
  }

  if (max_iter <= 0) max_iter = 10 * (long long)cap * std::max<long long>(1, (long long)s.size());

  while (true) {
    int falsified = -1;
    {
      LeastNumberEval ev{cap, &s};
      for (size_t i = 0; i < criticals.size(); i++)
        if (!ev.formula(criticals[i].formula)) {
          falsified = (int)i;
          break;
        }
    }
    if (falsified < 0) {
      res.resolved = true;
      break;
    }
    if (res.iterations >= max_iter) {
      res.notes.push_back("iteration budget exhausted before resolution");
      break;
    }

    auto& cf = criticals[falsified];
    const auto& body = std::get<Eps>(cf.eps_term->node).body;
    LeastNumberEval ev{cap, &s};
    uint64_t bound = std::min<uint64_t>(ev.term(cf.witness), cap - 1);
    uint64_t repaired = 0;
    bool found = false;
    for (uint64_t n = 0; n <= bound && !found; n++) {
      LeastNumberEval probe{cap, &s};
      if (probe.formula(open_binder(body, mk_numeral(n)))) {
        repaired = n;
        found = true;
      }
    }
    if (!found) {
      res.notes.push_back("no witness below the bound repairs critical formula " +
                          std::to_string(falsified + 1));
      break;
    }
    uint64_t old = s.at(cf.eps_term);
    if (repaired == old) {
      res.notes.push_back("repair left the assignment unchanged (internal inconsistency)");
      break;
    }
    res.history.push_back({cf.eps_term, old, repaired, falsified, "repair"});
    s[cf.eps_term] = repaired;
    res.iterations++;

    for (auto& [other, val] : s) {
      if (alpha_eq(other, cf.eps_term) || val == 0) continue;
      bool depends = false;
      for (auto& sub : epsilon_subterms(std::get<Eps>(other->node).body))
        if (alpha_eq(sub, cf.eps_term)) depends = true;
      if (depends) {
        res.history.push_back({other, val, 0, falsified, "reset"});
        val = 0;
      }
    }
  }
  return res;
}

}  // namespace epsilon
