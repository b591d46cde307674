#include "epsilon/transform.hpp"

#include <algorithm>

#include "epsilon/print.hpp"

namespace epsilon {

namespace {

void emit(Trace* trace, const char* rule, const FormulaPtr& before, const FormulaPtr& after) {
  if (trace) trace->push_back({rule, print(before), print(after)});
}

}  // namespace

FormulaPtr existential_to_epsilon(const FormulaPtr& f, Trace* trace) {
  auto* ex = std::get_if<Exists>(&f->node);
  if (!ex) throw TransformError("existential_to_epsilon: not an existential formula");
  TermPtr eps = mk_eps_raw(ex->body, ex->hint);
  FormulaPtr out = open_binder(ex->body, eps);
  emit(trace, "exists-to-eps", f, out);
  return out;
}

FormulaPtr universal_to_epsilon(const FormulaPtr& f, Mode mode, Trace* trace) {
  auto* fa = std::get_if<Forall>(&f->node);
  if (!fa) throw TransformError("universal_to_epsilon: not a universal formula");
  if (mode == Mode::Intuitionistic)
    throw TransformError(
        "universal_to_epsilon: refused in intuitionistic mode; the rule "
        "forall x. F(x) <=> F(eps x. not F(x)) rests on the Markov principle "
        "(forall x. not not F(x) -> F(x)) -> (not forall x. F(x) -> exists x. not F(x)), "
        "which is not intuitionistically valid");
  TermPtr tau = mk_eps_raw(mk_not(fa->body), fa->hint);
  FormulaPtr out = open_binder(fa->body, tau);
  emit(trace, "forall-to-eps", f, out);
  return out;
}

namespace {

struct FreshNames {
  std::set<std::string> taken;

  std::string fresh(const std::string& hint) {
    std::string name = hint.empty() ? "x" : hint;
    while (taken.count(name)) name += '\'';
    taken.insert(name);
    return name;
  }
};

// The translation works on named openings so intermediate steps print
// naturally (the two-step trace shows the outer variable still free while
// the inner quantifier is rewritten).
TermPtr translate_t(const TermPtr& t, Mode mode, Trace* trace, FreshNames& names);

FormulaPtr translate_f(const FormulaPtr& f, Mode mode, Trace* trace, FreshNames& names) {
  if (auto* p = std::get_if<Pred>(&f->node)) {
    std::vector<TermPtr> args;
    for (auto& a : p->args) args.push_back(translate_t(a, mode, trace, names));
    return mk_pred(p->name, std::move(args));
  }
  if (auto* e = std::get_if<Eq>(&f->node))
    return mk_eq(translate_t(e->lhs, mode, trace, names), translate_t(e->rhs, mode, trace, names));
  if (std::get_if<Truth>(&f->node) || std::get_if<Falsity>(&f->node)) return f;
  if (auto* n = std::get_if<Not>(&f->node)) return mk_not(translate_f(n->sub, mode, trace, names));
  if (auto* a = std::get_if<And>(&f->node))
    return mk_and(translate_f(a->lhs, mode, trace, names),
                  translate_f(a->rhs, mode, trace, names));
  if (auto* o = std::get_if<Or>(&f->node))
    return mk_or(translate_f(o->lhs, mode, trace, names), translate_f(o->rhs, mode, trace, names));
  if (auto* i = std::get_if<Imp>(&f->node))
    return mk_imp(translate_f(i->lhs, mode, trace, names),
                  translate_f(i->rhs, mode, trace, names));
  if (auto* fa = std::get_if<Forall>(&f->node)) {
    std::string v = names.fresh(fa->hint);
    FormulaPtr body = translate_f(open_binder(fa->body, mk_free(v)), mode, trace, names);
    return universal_to_epsilon(mk_forall(v, body), mode, trace);
  }
  auto& ex = std::get<Exists>(f->node);
  std::string v = names.fresh(ex.hint);
  FormulaPtr body = translate_f(open_binder(ex.body, mk_free(v)), mode, trace, names);
  return existential_to_epsilon(mk_exists(v, body), trace);
}

TermPtr translate_t(const TermPtr& t, Mode mode, Trace* trace, FreshNames& names) {
  if (auto* a = std::get_if<App>(&t->node)) {
    std::vector<TermPtr> args;
    for (auto& x : a->args) args.push_back(translate_t(x, mode, trace, names));
    return mk_app(a->fn, std::move(args));
  }
  if (auto* e = std::get_if<Eps>(&t->node)) {
    std::string v = names.fresh(e->hint);
    FormulaPtr body = translate_f(open_binder(e->body, mk_free(v)), mode, trace, names);
    return mk_eps(v, body);
  }
  return t;
}

}  // namespace

FormulaPtr epsilon_translate(const FormulaPtr& f, Mode mode, Trace* trace) {
  FreshNames names;
  for (auto& v : free_vars(f)) names.taken.insert(v);
  for (auto& s : function_symbols(f)) names.taken.insert(s);
  for (auto& s : predicate_symbols(f)) names.taken.insert(s);
  FormulaPtr out = translate_f(f, mode, trace, names);
  if (contains_quantifier(out))
    throw TransformError("epsilon_translate: residual quantifier after translation");
  return out;
}

// ---- prenexing ----

FormulaPtr PrenexForm::attach() const {
  FormulaPtr f = matrix;
  for (auto it = prefix.rbegin(); it != prefix.rend(); ++it)
    f = it->first == Quant::Forall ? mk_forall(it->second, f) : mk_exists(it->second, f);
  return f;
}

namespace {

struct NameAllocator {
  std::set<std::string> taken;

  std::string fresh(const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    std::string name = base;
    while (taken.count(name)) name += '\'';
    taken.insert(name);
    return name;
  }
};

Quant flip(Quant q) { return q == Quant::Forall ? Quant::Exists : Quant::Forall; }

// Emits one trace line per quantifier moved across a connective; the
// before/after formulas are materialized locally for the report.
void trace_pull(Trace* trace, const char* rule, const PrenexForm& before, const PrenexForm& after) {
  if (trace) trace->push_back({rule, print(before.attach()), print(after.attach())});
}

PrenexForm prenex_rec(const FormulaPtr& f, NameAllocator& names, Trace* trace) {
  if (auto* fa = std::get_if<Forall>(&f->node)) {
    std::string v = names.fresh(fa->hint);
    PrenexForm p = prenex_rec(open_binder(fa->body, mk_free(v)), names, trace);
    p.prefix.insert(p.prefix.begin(), {Quant::Forall, v});
    return p;
  }
  if (auto* ex = std::get_if<Exists>(&f->node)) {
    std::string v = names.fresh(ex->hint);
    PrenexForm p = prenex_rec(open_binder(ex->body, mk_free(v)), names, trace);
    p.prefix.insert(p.prefix.begin(), {Quant::Exists, v});
    return p;
  }
  if (auto* n = std::get_if<Not>(&f->node)) {
    PrenexForm p = prenex_rec(n->sub, names, trace);
    PrenexForm cur{{}, mk_not(p.attach())};
    // pull outermost first: not Q v. A => Q' v. not A
    for (size_t i = 0; i < p.prefix.size(); i++) {
      PrenexForm rest{{p.prefix.begin() + i + 1, p.prefix.end()}, p.matrix};
      PrenexForm next = cur;
      next.prefix.push_back({flip(p.prefix[i].first), p.prefix[i].second});
      next.matrix = mk_not(rest.attach());
      trace_pull(trace,
                 p.prefix[i].first == Quant::Forall ? "prenex-not-forall" : "prenex-not-exists",
                 PrenexForm{{}, cur.matrix}, PrenexForm{{next.prefix.back()}, next.matrix});
      cur = next;
    }
    cur.matrix = mk_not(p.matrix);
    return cur;
  }

  auto binary = [&](const FormulaPtr& lhs, const FormulaPtr& rhs, bool flip_left,
                    const char* ctor_name,
                    FormulaPtr (*rebuild)(FormulaPtr, FormulaPtr)) -> PrenexForm {
    PrenexForm pl = prenex_rec(lhs, names, trace);
    PrenexForm pr = prenex_rec(rhs, names, trace);
    PrenexForm out;
    for (auto& [q, v] : pl.prefix) out.prefix.push_back({flip_left ? flip(q) : q, v});
    for (auto& [q, v] : pr.prefix) out.prefix.push_back({q, v});
    out.matrix = rebuild(pl.matrix, pr.matrix);
    if (trace) {
      // one event per pulled quantifier, left side first; each event shows
      // the local redex with the quantifier on one side and then in front
      FormulaPtr r_whole = pr.attach();
      for (size_t i = 0; i < pl.prefix.size(); i++) {
        PrenexForm lrest{{pl.prefix.begin() + i + 1, pl.prefix.end()}, pl.matrix};
        auto [q, v] = pl.prefix[i];
        PrenexForm before{{{q, v}}, lrest.attach()};
        FormulaPtr before_f = rebuild(before.attach(), r_whole);
        PrenexForm after{{{flip_left ? flip(q) : q, v}}, rebuild(lrest.attach(), r_whole)};
        trace->push_back({std::string("prenex-") + ctor_name + "-left" +
                              (q == Quant::Forall ? "-forall" : "-exists"),
                          print(before_f), print(after.attach())});
      }
      for (size_t i = 0; i < pr.prefix.size(); i++) {
        PrenexForm rrest{{pr.prefix.begin() + i + 1, pr.prefix.end()}, pr.matrix};
        auto [q, v] = pr.prefix[i];
        PrenexForm inner{{{q, v}}, rrest.attach()};
        FormulaPtr before_f = rebuild(pl.matrix, inner.attach());
        PrenexForm after{{{q, v}}, rebuild(pl.matrix, rrest.attach())};
        trace->push_back({std::string("prenex-") + ctor_name + "-right" +
                              (q == Quant::Forall ? "-forall" : "-exists"),
                          print(before_f), print(after.attach())});
      }
    }
    return out;
  };

  if (auto* a = std::get_if<And>(&f->node))
    return binary(a->lhs, a->rhs, false, "and",
                  +[](FormulaPtr l, FormulaPtr r) { return mk_and(l, r); });
  if (auto* o = std::get_if<Or>(&f->node))
    return binary(o->lhs, o->rhs, false, "or",
                  +[](FormulaPtr l, FormulaPtr r) { return mk_or(l, r); });
  if (auto* i = std::get_if<Imp>(&f->node))
    return binary(i->lhs, i->rhs, true, "imp",
                  +[](FormulaPtr l, FormulaPtr r) { return mk_imp(l, r); });

  return PrenexForm{{}, f};  // atom
}

}  // namespace

PrenexForm prenex(const FormulaPtr& f, Trace* trace) {
  if (contains_eps(f))
    throw TransformError("prenex: input contains eps terms; prenex commutations are only "
                         "defined for pure quantifier formulas");
  NameAllocator names;
  for (auto& v : free_vars(f)) names.taken.insert(v);
  for (auto& s : function_symbols(f)) names.taken.insert(s);
  for (auto& s : predicate_symbols(f)) names.taken.insert(s);
  PrenexForm p = prenex_rec(f, names, trace);
  if (contains_quantifier(p.matrix)) throw TransformError("prenex: residual quantifier in matrix");
  return p;
}

// ---- skolem resolution ----

SkolemResolution skolem_resolve(const std::vector<FormulaPtr>& axioms, const Signature& sig,
                                Trace* trace) {
  SkolemResolution out;
  out.extended = sig;
  auto taken = [&](const std::string& n) {
    return out.extended.fun_arity(n).has_value() || out.extended.pred_arity(n).has_value();
  };
  int const_idx = 0, fun_idx = 0;
  auto fresh_symbol = [&](bool constant) {
    for (;;) {
      int& i = constant ? const_idx : fun_idx;
      std::string name = (constant ? "s" : "g") + (i ? std::to_string(i) : "");
      i++;
      if (!taken(name)) return name;
    }
  };

  for (auto& axiom : axioms) {
    PrenexForm p = prenex(axiom, nullptr);
    for (;;) {
      size_t i = 0;
      std::vector<std::string> params;
      while (i < p.prefix.size() && p.prefix[i].first == Quant::Forall)
        params.push_back(p.prefix[i++].second);
      if (i == p.prefix.size()) break;
      // first existential: define a symbol over the universals before it
      std::string v = p.prefix[i].second;
      PrenexForm rest{{p.prefix.begin() + i + 1, p.prefix.end()}, p.matrix};
      TermPtr def = mk_eps(v, rest.attach());
      std::string name = fresh_symbol(params.empty());
      out.extended.declare_fun(name, (int)params.size());
      std::vector<TermPtr> args;
      for (auto& q : params) args.push_back(mk_free(q));
      TermPtr repl = mk_app(name, std::move(args));
      PrenexForm next;
      for (size_t j = 0; j < p.prefix.size(); j++)
        if (j != i) next.prefix.push_back(p.prefix[j]);
      next.matrix = substitute(p.matrix, v, repl);
      if (trace) trace->push_back({"skolem-exists", print(p.attach()), print(next.attach())});
      out.defs.push_back({name, params, def});
      p = std::move(next);
    }
    out.axioms.push_back(p.attach());
  }
  return out;
}

std::vector<FormulaPtr> matrices(const std::vector<FormulaPtr>& axioms, Trace* trace) {
  std::vector<FormulaPtr> out;
  for (auto& a : axioms) {
    PrenexForm p = prenex(a, nullptr);
    if (trace) trace->push_back({"matrix", print(a), print(p.matrix)});
    out.push_back(p.matrix);
  }
  return out;
}

}  // namespace epsilon
