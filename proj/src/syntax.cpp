#include "epsilon/syntax.hpp"

#include <algorithm>

namespace epsilon {

TermPtr mk_bound(int index) { return std::make_shared<Term>(Term{Bound{index}}); }
TermPtr mk_free(const std::string& name) { return std::make_shared<Term>(Term{Free{name}}); }
TermPtr mk_app(const std::string& fn, std::vector<TermPtr> args) {
  return std::make_shared<Term>(Term{App{fn, std::move(args)}});
}
TermPtr mk_const(const std::string& name) { return mk_app(name, {}); }
TermPtr mk_numeral(uint64_t n) { return mk_const(std::to_string(n)); }
TermPtr mk_eps_raw(FormulaPtr body, const std::string& hint) {
  return std::make_shared<Term>(Term{Eps{std::move(body), hint}});
}

FormulaPtr mk_pred(const std::string& name, std::vector<TermPtr> args) {
  return std::make_shared<Formula>(Formula{Pred{name, std::move(args)}});
}
FormulaPtr mk_eq(TermPtr lhs, TermPtr rhs) {
  return std::make_shared<Formula>(Formula{Eq{std::move(lhs), std::move(rhs)}});
}
FormulaPtr mk_truth() { return std::make_shared<Formula>(Formula{Truth{}}); }
FormulaPtr mk_falsity() { return std::make_shared<Formula>(Formula{Falsity{}}); }
FormulaPtr mk_not(FormulaPtr f) { return std::make_shared<Formula>(Formula{Not{std::move(f)}}); }
FormulaPtr mk_and(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Formula{And{std::move(l), std::move(r)}});
}
FormulaPtr mk_or(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Formula{Or{std::move(l), std::move(r)}});
}
FormulaPtr mk_imp(FormulaPtr l, FormulaPtr r) {
  return std::make_shared<Formula>(Formula{Imp{std::move(l), std::move(r)}});
}
FormulaPtr mk_iff(FormulaPtr l, FormulaPtr r) {
  return mk_and(mk_imp(l, r), mk_imp(r, l));
}
FormulaPtr mk_forall_raw(FormulaPtr body, const std::string& hint) {
  return std::make_shared<Formula>(Formula{Forall{std::move(body), hint}});
}
FormulaPtr mk_exists_raw(FormulaPtr body, const std::string& hint) {
  return std::make_shared<Formula>(Formula{Exists{std::move(body), hint}});
}

bool is_numeral(const std::string& name) {
  if (name.empty()) return false;
  return std::all_of(name.begin(), name.end(), [](char c) { return c >= '0' && c <= '9'; });
}

std::optional<uint64_t> numeral_value(TermPtr t) {
  if (auto* a = std::get_if<App>(&t->node)) {
    if (a->args.empty() && is_numeral(a->fn)) return std::stoull(a->fn);
  }
  return std::nullopt;
}

// ---- abstraction: named free variable -> Bound{depth} ----

static TermPtr abstract_t(const TermPtr& t, const std::string& var, int depth);

static FormulaPtr abstract_f(const FormulaPtr& f, const std::string& var, int depth) {
  if (auto* p = std::get_if<Pred>(&f->node)) {
    std::vector<TermPtr> args;
    for (auto& a : p->args) args.push_back(abstract_t(a, var, depth));
    return mk_pred(p->name, std::move(args));
  }
  if (auto* e = std::get_if<Eq>(&f->node))
    return mk_eq(abstract_t(e->lhs, var, depth), abstract_t(e->rhs, var, depth));
  if (std::get_if<Truth>(&f->node) || std::get_if<Falsity>(&f->node)) return f;
  if (auto* n = std::get_if<Not>(&f->node)) return mk_not(abstract_f(n->sub, var, depth));
  if (auto* a = std::get_if<And>(&f->node))
    return mk_and(abstract_f(a->lhs, var, depth), abstract_f(a->rhs, var, depth));
  if (auto* o = std::get_if<Or>(&f->node))
    return mk_or(abstract_f(o->lhs, var, depth), abstract_f(o->rhs, var, depth));
  if (auto* i = std::get_if<Imp>(&f->node))
    return mk_imp(abstract_f(i->lhs, var, depth), abstract_f(i->rhs, var, depth));
  if (auto* fa = std::get_if<Forall>(&f->node))
    return mk_forall_raw(abstract_f(fa->body, var, depth + 1), fa->hint);
  auto& ex = std::get<Exists>(f->node);
  return mk_exists_raw(abstract_f(ex.body, var, depth + 1), ex.hint);
}

static TermPtr abstract_t(const TermPtr& t, const std::string& var, int depth) {
  if (std::get_if<Bound>(&t->node)) return t;
  if (auto* fr = std::get_if<Free>(&t->node))
    return fr->name == var ? mk_bound(depth) : t;
  if (auto* a = std::get_if<App>(&t->node)) {
    std::vector<TermPtr> args;
    for (auto& x : a->args) args.push_back(abstract_t(x, var, depth));
    return mk_app(a->fn, std::move(args));
  }
  auto& e = std::get<Eps>(t->node);
  return mk_eps_raw(abstract_f(e.body, var, depth + 1), e.hint);
}

FormulaPtr mk_forall(const std::string& var, FormulaPtr f) {
  return mk_forall_raw(abstract_f(f, var, 0), var);
}
FormulaPtr mk_exists(const std::string& var, FormulaPtr f) {
  return mk_exists_raw(abstract_f(f, var, 0), var);
}
TermPtr mk_eps(const std::string& var, FormulaPtr f) {
  return mk_eps_raw(abstract_f(f, var, 0), var);
}

// ---- opening a binder ----
// Removes one binder level: Bound{depth} becomes the replacement (shifted by
// the local depth), indices beyond it step down, inner ones are untouched.

static TermPtr shift_t(const TermPtr& t, int by, int cutoff);

static FormulaPtr shift_f(const FormulaPtr& f, int by, int cutoff) {
  if (auto* p = std::get_if<Pred>(&f->node)) {
    std::vector<TermPtr> args;
    for (auto& a : p->args) args.push_back(shift_t(a, by, cutoff));
    return mk_pred(p->name, std::move(args));
  }
  if (auto* e = std::get_if<Eq>(&f->node))
    return mk_eq(shift_t(e->lhs, by, cutoff), shift_t(e->rhs, by, cutoff));
  if (std::get_if<Truth>(&f->node) || std::get_if<Falsity>(&f->node)) return f;
  if (auto* n = std::get_if<Not>(&f->node)) return mk_not(shift_f(n->sub, by, cutoff));
  if (auto* a = std::get_if<And>(&f->node))
    return mk_and(shift_f(a->lhs, by, cutoff), shift_f(a->rhs, by, cutoff));
  if (auto* o = std::get_if<Or>(&f->node))
    return mk_or(shift_f(o->lhs, by, cutoff), shift_f(o->rhs, by, cutoff));
  if (auto* i = std::get_if<Imp>(&f->node))
    return mk_imp(shift_f(i->lhs, by, cutoff), shift_f(i->rhs, by, cutoff));
  if (auto* fa = std::get_if<Forall>(&f->node))
    return mk_forall_raw(shift_f(fa->body, by, cutoff + 1), fa->hint);
  auto& ex = std::get<Exists>(f->node);
  return mk_exists_raw(shift_f(ex.body, by, cutoff + 1), ex.hint);
}

static TermPtr shift_t(const TermPtr& t, int by, int cutoff) {
  if (auto* b = std::get_if<Bound>(&t->node))
    return b->index >= cutoff ? mk_bound(b->index + by) : t;
  if (std::get_if<Free>(&t->node)) return t;
  if (auto* a = std::get_if<App>(&t->node)) {
    std::vector<TermPtr> args;
    for (auto& x : a->args) args.push_back(shift_t(x, by, cutoff));
    return mk_app(a->fn, std::move(args));
  }
  auto& e = std::get<Eps>(t->node);
  return mk_eps_raw(shift_f(e.body, by, cutoff + 1), e.hint);
}

static TermPtr open_t(const TermPtr& t, const TermPtr& repl, int depth);

static FormulaPtr open_f(const FormulaPtr& f, const TermPtr& repl, int depth) {
  if (auto* p = std::get_if<Pred>(&f->node)) {
    std::vector<TermPtr> args;
    for (auto& a : p->args) args.push_back(open_t(a, repl, depth));
    return mk_pred(p->name, std::move(args));
  }
  if (auto* e = std::get_if<Eq>(&f->node))
    return mk_eq(open_t(e->lhs, repl, depth), open_t(e->rhs, repl, depth));
  if (std::get_if<Truth>(&f->node) || std::get_if<Falsity>(&f->node)) return f;
  if (auto* n = std::get_if<Not>(&f->node)) return mk_not(open_f(n->sub, repl, depth));
  if (auto* a = std::get_if<And>(&f->node))
    return mk_and(open_f(a->lhs, repl, depth), open_f(a->rhs, repl, depth));
  if (auto* o = std::get_if<Or>(&f->node))
    return mk_or(open_f(o->lhs, repl, depth), open_f(o->rhs, repl, depth));
  if (auto* i = std::get_if<Imp>(&f->node))
    return mk_imp(open_f(i->lhs, repl, depth), open_f(i->rhs, repl, depth));
  if (auto* fa = std::get_if<Forall>(&f->node))
    return mk_forall_raw(open_f(fa->body, repl, depth + 1), fa->hint);
  auto& ex = std::get<Exists>(f->node);
  return mk_exists_raw(open_f(ex.body, repl, depth + 1), ex.hint);
}

static TermPtr open_t(const TermPtr& t, const TermPtr& repl, int depth) {
  if (auto* b = std::get_if<Bound>(&t->node)) {
    if (b->index == depth) return depth == 0 ? repl : shift_t(repl, depth, 0);
    if (b->index > depth) return mk_bound(b->index - 1);
    return t;
  }
  if (std::get_if<Free>(&t->node)) return t;
  if (auto* a = std::get_if<App>(&t->node)) {
    std::vector<TermPtr> args;
    for (auto& x : a->args) args.push_back(open_t(x, repl, depth));
    return mk_app(a->fn, std::move(args));
  }
  auto& e = std::get<Eps>(t->node);
  return mk_eps_raw(open_f(e.body, repl, depth + 1), e.hint);
}

FormulaPtr open_binder(const FormulaPtr& body, const TermPtr& t) { return open_f(body, t, 0); }

// ---- comparison (hints ignored) ----

static int cmp_int(long long a, long long b) { return a < b ? -1 : (a > b ? 1 : 0); }

static int cmp_args(const std::vector<TermPtr>& a, const std::vector<TermPtr>& b) {
  if (int c = cmp_int((long long)a.size(), (long long)b.size())) return c;
  for (size_t i = 0; i < a.size(); i++)
    if (int c = compare(a[i], b[i])) return c;
  return 0;
}

int compare(const TermPtr& a, const TermPtr& b) {
  if (a == b) return 0;
  if (int c = cmp_int((long long)a->node.index(), (long long)b->node.index())) return c;
  if (auto* x = std::get_if<Bound>(&a->node)) return cmp_int(x->index, std::get<Bound>(b->node).index);
  if (auto* x = std::get_if<Free>(&a->node)) return x->name.compare(std::get<Free>(b->node).name);
  if (auto* x = std::get_if<App>(&a->node)) {
    auto& y = std::get<App>(b->node);
    if (int c = x->fn.compare(y.fn)) return c;
    return cmp_args(x->args, y.args);
  }
  return compare(std::get<Eps>(a->node).body, std::get<Eps>(b->node).body);
}

int compare(const FormulaPtr& a, const FormulaPtr& b) {
  if (a == b) return 0;
  if (int c = cmp_int((long long)a->node.index(), (long long)b->node.index())) return c;
  if (auto* x = std::get_if<Pred>(&a->node)) {
    auto& y = std::get<Pred>(b->node);
    if (int c = x->name.compare(y.name)) return c;
    return cmp_args(x->args, y.args);
  }
  if (auto* x = std::get_if<Eq>(&a->node)) {
    auto& y = std::get<Eq>(b->node);
    if (int c = compare(x->lhs, y.lhs)) return c;
    return compare(x->rhs, y.rhs);
  }
  if (std::get_if<Truth>(&a->node) || std::get_if<Falsity>(&a->node)) return 0;
  if (auto* x = std::get_if<Not>(&a->node)) return compare(x->sub, std::get<Not>(b->node).sub);
  if (auto* x = std::get_if<And>(&a->node)) {
    auto& y = std::get<And>(b->node);
    if (int c = compare(x->lhs, y.lhs)) return c;
    return compare(x->rhs, y.rhs);
  }
  if (auto* x = std::get_if<Or>(&a->node)) {
    auto& y = std::get<Or>(b->node);
    if (int c = compare(x->lhs, y.lhs)) return c;
    return compare(x->rhs, y.rhs);
  }
  if (auto* x = std::get_if<Imp>(&a->node)) {
    auto& y = std::get<Imp>(b->node);
    if (int c = compare(x->lhs, y.lhs)) return c;
    return compare(x->rhs, y.rhs);
  }
  if (auto* x = std::get_if<Forall>(&a->node)) return compare(x->body, std::get<Forall>(b->node).body);
  return compare(std::get<Exists>(a->node).body, std::get<Exists>(b->node).body);
}

bool alpha_eq(const TermPtr& a, const TermPtr& b) { return compare(a, b) == 0; }
bool alpha_eq(const FormulaPtr& a, const FormulaPtr& b) { return compare(a, b) == 0; }

// ---- traversal helpers ----

namespace {

template <class TermFn, class EnterBinder>
void walk_term(const TermPtr& t, int depth, TermFn&& tf, EnterBinder&& eb);

template <class TermFn, class EnterBinder>
void walk_formula(const FormulaPtr& f, int depth, TermFn&& tf, EnterBinder&& eb) {
  if (auto* p = std::get_if<Pred>(&f->node)) {
    for (auto& a : p->args) walk_term(a, depth, tf, eb);
  } else if (auto* e = std::get_if<Eq>(&f->node)) {
    walk_term(e->lhs, depth, tf, eb);
    walk_term(e->rhs, depth, tf, eb);
  } else if (auto* n = std::get_if<Not>(&f->node)) {
    walk_formula(n->sub, depth, tf, eb);
  } else if (auto* a = std::get_if<And>(&f->node)) {
    walk_formula(a->lhs, depth, tf, eb);
    walk_formula(a->rhs, depth, tf, eb);
  } else if (auto* o = std::get_if<Or>(&f->node)) {
    walk_formula(o->lhs, depth, tf, eb);
    walk_formula(o->rhs, depth, tf, eb);
  } else if (auto* i = std::get_if<Imp>(&f->node)) {
    walk_formula(i->lhs, depth, tf, eb);
    walk_formula(i->rhs, depth, tf, eb);
  } else if (auto* fa = std::get_if<Forall>(&f->node)) {
    walk_formula(fa->body, depth + 1, tf, eb);
  } else if (auto* ex = std::get_if<Exists>(&f->node)) {
    walk_formula(ex->body, depth + 1, tf, eb);
  }
}

template <class TermFn, class EnterBinder>
void walk_term(const TermPtr& t, int depth, TermFn&& tf, EnterBinder&& eb) {
  tf(t, depth);
  if (auto* a = std::get_if<App>(&t->node)) {
    for (auto& x : a->args) walk_term(x, depth, tf, eb);
  } else if (auto* e = std::get_if<Eps>(&t->node)) {
    eb(t, depth);
    walk_formula(e->body, depth + 1, tf, eb);
  }
}

}  // namespace

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> out;
  walk_formula(
      f, 0,
      [&](const TermPtr& t, int) {
        if (auto* fr = std::get_if<Free>(&t->node)) out.insert(fr->name);
      },
      [](const TermPtr&, int) {});
  return out;
}

std::set<std::string> free_vars(const TermPtr& t) {
  std::set<std::string> out;
  walk_term(
      t, 0,
      [&](const TermPtr& s, int) {
        if (auto* fr = std::get_if<Free>(&s->node)) out.insert(fr->name);
      },
      [](const TermPtr&, int) {});
  return out;
}

std::set<std::string> function_symbols(const FormulaPtr& f) {
  std::set<std::string> out;
  walk_formula(
      f, 0,
      [&](const TermPtr& t, int) {
        if (auto* a = std::get_if<App>(&t->node)) out.insert(a->fn);
      },
      [](const TermPtr&, int) {});
  return out;
}

std::set<std::string> function_symbols(const TermPtr& t) {
  std::set<std::string> out;
  walk_term(
      t, 0,
      [&](const TermPtr& s, int) {
        if (auto* a = std::get_if<App>(&s->node)) out.insert(a->fn);
      },
      [](const TermPtr&, int) {});
  return out;
}

namespace {

void pred_syms_f(const FormulaPtr& f, std::set<std::string>& out);

void pred_syms_t(const TermPtr& t, std::set<std::string>& out) {
  if (auto* a = std::get_if<App>(&t->node)) {
    for (auto& x : a->args) pred_syms_t(x, out);
  } else if (auto* e = std::get_if<Eps>(&t->node)) {
    pred_syms_f(e->body, out);
  }
}

void pred_syms_f(const FormulaPtr& f, std::set<std::string>& out) {
  if (auto* p = std::get_if<Pred>(&f->node)) {
    out.insert(p->name);
    for (auto& a : p->args) pred_syms_t(a, out);
  } else if (auto* e = std::get_if<Eq>(&f->node)) {
    pred_syms_t(e->lhs, out);
    pred_syms_t(e->rhs, out);
  } else if (auto* n = std::get_if<Not>(&f->node)) {
    pred_syms_f(n->sub, out);
  } else if (auto* a = std::get_if<And>(&f->node)) {
    pred_syms_f(a->lhs, out);
    pred_syms_f(a->rhs, out);
  } else if (auto* o = std::get_if<Or>(&f->node)) {
    pred_syms_f(o->lhs, out);
    pred_syms_f(o->rhs, out);
  } else if (auto* i = std::get_if<Imp>(&f->node)) {
    pred_syms_f(i->lhs, out);
    pred_syms_f(i->rhs, out);
  } else if (auto* fa = std::get_if<Forall>(&f->node)) {
    pred_syms_f(fa->body, out);
  } else if (auto* ex = std::get_if<Exists>(&f->node)) {
    pred_syms_f(ex->body, out);
  }
}

}  // namespace

std::set<std::string> predicate_symbols(const FormulaPtr& f) {
  std::set<std::string> out;
  pred_syms_f(f, out);
  return out;
}

std::set<std::string> predicate_symbols(const TermPtr& t) {
  std::set<std::string> out;
  pred_syms_t(t, out);
  return out;
}

// ---- substitution for a named free variable ----
// The replacement is closed with respect to Bound indices (parsed terms and
// every term this kernel builds have no loose indices), so no shifting is
// needed when descending under binders.

TermPtr substitute(const TermPtr& in, const std::string& var, const TermPtr& t) {
  if (std::get_if<Bound>(&in->node)) return in;
  if (auto* fr = std::get_if<Free>(&in->node)) return fr->name == var ? t : in;
  if (auto* a = std::get_if<App>(&in->node)) {
    std::vector<TermPtr> args;
    for (auto& x : a->args) args.push_back(substitute(x, var, t));
    return mk_app(a->fn, std::move(args));
  }
  auto& e = std::get<Eps>(in->node);
  return mk_eps_raw(substitute(e.body, var, t), e.hint);
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& t) {
  if (auto* p = std::get_if<Pred>(&f->node)) {
    std::vector<TermPtr> args;
    for (auto& a : p->args) args.push_back(substitute(a, var, t));
    return mk_pred(p->name, std::move(args));
  }
  if (auto* e = std::get_if<Eq>(&f->node))
    return mk_eq(substitute(e->lhs, var, t), substitute(e->rhs, var, t));
  if (std::get_if<Truth>(&f->node) || std::get_if<Falsity>(&f->node)) return f;
  if (auto* n = std::get_if<Not>(&f->node)) return mk_not(substitute(n->sub, var, t));
  if (auto* a = std::get_if<And>(&f->node))
    return mk_and(substitute(a->lhs, var, t), substitute(a->rhs, var, t));
  if (auto* o = std::get_if<Or>(&f->node))
    return mk_or(substitute(o->lhs, var, t), substitute(o->rhs, var, t));
  if (auto* i = std::get_if<Imp>(&f->node))
    return mk_imp(substitute(i->lhs, var, t), substitute(i->rhs, var, t));
  if (auto* fa = std::get_if<Forall>(&f->node))
    return mk_forall_raw(substitute(fa->body, var, t), fa->hint);
  auto& ex = std::get<Exists>(f->node);
  return mk_exists_raw(substitute(ex.body, var, t), ex.hint);
}

// ---- closed-term replacement ----

TermPtr replace_term(const TermPtr& in, const TermPtr& from, const TermPtr& to) {
  if (alpha_eq(in, from)) return to;
  if (auto* a = std::get_if<App>(&in->node)) {
    std::vector<TermPtr> args;
    for (auto& x : a->args) args.push_back(replace_term(x, from, to));
    return mk_app(a->fn, std::move(args));
  }
  if (auto* e = std::get_if<Eps>(&in->node))
    return mk_eps_raw(replace_term(e->body, from, to), e->hint);
  return in;
}

FormulaPtr replace_term(const FormulaPtr& f, const TermPtr& from, const TermPtr& to) {
  if (auto* p = std::get_if<Pred>(&f->node)) {
    std::vector<TermPtr> args;
    for (auto& a : p->args) args.push_back(replace_term(a, from, to));
    return mk_pred(p->name, std::move(args));
  }
  if (auto* e = std::get_if<Eq>(&f->node))
    return mk_eq(replace_term(e->lhs, from, to), replace_term(e->rhs, from, to));
  if (std::get_if<Truth>(&f->node) || std::get_if<Falsity>(&f->node)) return f;
  if (auto* n = std::get_if<Not>(&f->node)) return mk_not(replace_term(n->sub, from, to));
  if (auto* a = std::get_if<And>(&f->node))
    return mk_and(replace_term(a->lhs, from, to), replace_term(a->rhs, from, to));
  if (auto* o = std::get_if<Or>(&f->node))
    return mk_or(replace_term(o->lhs, from, to), replace_term(o->rhs, from, to));
  if (auto* i = std::get_if<Imp>(&f->node))
    return mk_imp(replace_term(i->lhs, from, to), replace_term(i->rhs, from, to));
  if (auto* fa = std::get_if<Forall>(&f->node))
    return mk_forall_raw(replace_term(fa->body, from, to), fa->hint);
  auto& ex = std::get<Exists>(f->node);
  return mk_exists_raw(replace_term(ex.body, from, to), ex.hint);
}

// ---- epsilon rank ----

int epsilon_rank(const TermPtr& t) {
  if (auto* a = std::get_if<App>(&t->node)) {
    int r = 0;
    for (auto& x : a->args) r = std::max(r, epsilon_rank(x));
    return r;
  }
  if (auto* e = std::get_if<Eps>(&t->node)) return 1 + epsilon_rank(e->body);
  return 0;
}

int epsilon_rank(const FormulaPtr& f) {
  if (auto* p = std::get_if<Pred>(&f->node)) {
    int r = 0;
    for (auto& a : p->args) r = std::max(r, epsilon_rank(a));
    return r;
  }
  if (auto* e = std::get_if<Eq>(&f->node))
    return std::max(epsilon_rank(e->lhs), epsilon_rank(e->rhs));
  if (std::get_if<Truth>(&f->node) || std::get_if<Falsity>(&f->node)) return 0;
  if (auto* n = std::get_if<Not>(&f->node)) return epsilon_rank(n->sub);
  if (auto* a = std::get_if<And>(&f->node))
    return std::max(epsilon_rank(a->lhs), epsilon_rank(a->rhs));
  if (auto* o = std::get_if<Or>(&f->node))
    return std::max(epsilon_rank(o->lhs), epsilon_rank(o->rhs));
  if (auto* i = std::get_if<Imp>(&f->node))
    return std::max(epsilon_rank(i->lhs), epsilon_rank(i->rhs));
  if (auto* fa = std::get_if<Forall>(&f->node)) return epsilon_rank(fa->body);
  return epsilon_rank(std::get<Exists>(f->node).body);
}

// ---- properness ----
// depth counts binders entered since the eps whose body we are checking;
// a Bound index >= depth escapes that eps, a Free never belongs to it.

namespace {

bool body_closed_t(const TermPtr& t, int depth);

bool body_closed_f(const FormulaPtr& f, int depth) {
  bool ok = true;
  if (auto* p = std::get_if<Pred>(&f->node)) {
    for (auto& a : p->args) ok = ok && body_closed_t(a, depth);
  } else if (auto* e = std::get_if<Eq>(&f->node)) {
    ok = body_closed_t(e->lhs, depth) && body_closed_t(e->rhs, depth);
  } else if (auto* n = std::get_if<Not>(&f->node)) {
    ok = body_closed_f(n->sub, depth);
  } else if (auto* a = std::get_if<And>(&f->node)) {
    ok = body_closed_f(a->lhs, depth) && body_closed_f(a->rhs, depth);
  } else if (auto* o = std::get_if<Or>(&f->node)) {
    ok = body_closed_f(o->lhs, depth) && body_closed_f(o->rhs, depth);
  } else if (auto* i = std::get_if<Imp>(&f->node)) {
    ok = body_closed_f(i->lhs, depth) && body_closed_f(i->rhs, depth);
  } else if (auto* fa = std::get_if<Forall>(&f->node)) {
    ok = body_closed_f(fa->body, depth + 1);
  } else if (auto* ex = std::get_if<Exists>(&f->node)) {
    ok = body_closed_f(ex->body, depth + 1);
  }
  return ok;
}

bool body_closed_t(const TermPtr& t, int depth) {
  if (auto* b = std::get_if<Bound>(&t->node)) return b->index < depth;
  if (std::get_if<Free>(&t->node)) return false;
  if (auto* a = std::get_if<App>(&t->node)) {
    for (auto& x : a->args)
      if (!body_closed_t(x, depth)) return false;
    return true;
  }
  return body_closed_f(std::get<Eps>(t->node).body, depth + 1);
}

}  // namespace

bool is_proper(const TermPtr& t) {
  bool ok = true;
  walk_term(
      t, 0, [](const TermPtr&, int) {},
      [&](const TermPtr& e, int) { ok = ok && body_closed_f(std::get<Eps>(e->node).body, 1); });
  return ok;
}

bool is_proper(const FormulaPtr& f) {
  bool ok = true;
  walk_formula(
      f, 0, [](const TermPtr&, int) {},
      [&](const TermPtr& e, int) { ok = ok && body_closed_f(std::get<Eps>(e->node).body, 1); });
  return ok;
}

// ---- eps subterm collection ----

std::vector<TermPtr> epsilon_subterms(const FormulaPtr& f) {
  std::set<TermPtr, TermLess> seen;
  walk_formula(
      f, 0, [](const TermPtr&, int) {},
      [&](const TermPtr& e, int) { seen.insert(e); });
  return {seen.begin(), seen.end()};
}

std::vector<TermPtr> epsilon_subterms(const TermPtr& t) {
  std::set<TermPtr, TermLess> seen;
  walk_term(
      t, 0, [](const TermPtr&, int) {},
      [&](const TermPtr& e, int) { seen.insert(e); });
  return {seen.begin(), seen.end()};
}

bool contains_eps(const TermPtr& t) { return epsilon_rank(t) > 0; }
bool contains_eps(const FormulaPtr& f) { return epsilon_rank(f) > 0; }

bool contains_quantifier(const FormulaPtr& f) {
  if (std::get_if<Forall>(&f->node) || std::get_if<Exists>(&f->node)) return true;
  bool found = false;
  auto check_term = [&](const TermPtr& t, auto&& self) -> void {
    if (auto* a = std::get_if<App>(&t->node)) {
      for (auto& x : a->args) self(x, self);
    } else if (auto* e = std::get_if<Eps>(&t->node)) {
      if (contains_quantifier(e->body)) found = true;
    }
  };
  if (auto* p = std::get_if<Pred>(&f->node)) {
    for (auto& a : p->args) check_term(a, check_term);
  } else if (auto* e = std::get_if<Eq>(&f->node)) {
    check_term(e->lhs, check_term);
    check_term(e->rhs, check_term);
  } else if (auto* n = std::get_if<Not>(&f->node)) {
    found = contains_quantifier(n->sub);
  } else if (auto* a = std::get_if<And>(&f->node)) {
    found = contains_quantifier(a->lhs) || contains_quantifier(a->rhs);
  } else if (auto* o = std::get_if<Or>(&f->node)) {
    found = contains_quantifier(o->lhs) || contains_quantifier(o->rhs);
  } else if (auto* i = std::get_if<Imp>(&f->node)) {
    found = contains_quantifier(i->lhs) || contains_quantifier(i->rhs);
  }
  return found;
}

TermPtr make_tau(const std::string& var, FormulaPtr f) { return mk_eps(var, mk_not(std::move(f))); }

TermPtr eta_expansion(const std::string& var, FormulaPtr f) {
  // exists y. F(y) -> F(x), then bind x with eps. The existential copy is
  // built first so the eps abstraction cannot touch its bound variable.
  FormulaPtr ex = mk_exists(var, f);
  return mk_eps(var, mk_imp(ex, f));
}

// ---- signature ----

void Signature::declare_fun(const std::string& name, int arity) {
  if (is_numeral(name)) throw SyntaxError("numerals are implicit constants: " + name);
  if (preds.count(name)) throw SyntaxError("symbol already a predicate: " + name);
  auto it = funcs.find(name);
  if (it != funcs.end() && it->second != arity)
    throw SyntaxError("conflicting arity for function " + name);
  funcs[name] = arity;
}

void Signature::declare_pred(const std::string& name, int arity) {
  if (name == "=") throw SyntaxError("equality is builtin");
  if (funcs.count(name)) throw SyntaxError("symbol already a function: " + name);
  auto it = preds.find(name);
  if (it != preds.end() && it->second != arity)
    throw SyntaxError("conflicting arity for predicate " + name);
  preds[name] = arity;
}

std::optional<int> Signature::fun_arity(const std::string& name) const {
  if (is_numeral(name)) return 0;
  if (arithmetic) {
    if (name == "+" || name == "*") return 2;
    if (name == "pd") return 1;
  }
  auto it = funcs.find(name);
  if (it == funcs.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Signature::pred_arity(const std::string& name) const {
  if (arithmetic && (name == "<" || name == "<=")) return 2;
  auto it = preds.find(name);
  if (it == preds.end()) return std::nullopt;
  return it->second;
}

Signature Signature::with_arithmetic() {
  Signature s;
  s.arithmetic = true;
  return s;
}

}  // namespace epsilon
