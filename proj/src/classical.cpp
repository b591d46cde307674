#include "epsilon/classical.hpp"

#include <algorithm>
#include <numeric>

#include "epsilon/parse.hpp"
#include "epsilon/print.hpp"

namespace epsilon {

int FiniteModel::fn(const std::string& name, const std::vector<int>& args) const {
  auto it = funcs.find(name);
  if (it == funcs.end()) throw SemanticsError("uninterpreted function symbol: " + name);
  auto jt = it->second.find(args);
  if (jt == it->second.end()) throw SemanticsError("partial function table for " + name);
  return jt->second;
}

bool FiniteModel::holds(const std::string& name, const std::vector<int>& args) const {
  auto it = preds.find(name);
  if (it == preds.end()) throw SemanticsError("uninterpreted predicate symbol: " + name);
  return it->second.count(args) != 0;
}

int FiniteModel::elem_index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (elems[i] == name) return i;
  return -1;
}

void FiniteModel::validate(const Signature& sig) const {
  if (elems.empty()) throw SemanticsError("empty universe");
  if (elems.size() > 28) throw SemanticsError("universe too large for mask-based evaluation");
  auto in_range = [&](int v) { return v >= 0 && v < size(); };
  for (auto& [name, arity] : sig.funcs) {
    auto it = funcs.find(name);
    if (it == funcs.end()) throw SemanticsError("missing table for function " + name);
    // count expected: size^arity tuples
    long long expect = 1;
    for (int i = 0; i < arity; ++i) expect *= size();
    if ((long long)it->second.size() != expect)
      throw SemanticsError("function table for " + name + " is not total");
    for (auto& [args, v] : it->second) {
      if ((int)args.size() != arity) throw SemanticsError("arity mismatch in table for " + name);
      if (!in_range(v)) throw SemanticsError("value out of range in table for " + name);
      for (int a : args)
        if (!in_range(a)) throw SemanticsError("argument out of range in table for " + name);
    }
  }
  for (auto& [name, arity] : sig.preds) {
    auto it = preds.find(name);
    if (it == preds.end()) throw SemanticsError("missing table for predicate " + name);
    for (auto& tup : it->second) {
      if ((int)tup.size() != arity) throw SemanticsError("arity mismatch in table for " + name);
      for (int a : tup)
        if (!in_range(a)) throw SemanticsError("tuple out of range in table for " + name);
    }
  }
}

int ChoiceFunction::operator()(uint32_t mask) const {
  if (lazy_min) {
    if (mask == 0) mask = (1u << n) - 1;
    return __builtin_ctz(mask);
  }
  return table[mask];
}

void ChoiceFunction::validate() const {
  if (n <= 0) throw SemanticsError("malformed choice table");
  if (lazy_min) return;
  if ((int)table.size() != (1 << n)) throw SemanticsError("malformed choice table");
  uint32_t full = (1u << n) - 1;
  for (uint32_t m = 1; m <= full; ++m)
    if (!((m >> table[m]) & 1u)) throw SemanticsError("choice outside its set");
  if (table[0] != table[full]) throw SemanticsError("empty-set choice must match the full set");
}

ChoiceFunction ChoiceFunction::minimum(int n) {
  ChoiceFunction cf;
  cf.n = n;
  if (n > 16) {
    cf.lazy_min = true;
    return cf;
  }
  cf.table.assign(1u << n, 0);
  uint32_t full = (1u << n) - 1;
  for (uint32_t m = 1; m <= full; ++m) {
    int least = 0;
    while (!((m >> least) & 1u)) ++least;
    cf.table[m] = least;
  }
  cf.table[0] = cf.table[full];
  return cf;
}

std::vector<ChoiceFunction> all_choice_functions(int n) {
  if (n <= 0 || n > 5) throw SemanticsError("choice enumeration supported for 1 <= n <= 5");
  uint32_t full = (1u << n) - 1;
  std::vector<std::vector<int>> members(full + 1);
  for (uint32_t m = 1; m <= full; ++m)
    for (int e = 0; e < n; ++e)
      if ((m >> e) & 1u) members[m].push_back(e);

  std::vector<ChoiceFunction> out;
  std::vector<int> pick(full + 1, 0);  // index into members[m]
  for (;;) {
    ChoiceFunction cf;
    cf.n = n;
    cf.table.assign(full + 1, 0);
    for (uint32_t m = 1; m <= full; ++m) cf.table[m] = members[m][pick[m]];
    cf.table[0] = cf.table[full];
    out.push_back(std::move(cf));
    // odometer over masks, lowest mask fastest
    uint32_t m = 1;
    for (; m <= full; ++m) {
      if (++pick[m] < (int)members[m].size()) break;
      pick[m] = 0;
    }
    if (m > full) break;
  }
  return out;
}

long long count_choice_functions(int n) {
  long long c = 1;
  for (uint32_t m = 1; m < (1u << n); ++m) c *= __builtin_popcount(m);
  return c;
}

namespace {

struct Evaluator {
  const FiniteModel& m;
  const ChoiceFunction& cf;
  const Valuation& env;
  std::vector<int> stack;

  int term(const TermPtr& t) {
    if (auto* b = std::get_if<Bound>(&t->node)) {
      if (b->index < 0 || b->index >= (int)stack.size())
        throw SemanticsError("loose binder index in evaluated term");
      return stack[stack.size() - 1 - b->index];
    }
    if (auto* fr = std::get_if<Free>(&t->node)) {
      auto it = env.find(fr->name);
      if (it == env.end()) throw SemanticsError("unbound variable: " + fr->name);
      return it->second;
    }
    if (auto* a = std::get_if<App>(&t->node)) {
      if (auto v = numeral_value(t)) {
        if (*v >= (uint64_t)m.size())
          throw SemanticsError("numeral " + a->fn + " outside the universe");
        return (int)*v;
      }
      std::vector<int> args;
      args.reserve(a->args.size());
      for (auto& x : a->args) args.push_back(term(x));
      return m.fn(a->fn, args);
    }
    auto& e = std::get<Eps>(t->node);
    uint32_t mask = 0;
    for (int a = 0; a < m.size(); ++a) {
      stack.push_back(a);
      if (formula(e.body)) mask |= 1u << a;
      stack.pop_back();
    }
    return cf(mask);
  }

  bool formula(const FormulaPtr& f) {
    if (auto* p = std::get_if<Pred>(&f->node)) {
      std::vector<int> args;
      args.reserve(p->args.size());
      for (auto& x : p->args) args.push_back(term(x));
      return m.holds(p->name, args);
    }
    if (auto* e = std::get_if<Eq>(&f->node)) return term(e->lhs) == term(e->rhs);
    if (std::get_if<Truth>(&f->node)) return true;
    if (std::get_if<Falsity>(&f->node)) return false;
    if (auto* n = std::get_if<Not>(&f->node)) return !formula(n->sub);
    if (auto* a = std::get_if<And>(&f->node)) return formula(a->lhs) && formula(a->rhs);
    if (auto* o = std::get_if<Or>(&f->node)) return formula(o->lhs) || formula(o->rhs);
    if (auto* i = std::get_if<Imp>(&f->node)) return !formula(i->lhs) || formula(i->rhs);
    if (auto* fa = std::get_if<Forall>(&f->node)) {
      for (int a = 0; a < m.size(); ++a) {
        stack.push_back(a);
        bool v = formula(fa->body);
        stack.pop_back();
        if (!v) return false;
      }
      return true;
    }
    auto& ex = std::get<Exists>(f->node);
    for (int a = 0; a < m.size(); ++a) {
      stack.push_back(a);
      bool v = formula(ex.body);
      stack.pop_back();
      if (v) return true;
    }
    return false;
  }
};

}  // namespace

int eval_term(const TermPtr& t, const FiniteModel& m, const ChoiceFunction& cf,
              const Valuation& env) {
  Evaluator ev{m, cf, env, {}};
  return ev.term(t);
}

bool eval_formula(const FormulaPtr& f, const FiniteModel& m, const ChoiceFunction& cf,
                  const Valuation& env) {
  Evaluator ev{m, cf, env, {}};
  return ev.formula(f);
}

uint32_t extension(const FormulaPtr& phi, const FiniteModel& m, const ChoiceFunction& cf) {
  auto fv = free_vars(phi);
  if (fv.size() != 1)
    throw SemanticsError("extension requires exactly one free variable, got " +
                         std::to_string(fv.size()));
  const std::string& v = *fv.begin();
  uint32_t mask = 0;
  for (int a = 0; a < m.size(); ++a)
    if (eval_formula(phi, m, cf, {{v, a}})) mask |= 1u << a;
  return mask;
}

Signature pc_signature() {
  Signature sig;
  sig.declare_pred("P", 1);
  sig.declare_fun("c", 0);
  return sig;
}

std::vector<FiniteModel> all_pc_models(int n) {
  std::vector<FiniteModel> out;
  FiniteModel base;
  for (int i = 0; i < n; ++i) base.elems.push_back("e" + std::to_string(i));
  for (int c = 0; c < n; ++c) {
    for (uint32_t p = 0; p < (1u << n); ++p) {
      FiniteModel m = base;
      m.funcs["c"][{}] = c;
      auto& tbl = m.preds["P"];
      for (int a = 0; a < n; ++a)
        if ((p >> a) & 1u) tbl.insert({a});
      out.push_back(std::move(m));
    }
  }
  return out;
}

namespace {

// Shared unary battery over {P/1, c/0}: free variable x.
std::vector<FormulaPtr> unary_battery() {
  Signature sig = pc_signature();
  std::vector<std::string> texts = {
      "P(x)",
      "not P(x)",
      "P(x) and not (x = c)",
      "P(x) or x = c",
      "x = c",
      "not (x = x)",
      "x = x",
      "P(x) -> P(c)",
  };
  std::vector<FormulaPtr> out;
  for (auto& t : texts) out.push_back(parse_formula(t, sig));
  return out;
}

template <typename Fn>
EquivReport enumerate_pc(int max_n, Fn&& per_instance) {
  if (max_n < 1 || max_n > 4) throw SemanticsError("enumeration supported for 1 <= n <= 4");
  EquivReport rep;
  auto battery = unary_battery();
  for (int n = 1; n <= max_n; ++n) {
    auto cfs = all_choice_functions(n);
    rep.choices += (long long)cfs.size();
    for (auto& m : all_pc_models(n)) {
      ++rep.models;
      for (auto& cf : cfs)
        for (auto& f : battery) {
          ++rep.instances;
          per_instance(rep, m, cf, f);
        }
    }
  }
  return rep;
}

std::string witness_line(const FiniteModel& m, const FormulaPtr& f, const std::string& what) {
  return what + " for F = " + print(f) + " on |U| = " + std::to_string(m.size());
}

}  // namespace

EquivReport check_exists_equivalence(int max_n) {
  return enumerate_pc(max_n, [](EquivReport& rep, const FiniteModel& m, const ChoiceFunction& cf,
                                const FormulaPtr& f) {
    bool lhs = eval_formula(mk_exists("x", f), m, cf);
    bool rhs = eval_formula(substitute(f, "x", mk_eps("x", f)), m, cf);
    if (lhs != rhs) rep.violations.push_back(witness_line(m, f, "exists/eps mismatch"));
  });
}

EquivReport check_forall_equivalence(int max_n) {
  return enumerate_pc(max_n, [](EquivReport& rep, const FiniteModel& m, const ChoiceFunction& cf,
                                const FormulaPtr& f) {
    bool lhs = eval_formula(mk_forall("x", f), m, cf);
    bool rhs = eval_formula(substitute(f, "x", make_tau("x", f)), m, cf);
    if (lhs != rhs) rep.violations.push_back(witness_line(m, f, "forall/tau mismatch"));
  });
}

EquivReport check_null_collapse(int max_n) {
  Signature sig = pc_signature();
  TermPtr self = parse_term("eps x. x = x", sig);
  TermPtr empty = parse_term("eps x. not (x = x)", sig);
  return enumerate_pc(max_n, [&](EquivReport& rep, const FiniteModel& m, const ChoiceFunction& cf,
                                 const FormulaPtr&) {
    if (eval_term(self, m, cf) != eval_term(empty, m, cf))
      rep.violations.push_back("null-term collapse fails on |U| = " + std::to_string(m.size()));
  });
}

AckermannReport check_ackermann(const FiniteModel& m, const ChoiceFunction& cf,
                                const std::vector<std::pair<FormulaPtr, FormulaPtr>>& pairs) {
  AckermannReport rep;
  for (auto& [f, g] : pairs) {
    ++rep.pairs;
    auto fv = free_vars(f);
    auto gv = free_vars(g);
    if (fv.size() != 1 || gv.size() != 1)
      throw SemanticsError("Ackermann check needs unary formulas");
    const std::string& x = *fv.begin();
    const std::string& y = *gv.begin();
    FormulaPtr gx = (x == y) ? g : substitute(g, y, mk_free(x));
    FormulaPtr ante = mk_forall(x, mk_iff(f, gx));
    FormulaPtr cons = mk_eq(mk_eps(x, f), mk_eps(x, gx));
    if (!eval_formula(mk_imp(ante, cons), m, cf))
      rep.violations.push_back("extensionality fails for F = " + print(f) + ", G = " + print(g));
  }
  return rep;
}

IotaResult iota_check(const FormulaPtr& phi, const FiniteModel& m, const ChoiceFunction& cf) {
  uint32_t ext = extension(phi, m, cf);
  IotaResult r;
  int count = __builtin_popcount(ext);
  if (count == 0) {
    r.status = IotaResult::Status::NoExistence;
  } else if (count > 1) {
    r.status = IotaResult::Status::NoUniqueness;
  } else {
    r.status = IotaResult::Status::Ok;
    r.element = __builtin_ctz(ext);
  }
  return r;
}

AbstractionResult abstraction_representative(const std::string& rel, const FiniteModel& m,
                                             const ChoiceFunction& cf) {
  AbstractionResult out;
  auto related = [&](int a, int b) { return m.holds(rel, {a, b}); };
  for (int a = 0; a < m.size(); ++a)
    if (!related(a, a)) {
      out.witness = "reflexivity fails at " + m.elems[a];
      return out;
    }
  for (int a = 0; a < m.size(); ++a)
    for (int b = 0; b < m.size(); ++b)
      if (related(a, b) && !related(b, a)) {
        out.witness = "symmetry fails at (" + m.elems[a] + ", " + m.elems[b] + ")";
        return out;
      }
  for (int a = 0; a < m.size(); ++a)
    for (int b = 0; b < m.size(); ++b)
      for (int c = 0; c < m.size(); ++c)
        if (related(a, b) && related(b, c) && !related(a, c)) {
          out.witness = "transitivity fails at (" + m.elems[a] + ", " + m.elems[b] + ", " +
                        m.elems[c] + ")";
          return out;
        }
  out.rep.resize(m.size());
  for (int a = 0; a < m.size(); ++a) {
    uint32_t cls = 0;
    for (int b = 0; b < m.size(); ++b)
      if (related(b, a)) cls |= 1u << b;
    out.rep[a] = cf(cls);
  }
  for (int a = 0; a < m.size(); ++a)
    for (int b = 0; b < m.size(); ++b)
      if (related(a, b) != (out.rep[a] == out.rep[b])) {
        out.witness = "representative law fails at (" + m.elems[a] + ", " + m.elems[b] + ")";
        out.rep.clear();
        return out;
      }
  out.ok = true;
  return out;
}

namespace {

struct FinitistEvaluator {
  const FinitistInterp& interp;
  const std::map<std::string, uint64_t>& env;

  uint64_t term(const TermPtr& t) {
    if (std::get_if<Bound>(&t->node))
      throw SemanticsError("loose binder index in finitist term");
    if (auto* fr = std::get_if<Free>(&t->node)) {
      auto it = env.find(fr->name);
      if (it == env.end()) throw SemanticsError("unbound variable: " + fr->name);
      return it->second;
    }
    if (std::get_if<Eps>(&t->node))
      throw SemanticsError("matrices must be eps-free");
    auto& a = std::get<App>(t->node);
    if (auto v = numeral_value(t)) return *v;
    std::vector<uint64_t> args;
    args.reserve(a.args.size());
    for (auto& x : a.args) args.push_back(term(x));
    if (a.fn == "+" && args.size() == 2) return args[0] + args[1];
    if (a.fn == "*" && args.size() == 2) return args[0] * args[1];
    if (a.fn == "pd" && args.size() == 1) return args[0] == 0 ? 0 : args[0] - 1;
    auto it = interp.funcs.find(a.fn);
    if (it == interp.funcs.end())
      throw SemanticsError("no finitist interpretation for function " + a.fn);
    return it->second(args);
  }

  bool formula(const FormulaPtr& f) {
    if (auto* p = std::get_if<Pred>(&f->node)) {
      std::vector<uint64_t> args;
      args.reserve(p->args.size());
      for (auto& x : p->args) args.push_back(term(x));
      if (p->name == "<" && args.size() == 2) return args[0] < args[1];
      if (p->name == "<=" && args.size() == 2) return args[0] <= args[1];
      auto it = interp.preds.find(p->name);
      if (it == interp.preds.end())
        throw SemanticsError("no finitist interpretation for predicate " + p->name);
      return it->second(args);
    }
    if (auto* e = std::get_if<Eq>(&f->node)) return term(e->lhs) == term(e->rhs);
    if (std::get_if<Truth>(&f->node)) return true;
    if (std::get_if<Falsity>(&f->node)) return false;
    if (auto* n = std::get_if<Not>(&f->node)) return !formula(n->sub);
    if (auto* a = std::get_if<And>(&f->node)) return formula(a->lhs) && formula(a->rhs);
    if (auto* o = std::get_if<Or>(&f->node)) return formula(o->lhs) || formula(o->rhs);
    if (auto* i = std::get_if<Imp>(&f->node)) return !formula(i->lhs) || formula(i->rhs);
    throw SemanticsError("matrices must be quantifier-free");
  }
};

}  // namespace

uint64_t finitist_eval_term(const TermPtr& t, const FinitistInterp& interp,
                            const std::map<std::string, uint64_t>& env) {
  FinitistEvaluator ev{interp, env};
  return ev.term(t);
}

bool finitist_eval_formula(const FormulaPtr& f, const FinitistInterp& interp,
                           const std::map<std::string, uint64_t>& env) {
  FinitistEvaluator ev{interp, env};
  return ev.formula(f);
}

MatrixReport verify_matrices(const std::vector<FormulaPtr>& matrices, uint64_t cap,
                             const FinitistInterp& interp) {
  MatrixReport rep;
  for (size_t i = 0; i < matrices.size(); ++i) {
    auto& mat = matrices[i];
    if (contains_quantifier(mat)) throw SemanticsError("matrices must be quantifier-free");
    if (contains_eps(mat)) throw SemanticsError("matrices must be eps-free");
    auto fv = free_vars(mat);
    std::vector<std::string> vars(fv.begin(), fv.end());
    std::vector<uint64_t> tuple(vars.size(), 0);
    for (;;) {
      std::map<std::string, uint64_t> env;
      for (size_t k = 0; k < vars.size(); ++k) env[vars[k]] = tuple[k];
      ++rep.instances;
      if (!finitist_eval_formula(mat, interp, env)) {
        rep.ok = false;
        std::string sub;
        for (size_t k = 0; k < vars.size(); ++k)
          sub += (k ? ", " : "") + vars[k] + " = " + std::to_string(tuple[k]);
        rep.counterexample =
            "matrix " + std::to_string(i + 1) + " [" + print(mat) + "] fails at " + sub;
        return rep;
      }
      if (vars.empty()) break;
      size_t k = 0;
      for (; k < tuple.size(); ++k) {
        if (++tuple[k] < cap) break;
        tuple[k] = 0;
      }
      if (k == tuple.size()) break;
    }
  }
  return rep;
}

namespace {

struct Rational {
  long long p = 0, q = 1;  // reduced, q > 0
};

bool rat_less(const Rational& a, const Rational& b) { return a.p * b.q < b.p * a.q; }
bool rat_eq(const Rational& a, const Rational& b) { return a.p == b.p && a.q == b.q; }

std::string rat_name(const Rational& r) {
  return r.q == 1 ? std::to_string(r.p) : std::to_string(r.p) + "/" + std::to_string(r.q);
}

}  // namespace

InfinitesimalReport infinitesimal_null_demo(int cap) {
  if (cap < 2) throw SemanticsError("grid cap must be at least 2");
  std::vector<Rational> grid;
  for (long long p = -cap; p <= cap; ++p)
    for (long long q = 1; q <= cap; ++q) {
      long long g = std::gcd(p < 0 ? -p : p, q);
      Rational r{p / (g ? g : 1), q / (g ? g : 1)};
      bool seen = false;
      for (auto& s : grid)
        if (rat_eq(r, s)) {
          seen = true;
          break;
        }
      if (!seen) grid.push_back(r);
    }
  std::sort(grid.begin(), grid.end(), rat_less);
  if (grid.size() > 28) throw SemanticsError("grid too fine for mask-based evaluation");

  Signature sig;
  sig.declare_fun("zero", 0);
  sig.declare_pred("pos", 1);
  sig.declare_pred("absless", 2);

  FiniteModel m;
  int zero_at = -1;
  for (size_t i = 0; i < grid.size(); ++i) {
    m.elems.push_back(rat_name(grid[i]));
    if (grid[i].p == 0) zero_at = (int)i;
  }
  m.funcs["zero"][{}] = zero_at;
  auto& pos = m.preds["pos"];
  auto& absless = m.preds["absless"];
  for (int i = 0; i < m.size(); ++i) {
    if (grid[i].p > 0) pos.insert({i});
    for (int j = 0; j < m.size(); ++j) {
      Rational ai{grid[i].p < 0 ? -grid[i].p : grid[i].p, grid[i].q};
      if (rat_less(ai, grid[j])) absless.insert({i, j});
    }
  }
  m.validate(sig);

  ChoiceFunction cf = ChoiceFunction::minimum(m.size());
  FormulaPtr notG =
      parse_formula("not (y = zero) and (forall r. pos(r) -> absless(y, r))", sig);
  FormulaPtr variant = parse_formula("forall r. pos(r) -> absless(y, r)", sig);

  InfinitesimalReport rep;
  rep.grid_size = m.size();
  uint32_t ext = extension(notG, m, cf);
  for (int i = 0; i < m.size(); ++i)
    if ((ext >> i) & 1u) rep.extension_elems.push_back(m.elems[i]);
  rep.is_null_term = ext == 0;
  TermPtr eps = mk_eps("y", notG);
  rep.epsilon_elem = m.elems[eval_term(eps, m, cf)];
  rep.iprime_true = eval_formula(substitute(mk_not(notG), "y", eps), m, cf);
  uint32_t vext = extension(variant, m, cf);
  for (int i = 0; i < m.size(); ++i)
    if ((vext >> i) & 1u) rep.variant_extension.push_back(m.elems[i]);
  return rep;
}

CpiValidityReport cpi_validity_demo(int max_n) {
  Signature sig = pc_signature();
  FormulaPtr claim = parse_formula("(eps x. x = x) = (eps x. not (x = x))", sig);
  CpiValidityReport rep;
  rep.valid_everywhere = true;
  for (int n = 1; n <= max_n; ++n) {
    auto cfs = all_choice_functions(n);
    rep.choices += (long long)cfs.size();
    for (auto& m : all_pc_models(n)) {
      ++rep.models;
      for (auto& cf : cfs)
        if (!eval_formula(claim, m, cf)) rep.valid_everywhere = false;
    }
  }
  rep.derivability_checked = false;
  return rep;
}

}  // namespace epsilon
