#pragma once

// Term and formula syntax for an epsilon-calculus kernel.
//
// Binders (forall, exists, eps) store their body with canonical indices:
// a Bound{k} refers to the k-th enclosing binder, innermost first. Names
// exist only at the parse/print boundary; each binder keeps a `hint` used
// for printing and ignored by equality, so alpha-equivalence is plain
// structural equality. Free variables are named nodes and are never
// captured: substitution under a binder cannot collide with Bound indices.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace epsilon {

struct Term;
struct Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Bound {
  int index = 0;
};
struct Free {
  std::string name;
};
struct App {  // function application; constants are 0-ary, numerals are digit-named constants
  std::string fn;
  std::vector<TermPtr> args;
};
struct Eps {  // eps x. body, binds Bound{0} of body
  FormulaPtr body;
  std::string hint;
};

struct Term {
  std::variant<Bound, Free, App, Eps> node;
};

struct Pred {
  std::string name;
  std::vector<TermPtr> args;
};
struct Eq {
  TermPtr lhs, rhs;
};
struct Truth {};
struct Falsity {};
struct Not {
  FormulaPtr sub;
};
struct And {
  FormulaPtr lhs, rhs;
};
struct Or {
  FormulaPtr lhs, rhs;
};
struct Imp {
  FormulaPtr lhs, rhs;
};
struct Forall {
  FormulaPtr body;
  std::string hint;
};
struct Exists {
  FormulaPtr body;
  std::string hint;
};

struct Formula {
  std::variant<Pred, Eq, Truth, Falsity, Not, And, Or, Imp, Forall, Exists> node;
};

struct SyntaxError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Node factories.
TermPtr mk_bound(int index);
TermPtr mk_free(const std::string& name);
TermPtr mk_app(const std::string& fn, std::vector<TermPtr> args = {});
TermPtr mk_const(const std::string& name);  // alias for 0-ary mk_app
TermPtr mk_numeral(uint64_t n);
TermPtr mk_eps_raw(FormulaPtr body, const std::string& hint);  // body already canonical

FormulaPtr mk_pred(const std::string& name, std::vector<TermPtr> args = {});
FormulaPtr mk_eq(TermPtr lhs, TermPtr rhs);
FormulaPtr mk_truth();
FormulaPtr mk_falsity();
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_and(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_or(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_imp(FormulaPtr l, FormulaPtr r);
FormulaPtr mk_iff(FormulaPtr l, FormulaPtr r);  // (l -> r) and (r -> l)
FormulaPtr mk_forall_raw(FormulaPtr body, const std::string& hint);
FormulaPtr mk_exists_raw(FormulaPtr body, const std::string& hint);

// Binder construction from a named free variable: abstracts every free
// occurrence of `var` in `f` and wraps the binder.
FormulaPtr mk_forall(const std::string& var, FormulaPtr f);
FormulaPtr mk_exists(const std::string& var, FormulaPtr f);
TermPtr mk_eps(const std::string& var, FormulaPtr f);

// Numerals are digit-named nullary constants.
bool is_numeral(const std::string& name);
std::optional<uint64_t> numeral_value(TermPtr t);

// Total structural order ignoring binder hints; 0 iff alpha-equal.
int compare(const TermPtr& a, const TermPtr& b);
int compare(const FormulaPtr& a, const FormulaPtr& b);
bool alpha_eq(const TermPtr& a, const TermPtr& b);
bool alpha_eq(const FormulaPtr& a, const FormulaPtr& b);

struct TermLess {
  bool operator()(const TermPtr& a, const TermPtr& b) const { return compare(a, b) < 0; }
};
struct FormulaLess {
  bool operator()(const FormulaPtr& a, const FormulaPtr& b) const { return compare(a, b) < 0; }
};

// Free named variables.
std::set<std::string> free_vars(const FormulaPtr& f);
std::set<std::string> free_vars(const TermPtr& t);
// All function/constant names occurring (including inside eps bodies).
std::set<std::string> function_symbols(const FormulaPtr& f);
std::set<std::string> function_symbols(const TermPtr& t);
std::set<std::string> predicate_symbols(const FormulaPtr& f);
std::set<std::string> predicate_symbols(const TermPtr& t);

// Capture-free substitution of a term for a named free variable.
FormulaPtr substitute(const FormulaPtr& f, const std::string& var, const TermPtr& t);
TermPtr substitute(const TermPtr& in, const std::string& var, const TermPtr& t);

// Replace every occurrence of a closed term `from` by `to` (both closed).
FormulaPtr replace_term(const FormulaPtr& f, const TermPtr& from, const TermPtr& to);
TermPtr replace_term(const TermPtr& in, const TermPtr& from, const TermPtr& to);

// Opens a binder body: Bound{0} becomes `t` (t must not contain loose Bound indices).
FormulaPtr open_binder(const FormulaPtr& body, const TermPtr& t);

// Maximum nesting depth of eps binders; 0 when eps-free.
int epsilon_rank(const FormulaPtr& f);
int epsilon_rank(const TermPtr& t);

// A formula/term is proper when every eps subterm is closed standalone:
// no named free variable and no binder reference escaping the eps body.
bool is_proper(const FormulaPtr& f);
bool is_proper(const TermPtr& t);

// Collect distinct eps subterms, outermost and innermost alike, in
// deterministic (structural) order.
std::vector<TermPtr> epsilon_subterms(const FormulaPtr& f);
std::vector<TermPtr> epsilon_subterms(const TermPtr& t);
bool contains_eps(const FormulaPtr& f);
bool contains_eps(const TermPtr& t);
bool contains_quantifier(const FormulaPtr& f);

// Dual operator tau_x F(x) := eps x. not F(x); picks a non-witness.
TermPtr make_tau(const std::string& var, FormulaPtr f);

// Expansion eps x. F(x) = eta_x(exists y. F(y) -> F(x)): the eta body's
// extension is never empty, which is what motivates the empty-case
// convention for eps itself. Returns the expanded eps term.
TermPtr eta_expansion(const std::string& var, FormulaPtr f);

// Signature: declared function and predicate symbols with arities.
// Equality is builtin; numerals are implicit constants. `arithmetic`
// additionally enables the builtin <, <= predicates and +, *, pd symbols
// with infix parsing for + and *.
struct Signature {
  std::map<std::string, int> funcs;
  std::map<std::string, int> preds;
  bool arithmetic = false;

  void declare_fun(const std::string& name, int arity);
  void declare_pred(const std::string& name, int arity);
  std::optional<int> fun_arity(const std::string& name) const;
  std::optional<int> pred_arity(const std::string& name) const;
  static Signature with_arithmetic();
};

}  // namespace epsilon
