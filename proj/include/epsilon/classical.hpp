#pragma once

// Classical semantics over finite models with a universal choice function.
//
// An eps term denotes Phi(X) where X is the extension of its body and Phi
// is a total choice on subsets of the universe with Phi(emptyset) = Phi(U):
// all null terms collapse onto one default object. Phi is an explicit table
// over the powerset so property suites can quantify over every admissible
// choice function. Also hosts the finitist matrix checker (numerals below a
// cap, function symbols interpreted over unbounded naturals) and the
// bounded-grid infinitesimal demonstration.

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "epsilon/syntax.hpp"

namespace epsilon {

struct SemanticsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Finite first-order structure. Elements are indices 0..size-1; `elems`
// holds their display names. Equality is identity of indices.
struct FiniteModel {
  std::vector<std::string> elems;
  std::map<std::string, std::map<std::vector<int>, int>> funcs;
  std::map<std::string, std::set<std::vector<int>>> preds;

  int size() const { return static_cast<int>(elems.size()); }
  uint32_t full_mask() const { return (1u << elems.size()) - 1; }
  int fn(const std::string& name, const std::vector<int>& args) const;
  bool holds(const std::string& name, const std::vector<int>& args) const;
  int elem_index(const std::string& name) const;  // -1 when absent
  // Checks totality of every declared symbol and range of every table entry.
  void validate(const Signature& sig) const;
};

// Total choice on subsets of 0..n-1 as bitmasks. Invariants: table[m] is a
// member of m for every nonempty m, and table[0] == table[full]. Large
// universes (n > 16) fall back to the least-member rule instead of a table.
struct ChoiceFunction {
  int n = 0;
  std::vector<int> table;
  bool lazy_min = false;

  int operator()(uint32_t mask) const;
  void validate() const;
  static ChoiceFunction minimum(int n);  // least member; default everywhere
};

// Every admissible choice function, deterministic order (mask-major,
// element ascending). Sizes: n=1 -> 1, n=2 -> 2, n=3 -> 24.
std::vector<ChoiceFunction> all_choice_functions(int n);
long long count_choice_functions(int n);  // closed-form product, cross-check

using Valuation = std::map<std::string, int>;

int eval_term(const TermPtr& t, const FiniteModel& m, const ChoiceFunction& cf,
              const Valuation& env = {});
bool eval_formula(const FormulaPtr& f, const FiniteModel& m, const ChoiceFunction& cf,
                  const Valuation& env = {});

// { a in U : phi(a) } for phi with exactly one free variable, as a bitmask.
uint32_t extension(const FormulaPtr& phi, const FiniteModel& m, const ChoiceFunction& cf);

// Enumeration of all models of a given size over {P/1, c/0}.
Signature pc_signature();
std::vector<FiniteModel> all_pc_models(int n);

struct EquivReport {
  long long models = 0;
  long long choices = 0;
  long long instances = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// Exhaustive over all {P/1, c/0} models with size <= max_n and all choice
// functions: exists x. F  agrees with  F(eps x. F) for a fixed battery of
// unary formulas.
EquivReport check_exists_equivalence(int max_n);
// Same enumeration for  forall x. F  against  F(eps x. not F).
EquivReport check_forall_equivalence(int max_n);
// Same enumeration: eps x. (x = x) and eps x. not (x = x) always coincide.
EquivReport check_null_collapse(int max_n);

struct AckermannReport {
  long long pairs = 0;
  bool structurally_guaranteed = true;  // Phi sees only the extension set
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

// forall x (F <-> G) -> eps_F = eps_G for each (F, G); F, G with one free
// variable. True by construction for extension-determined Phi.
AckermannReport check_ackermann(const FiniteModel& m, const ChoiceFunction& cf,
                                const std::vector<std::pair<FormulaPtr, FormulaPtr>>& pairs);

// Definite description: only defined when the extension is a singleton.
struct IotaResult {
  enum class Status { Ok, NoExistence, NoUniqueness };
  Status status = Status::NoExistence;
  int element = -1;
  bool ok() const { return status == Status::Ok; }
};
IotaResult iota_check(const FormulaPtr& phi, const FiniteModel& m, const ChoiceFunction& cf);

// Representative-of-class map rep(a) = Phi({b : b ~ a}) for a binary
// predicate interpreted in m. Fails with a witness when the relation is not
// an equivalence or when the representative law a~b <-> rep(a)=rep(b) breaks
// (it cannot, for an equivalence relation and extensional Phi).
struct AbstractionResult {
  bool ok = false;
  std::string witness;
  std::vector<int> rep;
};
AbstractionResult abstraction_representative(const std::string& rel, const FiniteModel& m,
                                             const ChoiceFunction& cf);

// Finitist interpretation over unbounded naturals. Builtins: numerals,
// + * pd < <= and =; entries here add interpretations for extra symbols
// (Skolem functions and constants).
struct FinitistInterp {
  std::map<std::string, std::function<uint64_t(const std::vector<uint64_t>&)>> funcs;
  std::map<std::string, std::function<bool(const std::vector<uint64_t>&)>> preds;
};

uint64_t finitist_eval_term(const TermPtr& t, const FinitistInterp& interp,
                            const std::map<std::string, uint64_t>& env = {});
bool finitist_eval_formula(const FormulaPtr& f, const FinitistInterp& interp,
                           const std::map<std::string, uint64_t>& env = {});

struct MatrixReport {
  long long instances = 0;
  bool ok = true;
  std::string counterexample;  // matrix index, substitution and formula text
};

// Substitutes every tuple of numerals below cap into each quantifier-free,
// eps-free matrix and evaluates. Values themselves are not truncated: the
// interpretation runs over unbounded naturals, only substituted numerals
// stay below cap.
MatrixReport verify_matrices(const std::vector<FormulaPtr>& matrices, uint64_t cap,
                             const FinitistInterp& interp);

// Bounded grid of reduced rationals p/q with |p| <= cap, 1 <= q <= cap.
// The would-be infinitesimal predicate
//   notG(y) := not (y = zero) and (forall r. pos(r) -> absless(y, r))
// has empty extension on every such grid, so eps y. notG(y) is a null term
// and G(eps_notG) holds vacuously. Dropping the nonzero conjunct leaves
// exactly {0}.
struct InfinitesimalReport {
  int grid_size = 0;
  std::vector<std::string> extension_elems;  // expected empty
  bool is_null_term = false;
  std::string epsilon_elem;  // where the null term falls: Phi(U)
  bool iprime_true = false;  // G(eps_notG)
  std::vector<std::string> variant_extension;  // without y != zero, expected {"0"}
};
InfinitesimalReport infinitesimal_null_demo(int cap);

// Validity half of the incompleteness witness: eps x. (x=x) = eps x. not (x=x)
// is true in every model under every admissible Phi (both sides are Phi(U));
// derivability is a calculus question this report does not touch.
struct CpiValidityReport {
  long long models = 0;
  long long choices = 0;
  bool valid_everywhere = false;
  bool derivability_checked = false;  // by design
};
CpiValidityReport cpi_validity_demo(int max_n);

}  // namespace epsilon
