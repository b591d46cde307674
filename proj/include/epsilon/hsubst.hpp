#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "epsilon/kernel.hpp"

namespace epsilon {

// The substitution method: evaluate arithmetic epsilon terms by trial
// assignments, repairing a false critical formula by moving its epsilon
// term to the least witness and resetting every assignment that mentioned
// the repaired term, until all critical formulas hold.

struct HsubstError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using EpsAssignment = std::map<TermPtr, uint64_t, TermLess>;

// Least-witness evaluation over the natural numbers with quantifiers and
// unassigned choice terms bounded to [0, cap).  Builtins: numerals, + , * ,
// pd (predecessor, pd(0) = 0) and the relations = < <=.  A choice term
// found in `assignment` reads its value from there; otherwise it takes the
// least member of its extension below cap, defaulting to 0 (recorded in
// `defaulted`) when the extension is empty.
struct LeastNumberEval {
  uint64_t cap = 12;
  const EpsAssignment* assignment = nullptr;
  std::set<std::string> defaulted;

  LeastNumberEval() = default;
  explicit LeastNumberEval(uint64_t c, const EpsAssignment* a = nullptr)
      : cap(c), assignment(a) {}

  uint64_t term(const TermPtr& t);
  bool formula(const FormulaPtr& f);

 private:
  std::vector<uint64_t> stack_;
};

// Semantic battery for the order axioms under least-witness evaluation:
//   not F(eps x F) -> not F(t)        for every t < cap
//   (eps x F) = t + 1 -> not F(t)     for every t < cap
//   F(a) -> (eps x F) <= a            for every a < cap (minimality)
struct OrderAxiomReport {
  long long checks = 0;
  uint64_t eps_value = 0;
  bool defaulted = false;  // empty extension, value fell back to 0
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

OrderAxiomReport check_order_axioms(const FormulaPtr& f, const std::string& var, uint64_t cap);

// One solver step: a repair moves an epsilon term to the least witness
// compatible with the triggering critical formula; a reset zeroes a term
// whose meaning depended on the repaired one.
struct RepairEvent {
  TermPtr term;
  uint64_t old_value = 0;
  uint64_t new_value = 0;
  int critical = -1;  // index of the triggering critical formula
  std::string kind;   // "repair" or "reset"
};

struct SolveResult {
  bool resolved = false;
  EpsAssignment assignment;
  std::vector<RepairEvent> history;
  long long iterations = 0;  // number of repairs
  std::vector<std::string> notes;
};

// Run the method on critical formulas F(t) -> F(eps x F) (as produced by
// critical_formulas): start from the zero assignment, repeatedly repair the
// lowest-index false critical formula.  Epsilon nesting depth at most 2.
// max_iter == 0 selects the default budget 10 * cap * (number of eps terms).
SolveResult hsubst_solve(const std::vector<CriticalFormula>& criticals, uint64_t cap,
                         long long max_iter = 0);

std::string show_assignment(const EpsAssignment& s);

}  // namespace epsilon
