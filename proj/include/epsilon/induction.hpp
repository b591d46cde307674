#pragma once

#include "epsilon/hsubst.hpp"
#include "epsilon/kernel.hpp"

namespace epsilon {

// Replay of the induction derivation: from the premises A(0) and
// forall x (A(x) -> A(x+1)) derive A(s) for s = eps x (not A(x)), splitting
// on s = 0 versus s = pd(s) + 1 and using the order axiom
// (s = t+1) -> not not A(t) with t = pd(s) to close the successor branch.

struct InductionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InductionReport {
  Derivation derivation;
  CheckReport check;       // under CP_eps, or CP_eps_star in proper mode
  bool proper_mode = false;
  bool line8_shape_ok = false;   // the "(8)" line is literally (s = t+1) -> not not A(t)
  std::vector<bool> line_truth;  // least-witness evaluation of every line
  bool all_lines_true = false;
  uint64_t cap = 12;
  TermPtr s, t;
};

// `a` has exactly the free variable `var`.  The derivation carries the
// labels "(1)"–"(10)" on the milestone lines and "(aux)" on the
// equality/instantiation glue.
InductionReport replay_induction(const FormulaPtr& a, const std::string& var,
                                 bool proper_mode = false, uint64_t cap = 12);

}  // namespace epsilon
