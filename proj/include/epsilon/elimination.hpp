#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "epsilon/kernel.hpp"

namespace epsilon {

// Elimination of choice terms from proper derivations: repeatedly trade an
// innermost eps x B for a fresh constant a under the discharged hypothesis
// (exists x B) -> B(a), then remove the hypotheses by case analysis on
// exists x B.  Premises and conclusion must stay untouched, so both are
// required to be free of the eliminated terms.

struct EliminationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Distinct epsilon subterms over every line, deterministic order.
std::vector<TermPtr> derivation_epsilon_terms(const Derivation& d);

// Smallest unused constant from the reserved namespace a0, a1, ...
std::string fresh_elimination_constant(const Derivation& d);

struct EliminationStep {
  Derivation out;        // proves h -> psi (or psi unchanged for the identity case)
  FormulaPtr h;          // (exists x B) -> B(a); null when target did not occur
  std::string constant;  // the fresh a; empty when target did not occur
  TermPtr target;
};

// One round: substitute `target` (innermost: its body is epsilon-free) by a
// fresh constant throughout and rebuild every justification.  The input must
// check under CP_eps_star and use no quantifier rules; order-axiom lines
// anchored on the target are refused (their content is about the least
// witness, which no fresh constant can imitate).
EliminationStep eliminate_one_epsilon(const Derivation& d, const TermPtr& target);

// Full elimination: iterate innermost-first until no epsilon terms remain,
// then discharge the accumulated hypotheses outermost-first.  The result
// proves the same conclusion and checks under CP.  When given, `trace`
// receives one line per round (target, fresh constant, line counts) and one
// per discharged hypothesis.
Derivation second_epsilon_theorem(const Derivation& d, std::vector<std::string>* trace = nullptr);

// Verification of a claimed quantifier-free entailment: each candidate
// instance must be the matrix of its prenex source under the stated
// substitution, and the instances of the premises (plus explicit equality
// axioms) must tautologically entail the disjunction of the goal instances.
// No search is performed.
struct MatrixInstance {
  int source = -1;                     // index into sigma; -1 marks a goal instance
  std::map<std::string, TermPtr> sub;  // prefix variable -> closed term
  FormulaPtr formula;                  // the claimed instance
};

struct FirstTheoremReport {
  bool ok = false;        // every instance and axiom verified
  bool entailed = false;  // the propositional entailment holds
  std::vector<std::string> errors;
  std::string countervaluation;  // atom assignment refuting the entailment
  long long valuations = 0;      // truth-table rows examined
};

FirstTheoremReport first_theorem_instance_check(const std::vector<FormulaPtr>& sigma,
                                                const FormulaPtr& goal,
                                                const std::vector<MatrixInstance>& instances,
                                                const std::vector<FormulaPtr>& equality_axioms = {});

}  // namespace epsilon
