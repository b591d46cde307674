#pragma once

// Heyting-algebra semantics over finite topological spaces: predicate
// extensions are open sets, negation is interior-of-complement, implication
// is the relative pseudo-complement. Quantifiers are read generically (the
// one free variable ranges over a one-point index set), so forall x. F and
// exists x. F both take the value of F; equality and eps-terms have no
// topological reading here and are rejected.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "epsilon/classical.hpp"  // SemanticsError
#include "epsilon/syntax.hpp"

namespace epsilon {

struct FiniteTopSpace {
  int n = 0;                    // points 0..n-1
  std::vector<std::string> names;
  std::vector<uint32_t> opens;  // sorted, unique, contains 0 and full_mask()

  uint32_t full_mask() const { return n >= 32 ? ~0u : (1u << n) - 1; }
  bool is_open(uint32_t x) const;
  // Family axioms: empty and full present, closed under union and
  // intersection.
  void validate() const;

  uint32_t interior(uint32_t x) const;  // largest open inside x
  uint32_t closure(uint32_t x) const;   // smallest closed set containing x
  uint32_t neg(uint32_t x) const { return interior(full_mask() & ~x); }
  uint32_t imp(uint32_t x, uint32_t y) const { return interior((full_mask() & ~x) | y); }
  bool is_clopen(uint32_t x) const { return is_open(x) && is_open(full_mask() & ~x); }

  std::string set_name(uint32_t x) const;  // "{a, b}" for reports
};

// Convenience: points "a", "b", ... with the given opens.
FiniteTopSpace make_space(int n, std::vector<uint32_t> opens);

// Every topology on n labeled points (n <= 4). Counts: 1, 4, 29, 355.
std::vector<FiniteTopSpace> all_topologies(int n);

// Predicate name -> open extension. Arguments of a predicate are ignored:
// under the generic reading the extension already is the truth value.
using OpenInterp = std::map<std::string, uint32_t>;

// Value of phi as an open set. Throws on non-open extensions, equality,
// eps-terms.
uint32_t heyting_eval(const FormulaPtr& phi, const FiniteTopSpace& sp, const OpenInterp& interp);

// (X, interior(closure(X))): the semantic spread between F and not not F.
std::pair<uint32_t, uint32_t> double_negation_gap(const FiniteTopSpace& sp, uint32_t x);

// Markov's principle, checked conditionally: when forall x (not not F -> F)
// is full-space, not forall x F -> exists x (not F) must be too.
struct MarkovReport {
  uint32_t antecedent = 0;
  uint32_t conclusion = 0;
  bool antecedent_full = false;
  bool conclusion_full = false;
  bool violated = false;  // antecedent full but conclusion not
};
MarkovReport markov_check(const FiniteTopSpace& sp, const OpenInterp& interp, const FormulaPtr& f);

}  // namespace epsilon
