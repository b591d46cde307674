#pragma once

// Quantifier elimination into eps terms, prenexing, and resolution of
// prenex axioms into quantifier-free matrices over fresh defined symbols.

#include <string>
#include <vector>

#include "epsilon/syntax.hpp"

namespace epsilon {

struct TransformError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Mode { Classical, Intuitionistic };

struct TraceEvent {
  std::string rule;
  std::string before;
  std::string after;
};
using Trace = std::vector<TraceEvent>;

// exists x. F(x)  =>  F(eps x. F(x)); input must be an existential formula.
FormulaPtr existential_to_epsilon(const FormulaPtr& f, Trace* trace = nullptr);

// forall x. F(x)  =>  F(eps x. not F(x)); classical only. The intuitionistic
// refusal names the Markov principle, whose admissibility this rule needs.
FormulaPtr universal_to_epsilon(const FormulaPtr& f, Mode mode, Trace* trace = nullptr);

// Innermost-first full translation; output contains no quantifier nodes.
FormulaPtr epsilon_translate(const FormulaPtr& f, Mode mode, Trace* trace = nullptr);

enum class Quant { Forall, Exists };

struct PrenexForm {
  std::vector<std::pair<Quant, std::string>> prefix;  // outermost first; names distinct
  FormulaPtr matrix;                                  // prefix variables appear free

  FormulaPtr attach() const;  // rebind the prefix around the matrix
};

// Pulls quantifiers left to right with standard renaming; the input must be
// eps-free (prenex commutations are not valid across choice terms).
PrenexForm prenex(const FormulaPtr& f, Trace* trace = nullptr);

struct SkolemDef {
  std::string name;
  std::vector<std::string> params;  // preceding universal variables, outermost first
  TermPtr definition;               // eps term with exactly `params` free
};

struct SkolemResolution {
  std::vector<FormulaPtr> axioms;  // universal-prefix forms over the extended signature
  std::vector<SkolemDef> defs;     // one entry per introduced symbol, in introduction order
  Signature extended;              // input signature plus introduced symbols
};

// Replaces each prenex existential by a fresh symbol applied to the
// universals before it; the defining eps term closes over the remainder of
// the prefix. Constants are named s, s1, ...; functions g, g1, ...
SkolemResolution skolem_resolve(const std::vector<FormulaPtr>& axioms, const Signature& sig,
                                Trace* trace = nullptr);

// Quantifier-free matrices with the prefix variables exposed as free names.
std::vector<FormulaPtr> matrices(const std::vector<FormulaPtr>& axioms, Trace* trace = nullptr);

}  // namespace epsilon
