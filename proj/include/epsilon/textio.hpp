#pragma once

// Text formats for every structured input the command-line tool consumes:
// formula files, finite-model files, Kripke structure files, topological
// space files, derivation files and critical-formula problem files.
//
// All formats share a line discipline: '#' starts a comment running to the
// end of the line, blank lines are skipped, and tokens are whitespace
// separated. Signature directives are shared too: `arith` switches on the
// arithmetic reading (numerals, + * pd, < <=), `fun NAME ARITY` and
// `pred NAME ARITY` declare symbols. See README for the grammar of each
// format and examples.

#include <cstdint>
#include <string>
#include <vector>

#include "epsilon/classical.hpp"
#include "epsilon/heyting.hpp"
#include "epsilon/hsubst.hpp"
#include "epsilon/kernel.hpp"
#include "epsilon/kripke.hpp"
#include "epsilon/syntax.hpp"

namespace epsilon {

struct TextioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Whole file as a string; throws TextioError when unreadable.
std::string read_text_file(const std::string& path);

// --- formula files ---------------------------------------------------------
// Directives: arith, fun, pred, then one `formula <text>` line per formula.
struct FormulaFile {
  Signature sig;
  std::vector<FormulaPtr> formulas;
};
FormulaFile parse_formula_file(const std::string& text);
FormulaFile read_formula_file(const std::string& path);

// --- finite model files ------------------------------------------------------
// elems NAME...            universe in display order
// fun NAME ARG... = VALUE  one table row (arity = number of ARGs)
// fun NAME                 declare an empty-but-known function symbol
// pred NAME ARG...         one held tuple
// pred NAME                declare an empty predicate
// phi { NAME... } = NAME   optional explicit choice rows; omitted nonempty
//                          subsets fall back to the least member, and the
//                          empty set is forced onto phi(U).
struct ModelFile {
  Signature sig;  // inferred from the tables
  FiniteModel model;
  bool has_phi = false;
  ChoiceFunction phi;  // minimum when has_phi is false
};
ModelFile parse_model_file(const std::string& text);
ModelFile read_model_file(const std::string& path);

// --- Kripke structure files --------------------------------------------------
// worlds NAME...           first name is the real world
// reach FROM TO            extra edges (reflexive closure is implicit)
// elems NAME...            rigid constant pool
// dom WORLD NAME...        per-world domain (must grow along reach)
// pred NAME WORLD ARG...   a tuple held at a world (persists upward)
// const NAME = ELEM        rigid constant interpretation
// The per-world tables are completed monotonically: a row at a world is
// copied to every world it reaches.
struct KripkeFile {
  Signature sig;
  KripkeStructure ks;
};
KripkeFile parse_kripke_file(const std::string& text);
KripkeFile read_kripke_file(const std::string& path);

// --- topological space files -------------------------------------------------
// points NAME...
// open { NAME... }         one open set per line; {} is the empty set
// ext PRED { NAME... }     open extension of a predicate symbol
struct SpaceFile {
  FiniteTopSpace space;
  OpenInterp interp;
};
SpaceFile parse_space_file(const std::string& text);
SpaceFile read_space_file(const std::string& path);

// --- derivation files --------------------------------------------------------
// profile NAME             CP | CP_eps | CP_eps_star | CE | CPI_eps
// declarations as above, then numbered lines
//   N. FORMULA ; JUSTIFICATION [; LABEL]
// numbered consecutively from 1. Justifications use 1-based line references:
//   premise | taut | tautcons N... | mp N N | inst TERM | exi TERM
//   | exe N CONST | gen N CONST | eps TERM | epsex | eps2
//   | eqrefl | eqsym | eqsubst | e1 TERM | e2 TERM
struct DerivationFile {
  Profile profile = Profile::CP;
  Derivation derivation;
};
DerivationFile parse_derivation_file(const std::string& text);
DerivationFile read_derivation_file(const std::string& path);

// Renders a derivation back into the file format (without the header
// directives); parse_derivation_file round-trips it.
std::string show_derivation(const Derivation& d);
std::string show_justification(const Justification& j);  // 1-based references
// Complete re-parseable file: profile and signature directives, then lines.
std::string show_derivation_file(Profile p, const Derivation& d);

// --- critical-formula problem files -------------------------------------------
// declarations as above, then one line per critical formula:
//   critical FORMULA ; eps TERM ; wit TERM
struct ProblemFile {
  Signature sig;
  std::vector<CriticalFormula> criticals;
};
ProblemFile parse_problem_file(const std::string& text);
ProblemFile read_problem_file(const std::string& path);

}  // namespace epsilon
