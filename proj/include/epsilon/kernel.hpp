#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "epsilon/syntax.hpp"

namespace epsilon {

// Hilbert-style proof checker.  A derivation is a list of closed formulas,
// each carrying a justification that the checker can verify locally:
// premises, propositional tautologies (decided by truth table over the
// maximal non-propositional subformulas), axiom-schema instances, modus
// ponens, and the two quantifier rules with an eigenconstant side condition.

struct KernelError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Rule {
  Premise,   // undischarged assumption
  Taut,      // propositional tautology
  TautCons,  // tautological consequence of earlier lines (refs)
  MP,        // modus ponens: refs = {implication line, antecedent line}
  Inst,      // (forall x F) -> F(t), witness t
  Exi,       // F(t) -> (exists x F), witness t
  Exe,       // from F(a) -> C infer (exists x F) -> C; refs={i}, eigenconstant c
  Gen,       // from C -> F(a) infer C -> (forall x F); refs={i}, eigenconstant c
  Eps,       // critical formula F(t) -> F(eps x F), witness t
  EpsEx,     // existential form: (exists x F) -> F(eps x F)
  Eps2,      // extensionality: (forall x (F <-> G)) -> eps x F = eps x G
  EqRefl,    // t = t
  EqSym,     // t = u -> u = t
  EqSubst,   // t = u -> (F -> G), G replaces some occurrences of t in F by u
  E1,        // order axiom: not A(eps x A) -> not A(t), witness t
  E2,        // order axiom: eps x A = t + 1 -> not A(t), witness t
};

std::string rule_name(Rule r);

struct Justification {
  Rule rule = Rule::Premise;
  std::vector<int> refs;  // 0-based indices of earlier lines
  TermPtr t;              // witness term (inst/exi/eps/e1/e2)
  std::string c;          // eigenconstant (exe/gen)
};

Justification j_premise();
Justification j_taut();
Justification j_tautcons(std::vector<int> refs);
Justification j_mp(int imp_line, int ante_line);
Justification j_inst(TermPtr t);
Justification j_exi(TermPtr t);
Justification j_exe(int line, std::string c);
Justification j_gen(int line, std::string c);
Justification j_eps(TermPtr t);
Justification j_epsex();
Justification j_eps2();
Justification j_eqrefl();
Justification j_eqsym();
Justification j_eqsubst();
Justification j_e1(TermPtr t);
Justification j_e2(TermPtr t);

struct Line {
  FormulaPtr formula;
  Justification just;
  std::string label;  // optional display tag
};

struct Derivation {
  Signature sig;
  std::vector<Line> lines;

  FormulaPtr conclusion() const;
  void add(FormulaPtr f, Justification j, std::string label = "");
};

// Calculi differ in which justifications they admit and which formulas may
// appear on a line at all.
//   CP          quantifier calculus, no epsilon anywhere
//   CP_eps      CP plus the epsilon schemas (critical, existential form,
//               extensionality, and the two arithmetic order axioms)
//   CP_eps_star CP_eps without extensionality; every line must be proper
//               (no free-variable capture inside an epsilon scope)
//   CE          elementary calculus: quantifier-free lines, propositional
//               and equality reasoning only (epsilon terms may occur)
//   CPI_eps     intuitionistic variant; check() refuses, see message
enum class Profile { CP, CP_eps, CP_eps_star, CE, CPI_eps };

std::string profile_name(Profile p);

struct CheckReport {
  bool ok = false;
  int bad_line = -1;    // 0-based index of the first failing line
  std::string message;  // empty when ok
  long long checked = 0;
};

CheckReport check(const Derivation& d, Profile profile);
void check_or_throw(const Derivation& d, Profile profile);

// Critical formulas F(t) -> F(eps x F) appearing as (eps)-justified lines,
// in line order.  These are the inputs the substitution method consumes.
struct CriticalFormula {
  FormulaPtr formula;
  TermPtr eps_term;
  TermPtr witness;
  int line = -1;
};

std::vector<CriticalFormula> critical_formulas(const Derivation& d);

// Truth-table procedures.  Atoms are the maximal subformulas that are not
// propositional connectives (predicates, equalities, quantified formulas);
// distinct atoms are counted up to alpha-equivalence.  Throws KernelError
// above max_atoms distinct atoms.
bool is_tautology(const FormulaPtr& f, int max_atoms = 20);
bool tautological_consequence(const std::vector<FormulaPtr>& premises, const FormulaPtr& f,
                              int max_atoms = 20);

// The distinct atoms of a formula set (alpha-deduplicated, deterministic
// order) and evaluation of the propositional skeleton under an assignment
// to those atoms.  Used to report countervaluations.
std::vector<FormulaPtr> propositional_atoms(const std::vector<FormulaPtr>& fs);
bool eval_propositional(const FormulaPtr& f,
                        const std::map<FormulaPtr, bool, FormulaLess>& valuation);

// Match eps_side as B[x := e] and wit_side as B[x := w] for some closed
// epsilon term e = eps x B; returns e (null when no match).  This is the
// shape shared by the critical formula and order-axiom schemas.
TermPtr match_critical_instance(const FormulaPtr& eps_side, const FormulaPtr& wit_side,
                                const TermPtr& witness);

// Schema matchers, exposed for reuse by the elimination translation.
bool is_eq_reflexivity(const FormulaPtr& f);
bool is_eq_symmetry(const FormulaPtr& f);
bool is_eq_substitution(const FormulaPtr& f);

// G obtainable from F by replacing some (possibly zero) occurrences of the
// closed term t with u.
bool rewrites_to(const FormulaPtr& F, const FormulaPtr& G, const TermPtr& t, const TermPtr& u);

}  // namespace epsilon
