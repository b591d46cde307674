#pragma once

// Kripke semantics over finite preorder frames with growing domains and
// monotone predicate interpretations. eps-terms denote through world-indexed
// choice functions; atoms containing them are forced at M only when they
// hold at every accessible world, which keeps persistence intact. The LEM
// search below rebuilds, by exhaustive enumeration, the collapse argument:
// requiring both the existence schema and the extensionality schema to be
// forced at the real world leaves no structure refuting excluded middle,
// while the existence schema alone does not.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "epsilon/classical.hpp"  // SemanticsError, Valuation
#include "epsilon/heyting.hpp"
#include "epsilon/syntax.hpp"

namespace epsilon {

using Reach = std::vector<std::vector<bool>>;

struct KripkeStructure {
  std::vector<std::string> worlds;  // index 0 is the real world M0
  Reach reach;                      // reflexive; transitive unless the flag is off
  bool require_transitive = true;
  std::vector<std::string> elems;   // rigid constant pool shared by all worlds
  std::vector<uint32_t> dom;        // per-world element mask, nonempty, grows along reach
  // predicate name -> per-world tuple sets (monotone along reach)
  std::map<std::string, std::vector<std::set<std::vector<int>>>> preds;
  std::map<std::string, int> consts;  // constant symbol -> element, rigid

  int size() const { return (int)worlds.size(); }
  bool reaches(int a, int b) const { return reach[a][b]; }
  bool in_dom(int w, int e) const { return e >= 0 && e < (int)elems.size() && ((dom[w] >> e) & 1u); }
  void validate() const;
};

// World-indexed choice: canonical text of a closed eps-term -> world -> element.
struct WorldChoice {
  std::map<std::string, std::map<int, int>> table;
  static std::string key(const TermPtr& eps_term);
  void set(const TermPtr& eps_term, int world, int elem) { table[key(eps_term)][world] = elem; }
};

// Forcing at a world. env elements must lie in the world's domain; eps-terms
// must be closed and covered by wc at every world where they are evaluated.
bool kripke_force(const KripkeStructure& ks, int world, const FormulaPtr& phi,
                  const WorldChoice& wc = {}, const Valuation& env = {});

// The three admissibility conditions on a choice entry f_F: defined exactly
// where F's constants are, valued in the local domain, and picking a witness
// whenever the existential is forced.
struct ChoiceReport {
  long long checks = 0;
  std::vector<std::string> violations;  // "(F, M): ..." witnesses
  bool ok() const { return violations.empty(); }
};
ChoiceReport validate_world_choice(const KripkeStructure& ks, const std::vector<TermPtr>& working,
                                   const WorldChoice& wc);

// All reflexive-transitive accessibility matrices on n labeled worlds.
// Counts agree with all_topologies: 1, 4, 29, 355.
std::vector<Reach> all_preorders(int n);

// Opens = up-closed world sets; forcing of propositional formulas agrees
// with heyting_eval over this space.
FiniteTopSpace up_set_topology(const KripkeStructure& ks);

// Exhaustive excluded-middle search. Working set: A(x) = (x = c0) or alpha,
// B(x) = (x = c1) or alpha, with alpha ranging over P(c0), P(c1). For every
// structure within bounds and every world-choice admissible per the
// existence schema at M0, records whether alpha or not alpha is forced at
// M0, with and without the extensionality requirement. The primary reading
// takes "the extensionality schema is forced at M0" literally (the
// implication formula is forced there); the global-constraint variant
// (antecedent forced at M0 obliges identical choice entries everywhere) is
// tallied separately.
struct BellReport {
  long long structures = 0;          // (frame, domains, valuation) combos
  long long choice_combos = 0;       // (structure, alpha, world choice) triples
  long long eps_admissible = 0;      // existence schema forced at M0
  long long eps2_admissible = 0;     // ... and extensionality forced at M0
  long long lem_countermodels = 0;            // expected 0
  long long lem_refuted_without_eps2 = 0;     // expected > 0 at (3, 2)
  long long global_variant_countermodels = 0; // recorded, not asserted
  std::vector<std::string> notes;    // first few witnesses either way
  bool ok() const { return lem_countermodels == 0; }
};
BellReport bell_lem_search(int max_worlds, int max_domain);

// Forced formulas stay forced along reach: checked for a mixed battery
// (atoms, connectives, both quantifiers) over every structure within bounds.
struct PersistenceReport {
  long long structures = 0;
  long long checks = 0;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};
PersistenceReport persistence_check(int max_worlds);

}  // namespace epsilon
