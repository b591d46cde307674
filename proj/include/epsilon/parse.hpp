#pragma once

// Parser for the concrete grammar (see README for the EBNF).
//
//   formula := quantified | binary; binders (forall, exists, eps) take an
//   identifier, '.', and a maximal body. Precedence: not > and > or > ->
//   (right associative). Atoms are true, false, predicate applications and
//   term relations (=, and with arithmetic signatures <, <=). Terms are
//   identifiers, applications, numerals, eps terms and, with arithmetic
//   signatures, infix + and * (* binds tighter).
//
// Identifier classification needs the signature: declared predicate names
// head atoms, declared function names (and numerals) head terms, anything
// else is a free variable. Binder identifiers shadow every classification.

#include <string>
#include <variant>

#include "epsilon/syntax.hpp"

namespace epsilon {

struct ParseError : SyntaxError {
  using SyntaxError::SyntaxError;
};

FormulaPtr parse_formula(const std::string& text, const Signature& sig);
TermPtr parse_term(const std::string& text, const Signature& sig);

// Tries formula first, then term.
std::variant<FormulaPtr, TermPtr> parse_any(const std::string& text, const Signature& sig);

}  // namespace epsilon
