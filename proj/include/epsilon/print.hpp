#pragma once

// Printing back to the concrete grammar. Binder hints are reused when safe
// and primed on collision with free variables, symbols in scope, keywords or
// enclosing binders, so parse(print(x)) is alpha-equal to x.

#include <string>

#include "epsilon/syntax.hpp"

namespace epsilon {

std::string print(const FormulaPtr& f);
std::string print(const TermPtr& t);

}  // namespace epsilon
