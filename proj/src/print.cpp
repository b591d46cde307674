#include "epsilon/print.hpp"

#include <sstream>

namespace epsilon {

namespace {

// Precedence levels: -> is 1 (right assoc), or 2, and 3, not/binders 4.
constexpr int kImp = 1, kOr = 2, kAnd = 3, kNot = 4;

struct Printer {
  std::set<std::string> avoid;            // free vars, symbols, keywords
  std::vector<std::string> scope;          // active binder names, innermost last

  std::string fresh(const std::string& hint) {
    std::string base = hint.empty() ? "x" : hint;
    std::string name = base;
    auto taken = [&](const std::string& n) {
      if (avoid.count(n)) return true;
      for (auto& s : scope)
        if (s == n) return true;
      return false;
    };
    while (taken(name)) name += '\'';
    return name;
  }

  // `tail` is true when nothing follows this node in the printed line, so a
  // binder body may extend to the end without parentheses.
  void formula(std::ostringstream& os, const FormulaPtr& f, int min_prec, bool tail) {
    if (auto* p = std::get_if<Pred>(&f->node)) {
      if (p->name == "<" || p->name == "<=") {
        term(os, p->args[0], 1, false);
        os << ' ' << p->name << ' ';
        term(os, p->args[1], 1, tail);
        return;
      }
      os << p->name;
      if (!p->args.empty()) {
        os << '(';
        for (size_t i = 0; i < p->args.size(); i++) {
          if (i) os << ", ";
          term(os, p->args[i], 0, false);
        }
        os << ')';
      }
      return;
    }
    if (auto* e = std::get_if<Eq>(&f->node)) {
      term(os, e->lhs, 1, false);
      os << " = ";
      term(os, e->rhs, 1, tail);
      return;
    }
    if (std::get_if<Truth>(&f->node)) {
      os << "true";
      return;
    }
    if (std::get_if<Falsity>(&f->node)) {
      os << "false";
      return;
    }
    if (auto* n = std::get_if<Not>(&f->node)) {
      os << "not ";
      formula(os, n->sub, kNot, tail);
      return;
    }
    if (auto* a = std::get_if<And>(&f->node)) {
      bool paren = min_prec > kAnd;
      if (paren) os << '(';
      formula(os, a->lhs, kAnd, false);
      os << " and ";
      formula(os, a->rhs, kAnd + 1, paren ? true : tail);
      if (paren) os << ')';
      return;
    }
    if (auto* o = std::get_if<Or>(&f->node)) {
      bool paren = min_prec > kOr;
      if (paren) os << '(';
      formula(os, o->lhs, kOr, false);
      os << " or ";
      formula(os, o->rhs, kOr + 1, paren ? true : tail);
      if (paren) os << ')';
      return;
    }
    if (auto* i = std::get_if<Imp>(&f->node)) {
      bool paren = min_prec > kImp;
      if (paren) os << '(';
      formula(os, i->lhs, kImp + 1, false);
      os << " -> ";
      formula(os, i->rhs, kImp, paren ? true : tail);
      if (paren) os << ')';
      return;
    }
    bool uni = std::holds_alternative<Forall>(f->node);
    const FormulaPtr& body = uni ? std::get<Forall>(f->node).body : std::get<Exists>(f->node).body;
    const std::string& hint = uni ? std::get<Forall>(f->node).hint : std::get<Exists>(f->node).hint;
    bool paren = !tail;
    if (paren) os << '(';
    std::string v = fresh(hint);
    os << (uni ? "forall " : "exists ") << v << ". ";
    scope.push_back(v);
    formula(os, body, 0, true);
    scope.pop_back();
    if (paren) os << ')';
  }

  // Term precedence: + is 1, * is 2, primaries 3.
  void term(std::ostringstream& os, const TermPtr& t, int min_prec, bool tail) {
    if (auto* b = std::get_if<Bound>(&t->node)) {
      int i = (int)scope.size() - 1 - b->index;
      if (i < 0) throw SyntaxError("loose binder index in printed term");
      os << scope[i];
      return;
    }
    if (auto* fr = std::get_if<Free>(&t->node)) {
      os << fr->name;
      return;
    }
    if (auto* a = std::get_if<App>(&t->node)) {
      if (a->fn == "+" || a->fn == "*") {
        int prec = a->fn == "+" ? 1 : 2;
        bool paren = min_prec > prec;
        if (paren) os << '(';
        term(os, a->args[0], prec, false);
        os << ' ' << a->fn << ' ';
        term(os, a->args[1], prec + 1, paren ? true : tail);
        if (paren) os << ')';
        return;
      }
      os << a->fn;
      if (!a->args.empty()) {
        os << '(';
        for (size_t i = 0; i < a->args.size(); i++) {
          if (i) os << ", ";
          term(os, a->args[i], 0, false);
        }
        os << ')';
      }
      return;
    }
    auto& e = std::get<Eps>(t->node);
    bool paren = !tail || min_prec > 0;
    if (paren) os << '(';
    std::string v = fresh(e.hint);
    os << "eps " << v << ". ";
    scope.push_back(v);
    formula(os, e.body, 0, true);
    scope.pop_back();
    if (paren) os << ')';
  }
};

std::set<std::string> keywords_and_symbols(const std::set<std::string>& frees,
                                           const std::set<std::string>& fns) {
  std::set<std::string> avoid = {"forall", "exists", "eps", "not", "and",
                                 "or",     "true",   "false", "pd"};
  avoid.insert(frees.begin(), frees.end());
  avoid.insert(fns.begin(), fns.end());
  return avoid;
}

}  // namespace

std::string print(const FormulaPtr& f) {
  Printer p;
  p.avoid = keywords_and_symbols(free_vars(f), function_symbols(f));
  for (auto& s : predicate_symbols(f)) p.avoid.insert(s);
  std::ostringstream os;
  p.formula(os, f, 0, true);
  return os.str();
}

std::string print(const TermPtr& t) {
  Printer p;
  p.avoid = keywords_and_symbols(free_vars(t), function_symbols(t));
  for (auto& s : predicate_symbols(t)) p.avoid.insert(s);
  std::ostringstream os;
  p.term(os, t, 0, true);
  return os.str();
}

}  // namespace epsilon
