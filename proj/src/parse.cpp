#include "epsilon/parse.hpp"

#include <cctype>
#include <vector>

namespace epsilon {

namespace {

enum class Tok { Ident, Numeral, LParen, RParen, Comma, Dot, Arrow, Equal, Less, LessEq, Plus, Star, End };

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0;
  auto push = [&](Tok k, std::string t, size_t p) { out.push_back({k, std::move(t), p}); };
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace((unsigned char)c)) {
      i++;
      continue;
    }
    if (c == '#') break;  // comment to end of line
    size_t p = i;
    if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < s.size() && std::isdigit((unsigned char)s[j])) j++;
      push(Tok::Numeral, s.substr(i, j - i), p);
      i = j;
      continue;
    }
    if (std::isalpha((unsigned char)c) || c == '_') {
      size_t j = i;
      while (j < s.size() && (std::isalnum((unsigned char)s[j]) || s[j] == '_')) j++;
      while (j < s.size() && s[j] == '\'') j++;
      push(Tok::Ident, s.substr(i, j - i), p);
      i = j;
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, "(", p); i++; break;
      case ')': push(Tok::RParen, ")", p); i++; break;
      case ',': push(Tok::Comma, ",", p); i++; break;
      case '.': push(Tok::Dot, ".", p); i++; break;
      case '+': push(Tok::Plus, "+", p); i++; break;
      case '*': push(Tok::Star, "*", p); i++; break;
      case '=': push(Tok::Equal, "=", p); i++; break;
      case '<':
        if (i + 1 < s.size() && s[i + 1] == '=') {
          push(Tok::LessEq, "<=", p);
          i += 2;
        } else {
          push(Tok::Less, "<", p);
          i++;
        }
        break;
      case '-':
        if (i + 1 < s.size() && s[i + 1] == '>') {
          push(Tok::Arrow, "->", p);
          i += 2;
          break;
        }
        throw ParseError("stray '-' at position " + std::to_string(p));
      default:
        throw ParseError(std::string("unexpected character '") + c + "' at position " + std::to_string(p));
    }
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool is_keyword(const std::string& w) {
  return w == "forall" || w == "exists" || w == "eps" || w == "not" || w == "and" || w == "or" ||
         w == "true" || w == "false";
}

struct Parser {
  const std::vector<Token>& toks;
  const Signature& sig;
  size_t pos = 0;
  std::vector<std::string> binders;  // innermost last

  const Token& peek() const { return toks[pos]; }
  Token next() { return toks[pos++]; }
  bool at_ident(const std::string& w) const {
    return peek().kind == Tok::Ident && peek().text == w;
  }
  void expect(Tok k, const char* what) {
    if (peek().kind != k)
      throw ParseError(std::string("expected ") + what + " at position " + std::to_string(peek().pos));
    pos++;
  }

  int bound_index(const std::string& name) const {
    for (int i = (int)binders.size() - 1; i >= 0; i--)
      if (binders[i] == name) return (int)binders.size() - 1 - i;
    return -1;
  }

  std::string binder_ident() {
    if (peek().kind != Tok::Ident || is_keyword(peek().text))
      throw ParseError("expected binder variable at position " + std::to_string(peek().pos));
    if (sig.fun_arity(peek().text) || sig.pred_arity(peek().text))
      throw ParseError("binder variable shadows declared symbol: " + peek().text);
    return next().text;
  }

  // Binder bodies use a placeholder free name, then get abstracted; a unique
  // marker avoids capturing user variables of the same name. We abstract the
  // actual source name directly by pushing it on the binder stack instead.
  FormulaPtr formula() {
    if (at_ident("forall") || at_ident("exists")) {
      bool uni = next().text == "forall";
      std::string v = binder_ident();
      expect(Tok::Dot, "'.'");
      binders.push_back(v);
      FormulaPtr body = formula();
      binders.pop_back();
      return uni ? mk_forall_raw(body, v) : mk_exists_raw(body, v);
    }
    return implied();
  }

  FormulaPtr implied() {
    FormulaPtr l = or_expr();
    if (peek().kind == Tok::Arrow) {
      next();
      FormulaPtr r = (at_ident("forall") || at_ident("exists")) ? formula() : implied();
      return mk_imp(l, r);
    }
    return l;
  }

  FormulaPtr or_expr() {
    FormulaPtr l = and_expr();
    while (at_ident("or")) {
      next();
      l = mk_or(l, and_expr());
    }
    return l;
  }

  FormulaPtr and_expr() {
    FormulaPtr l = unary();
    while (at_ident("and")) {
      next();
      l = mk_and(l, unary());
    }
    return l;
  }

  FormulaPtr unary() {
    if (at_ident("not")) {
      next();
      return mk_not(unary());
    }
    if (at_ident("forall") || at_ident("exists")) return formula();
    return atom();
  }

  FormulaPtr atom() {
    const Token& t = peek();
    if (t.kind == Tok::Ident && t.text == "true") {
      next();
      return mk_truth();
    }
    if (t.kind == Tok::Ident && t.text == "false") {
      next();
      return mk_falsity();
    }
    if (t.kind == Tok::LParen) {
      // Could be a parenthesized formula or the left term of a relation.
      size_t save = pos;
      try {
        next();
        FormulaPtr f = formula();
        expect(Tok::RParen, "')'");
        return f;
      } catch (const ParseError&) {
        pos = save;
        return relation();
      }
    }
    if (t.kind == Tok::Ident && !is_keyword(t.text) && bound_index(t.text) < 0) {
      if (auto ar = sig.pred_arity(t.text)) {
        next();
        std::vector<TermPtr> args;
        if (peek().kind == Tok::LParen) {
          next();
          args.push_back(term());
          while (peek().kind == Tok::Comma) {
            next();
            args.push_back(term());
          }
          expect(Tok::RParen, "')'");
        }
        if ((int)args.size() != *ar)
          throw ParseError("predicate " + t.text + " expects " + std::to_string(*ar) +
                           " arguments, got " + std::to_string(args.size()));
        return mk_pred(t.text, std::move(args));
      }
    }
    return relation();
  }

  FormulaPtr relation() {
    TermPtr l = term();
    if (peek().kind == Tok::Equal) {
      next();
      return mk_eq(l, term());
    }
    if (sig.arithmetic && peek().kind == Tok::Less) {
      next();
      return mk_pred("<", {l, term()});
    }
    if (sig.arithmetic && peek().kind == Tok::LessEq) {
      next();
      return mk_pred("<=", {l, term()});
    }
    throw ParseError("expected relation operator at position " + std::to_string(peek().pos));
  }

  TermPtr term() {
    TermPtr l = factor();
    while (sig.arithmetic && peek().kind == Tok::Plus) {
      next();
      l = mk_app("+", {l, factor()});
    }
    return l;
  }

  TermPtr factor() {
    TermPtr l = primary();
    while (sig.arithmetic && peek().kind == Tok::Star) {
      next();
      l = mk_app("*", {l, primary()});
    }
    return l;
  }

  TermPtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::Numeral) {
      next();
      return mk_const(t.text);
    }
    if (t.kind == Tok::LParen) {
      next();
      TermPtr inner = term();
      expect(Tok::RParen, "')'");
      return inner;
    }
    if (t.kind == Tok::Ident && t.text == "eps") {
      next();
      std::string v = binder_ident();
      expect(Tok::Dot, "'.'");
      binders.push_back(v);
      FormulaPtr body = formula();
      binders.pop_back();
      return mk_eps_raw(body, v);
    }
    if (t.kind != Tok::Ident || is_keyword(t.text))
      throw ParseError("expected term at position " + std::to_string(t.pos));
    next();
    int bi = bound_index(t.text);
    if (bi >= 0) return mk_bound(bi);
    if (auto ar = sig.fun_arity(t.text)) {
      std::vector<TermPtr> args;
      if (peek().kind == Tok::LParen) {
        next();
        args.push_back(term());
        while (peek().kind == Tok::Comma) {
          next();
          args.push_back(term());
        }
        expect(Tok::RParen, "')'");
      }
      if ((int)args.size() != *ar)
        throw ParseError("function " + t.text + " expects " + std::to_string(*ar) +
                         " arguments, got " + std::to_string(args.size()));
      return mk_app(t.text, std::move(args));
    }
    if (sig.pred_arity(t.text))
      throw ParseError("predicate symbol in term position: " + t.text);
    if (peek().kind == Tok::LParen) throw ParseError("unknown function symbol: " + t.text);
    return mk_free(t.text);
  }
};

// The parser builds binder bodies with Bound indices directly (the binder
// stack maps names to indices), so no post-hoc abstraction is needed.

}  // namespace

FormulaPtr parse_formula(const std::string& text, const Signature& sig) {
  auto toks = lex(text);
  Parser p{toks, sig};
  FormulaPtr f = p.formula();
  if (p.peek().kind != Tok::End)
    throw ParseError("trailing input at position " + std::to_string(p.peek().pos));
  return f;
}

TermPtr parse_term(const std::string& text, const Signature& sig) {
  auto toks = lex(text);
  Parser p{toks, sig};
  TermPtr t = p.term();
  if (p.peek().kind != Tok::End)
    throw ParseError("trailing input at position " + std::to_string(p.peek().pos));
  return t;
}

std::variant<FormulaPtr, TermPtr> parse_any(const std::string& text, const Signature& sig) {
  try {
    return parse_formula(text, sig);
  } catch (const ParseError& fe) {
    try {
      return parse_term(text, sig);
    } catch (const ParseError& te) {
      throw ParseError(std::string("not a formula (") + fe.what() + ") nor a term (" + te.what() +
                       ")");
    }
  }
}

}  // namespace epsilon
