#include "slat/presburger_parse.hpp"

#include <cctype>
#include <memory>
#include <vector>

namespace slat {
namespace pa {

namespace {

struct SExpr {
  std::string atom;  // nonempty for leaves
  std::vector<SExpr> items;
};

struct Lexer {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  SExpr parse() {
    skip_ws();
    if (pos >= s.size()) throw parse_error("unexpected end of formula", 1);
    if (s[pos] == '(') {
      ++pos;
      SExpr e;
      while (true) {
        skip_ws();
        if (pos >= s.size()) throw parse_error("unbalanced parenthesis in formula", 1);
        if (s[pos] == ')') {
          ++pos;
          return e;
        }
        e.items.push_back(parse());
      }
    }
    if (s[pos] == ')') throw parse_error("unexpected ')' in formula", 1);
    SExpr e;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) &&
           s[pos] != '(' && s[pos] != ')')
      e.atom.push_back(s[pos++]);
    return e;
  }
};

bool is_integer(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

struct Builder {
  std::map<std::string, VarId> vars;
  VarId next = 0;

  VarId var(const std::string& name) {
    auto it = vars.find(name);
    if (it != vars.end()) return it->second;
    vars[name] = next;
    return next++;
  }

  Term term(const SExpr& e) {
    if (!e.atom.empty()) {
      if (is_integer(e.atom)) return Term(Int(e.atom));
      return Term::var(var(e.atom));
    }
    if (e.items.empty() || e.items[0].atom.empty())
      throw parse_error("malformed term in formula", 1);
    const std::string& op = e.items[0].atom;
    if (op == "+") {
      Term t;
      for (std::size_t i = 1; i < e.items.size(); ++i) t = t + term(e.items[i]);
      return t;
    }
    if (op == "-") {
      if (e.items.size() != 3) throw parse_error("(- t t) takes two terms", 1);
      return term(e.items[1]) - term(e.items[2]);
    }
    if (op == "*") {
      if (e.items.size() != 3 || !is_integer(e.items[1].atom))
        throw parse_error("(* k t) takes an integer and a term", 1);
      return term(e.items[2]).scaled(Int(e.items[1].atom));
    }
    throw parse_error("unknown term operator: " + op, 1);
  }

  FormulaPtr formula(const SExpr& e) {
    if (!e.atom.empty()) {
      if (e.atom == "true") return mk_true();
      if (e.atom == "false") return mk_false();
      throw parse_error("expected a formula, got: " + e.atom, 1);
    }
    if (e.items.empty() || e.items[0].atom.empty()) throw parse_error("malformed formula", 1);
    const std::string& op = e.items[0].atom;
    auto binary = [&](auto make) {
      if (e.items.size() != 3) throw parse_error("(" + op + " t t) takes two terms", 1);
      return make(term(e.items[1]), term(e.items[2]));
    };
    if (op == "<=") return binary([](const Term& a, const Term& b) { return mk_leq(a, b); });
    if (op == ">=") return binary([](const Term& a, const Term& b) { return mk_leq(b, a); });
    if (op == "<")
      return binary([](const Term& a, const Term& b) { return mk_leq(a + Term(1), b); });
    if (op == ">")
      return binary([](const Term& a, const Term& b) { return mk_leq(b + Term(1), a); });
    if (op == "=") return binary([](const Term& a, const Term& b) { return mk_eq(a, b); });
    if (op == "divides") {
      if (e.items.size() != 3 || !is_integer(e.items[1].atom))
        throw parse_error("(divides d t) takes a positive integer and a term", 1);
      return mk_div(Int(e.items[1].atom), term(e.items[2]));
    }
    if (op == "not") {
      if (e.items.size() != 2) throw parse_error("(not f) takes one formula", 1);
      return mk_not(formula(e.items[1]));
    }
    if (op == "and" || op == "or") {
      std::vector<FormulaPtr> kids;
      for (std::size_t i = 1; i < e.items.size(); ++i) kids.push_back(formula(e.items[i]));
      return op == "and" ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    if (op == "exists" || op == "forall") {
      if (e.items.size() != 3 || e.items[1].atom.empty())
        throw parse_error("(" + op + " var f) takes a variable and a formula", 1);
      VarId v = var(e.items[1].atom);
      FormulaPtr body = formula(e.items[2]);
      return op == "exists" ? mk_exists(v, body) : mk_forall(v, body);
    }
    throw parse_error("unknown formula operator: " + op, 1);
  }
};

}  // namespace

ParsedFormula parse_formula(const std::string& text) {
  Lexer lex{text};
  SExpr e = lex.parse();
  lex.skip_ws();
  if (lex.pos != text.size()) throw parse_error("trailing input after formula", 1);
  Builder b;
  FormulaPtr f = b.formula(e);
  return {std::move(f), std::move(b.vars)};
}

}  // namespace pa
}  // namespace slat
