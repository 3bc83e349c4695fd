#include "slat/presburger.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>

namespace slat {
namespace pa {

// ---------------------------------------------------------------- terms

Term Term::operator+(const Term& o) const {
  Term r = *this;
  for (const auto& [v, c] : o.coeffs_) r.set_coeff(v, r.coeff(v) + c);
  r.constant_ += o.constant_;
  return r;
}

Term Term::operator-(const Term& o) const { return *this + o.scaled(-1); }

Term Term::scaled(const Int& k) const {
  Term r;
  if (k == 0) return r;
  for (const auto& [v, c] : coeffs_) r.coeffs_[v] = c * k;
  r.constant_ = constant_ * k;
  return r;
}

Term Term::without(VarId v) const {
  Term r = *this;
  r.coeffs_.erase(v);
  return r;
}

Term Term::substituted(VarId v, const Term& replacement) const {
  Int c = coeff(v);
  if (c == 0) return *this;
  return without(v) + replacement.scaled(c);
}

Int Term::evaluate(const std::map<VarId, Int>& env) const {
  Int r = constant_;
  for (const auto& [v, c] : coeffs_) {
    auto it = env.find(v);
    if (it == env.end()) throw input_error("unbound variable in term evaluation");
    r += c * it->second;
  }
  return r;
}

int Term::cmp(const Term& o) const {
  if (constant_ != o.constant_) return constant_ < o.constant_ ? -1 : 1;
  auto a = coeffs_.begin(), b = o.coeffs_.begin();
  for (; a != coeffs_.end() && b != o.coeffs_.end(); ++a, ++b) {
    if (a->first != b->first) return a->first < b->first ? -1 : 1;
    if (a->second != b->second) return a->second < b->second ? -1 : 1;
  }
  if (a != coeffs_.end()) return 1;
  if (b != o.coeffs_.end()) return -1;
  return 0;
}

// ------------------------------------------------------------- formulas

namespace {

int formula_cmp(const Formula& a, const Formula& b) {
  if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
  if (a.var != b.var) return a.var < b.var ? -1 : 1;
  if (a.divisor != b.divisor) return a.divisor < b.divisor ? -1 : 1;
  int tc = a.term.cmp(b.term);
  if (tc != 0) return tc;
  if (a.kids.size() != b.kids.size()) return a.kids.size() < b.kids.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.kids.size(); ++i) {
    int c = formula_cmp(*a.kids[i], *b.kids[i]);
    if (c != 0) return c;
  }
  return 0;
}

Int term_gcd(const Term& t) {
  Int g = 0;
  for (const auto& [v, c] : t.coeffs()) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int pos_mod(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

std::size_t Formula::node_count() const {
  std::size_t n = 1;
  for (const auto& k : kids) n += k->node_count();
  return n;
}

FormulaPtr mk_true() {
  static FormulaPtr t = std::make_shared<Formula>(Formula{Kind::True, {}, 0, {}, -1});
  return t;
}
FormulaPtr mk_false() {
  static FormulaPtr f = std::make_shared<Formula>(Formula{Kind::False, {}, 0, {}, -1});
  return f;
}
FormulaPtr mk_bool(bool b) { return b ? mk_true() : mk_false(); }

FormulaPtr mk_leq0(Term t) {
  if (t.is_constant()) return mk_bool(t.constant() <= 0);
  // gcd normalization: g*s + c <= 0  <=>  s + ceil(c/g) ... use floor on -c.
  Int g = term_gcd(t);
  if (g > 1) {
    Term s;
    for (const auto& [v, c] : t.coeffs()) s.set_coeff(v, c / g);
    s = s + Term(-floor_div(-t.constant(), g));
    t = s;
  }
  return std::make_shared<Formula>(Formula{Kind::Leq0, std::move(t), 0, {}, -1});
}

FormulaPtr mk_eq0(Term t) {
  if (t.is_constant()) return mk_bool(t.constant() == 0);
  Int g = term_gcd(t);
  if (g > 1) {
    if (pos_mod(t.constant(), g) != 0) return mk_false();
    Term s;
    for (const auto& [v, c] : t.coeffs()) s.set_coeff(v, c / g);
    s = s + Term(t.constant() / g);
    t = s;
  }
  return std::make_shared<Formula>(Formula{Kind::Eq0, std::move(t), 0, {}, -1});
}

FormulaPtr mk_leq(const Term& a, const Term& b) { return mk_leq0(a - b); }
FormulaPtr mk_eq(const Term& a, const Term& b) { return mk_eq0(a - b); }

FormulaPtr mk_div(Int d, Term t) {
  if (d < 1) throw input_error("divisor must be >= 1");
  if (d == 1) return mk_true();
  // reduce coefficients and constant modulo d
  Term s(pos_mod(t.constant(), d));
  for (const auto& [v, c] : t.coeffs()) s.set_coeff(v, pos_mod(c, d));
  if (s.is_constant()) return mk_bool(s.constant() == 0);
  return std::make_shared<Formula>(Formula{Kind::Div, std::move(s), std::move(d), {}, -1});
}

namespace {
FormulaPtr mk_notdiv(Int d, Term t) {
  FormulaPtr div = mk_div(std::move(d), std::move(t));
  if (div->kind == Kind::True) return mk_false();
  if (div->kind == Kind::False) return mk_true();
  return std::make_shared<Formula>(Formula{Kind::NotDiv, div->term, div->divisor, {}, -1});
}
}  // namespace

FormulaPtr mk_and(std::vector<FormulaPtr> kids) {
  std::vector<FormulaPtr> flat;
  for (auto& k : kids) {
    if (k->kind == Kind::False) return mk_false();
    if (k->kind == Kind::True) continue;
    if (k->kind == Kind::And)
      flat.insert(flat.end(), k->kids.begin(), k->kids.end());
    else
      flat.push_back(std::move(k));
  }
  std::sort(flat.begin(), flat.end(),
            [](const FormulaPtr& a, const FormulaPtr& b) { return formula_cmp(*a, *b) < 0; });
  flat.erase(std::unique(flat.begin(), flat.end(),
                         [](const FormulaPtr& a, const FormulaPtr& b) {
                           return formula_cmp(*a, *b) == 0;
                         }),
             flat.end());
  if (flat.empty()) return mk_true();
  if (flat.size() == 1) return flat.front();
  return std::make_shared<Formula>(Formula{Kind::And, {}, 0, std::move(flat), -1});
}

FormulaPtr mk_or(std::vector<FormulaPtr> kids) {
  std::vector<FormulaPtr> flat;
  for (auto& k : kids) {
    if (k->kind == Kind::True) return mk_true();
    if (k->kind == Kind::False) continue;
    if (k->kind == Kind::Or)
      flat.insert(flat.end(), k->kids.begin(), k->kids.end());
    else
      flat.push_back(std::move(k));
  }
  std::sort(flat.begin(), flat.end(),
            [](const FormulaPtr& a, const FormulaPtr& b) { return formula_cmp(*a, *b) < 0; });
  flat.erase(std::unique(flat.begin(), flat.end(),
                         [](const FormulaPtr& a, const FormulaPtr& b) {
                           return formula_cmp(*a, *b) == 0;
                         }),
             flat.end());
  if (flat.empty()) return mk_false();
  if (flat.size() == 1) return flat.front();
  return std::make_shared<Formula>(Formula{Kind::Or, {}, 0, std::move(flat), -1});
}

FormulaPtr mk_not(FormulaPtr f) {
  switch (f->kind) {
    case Kind::True:
      return mk_false();
    case Kind::False:
      return mk_true();
    case Kind::Not:
      return f->kids.front();
    case Kind::Leq0:
      return mk_leq0(f->term.scaled(-1) + Term(1));  // !(t<=0) == 1-t<=0 over Z
    case Kind::Eq0:
      return mk_or({mk_leq0(f->term + Term(1)), mk_leq0(f->term.scaled(-1) + Term(1))});
    case Kind::Div:
      return mk_notdiv(f->divisor, f->term);
    case Kind::NotDiv:
      return mk_div(f->divisor, f->term);
    default:
      return std::make_shared<Formula>(Formula{Kind::Not, {}, 0, {std::move(f)}, -1});
  }
}

FormulaPtr mk_exists(VarId v, FormulaPtr f) {
  return std::make_shared<Formula>(Formula{Kind::Exists, {}, 0, {std::move(f)}, v});
}
FormulaPtr mk_forall(VarId v, FormulaPtr f) {
  return std::make_shared<Formula>(Formula{Kind::Forall, {}, 0, {std::move(f)}, v});
}

bool is_quantifier_free(const FormulaPtr& f) {
  if (f->kind == Kind::Exists || f->kind == Kind::Forall) return false;
  for (const auto& k : f->kids)
    if (!is_quantifier_free(k)) return false;
  return true;
}

namespace {
void collect_free(const FormulaPtr& f, std::set<VarId>& bound, std::set<VarId>& out) {
  switch (f->kind) {
    case Kind::Leq0:
    case Kind::Eq0:
    case Kind::Div:
    case Kind::NotDiv:
      for (const auto& [v, c] : f->term.coeffs())
        if (!bound.count(v)) out.insert(v);
      break;
    case Kind::Exists:
    case Kind::Forall: {
      bool was = bound.count(f->var);
      bound.insert(f->var);
      collect_free(f->kids.front(), bound, out);
      if (!was) bound.erase(f->var);
      break;
    }
    default:
      for (const auto& k : f->kids) collect_free(k, bound, out);
  }
}
}  // namespace

void collect_free_vars(const FormulaPtr& f, std::vector<VarId>& out) {
  std::set<VarId> bound, free;
  collect_free(f, bound, free);
  out.assign(free.begin(), free.end());
}

std::vector<VarId> free_vars(const FormulaPtr& f) {
  std::vector<VarId> out;
  collect_free_vars(f, out);
  return out;
}

bool evaluate(const FormulaPtr& f, const std::map<VarId, Int>& env) {
  switch (f->kind) {
    case Kind::True:
      return true;
    case Kind::False:
      return false;
    case Kind::Leq0:
      return f->term.evaluate(env) <= 0;
    case Kind::Eq0:
      return f->term.evaluate(env) == 0;
    case Kind::Div:
      return pos_mod(f->term.evaluate(env), f->divisor) == 0;
    case Kind::NotDiv:
      return pos_mod(f->term.evaluate(env), f->divisor) != 0;
    case Kind::And:
      for (const auto& k : f->kids)
        if (!evaluate(k, env)) return false;
      return true;
    case Kind::Or:
      for (const auto& k : f->kids)
        if (evaluate(k, env)) return true;
      return false;
    case Kind::Not:
      return !evaluate(f->kids.front(), env);
    default:
      throw input_error("evaluate rejects quantified formulas");
  }
}

FormulaPtr substitute(const FormulaPtr& f, VarId v, const Term& replacement) {
  switch (f->kind) {
    case Kind::True:
    case Kind::False:
      return f;
    case Kind::Leq0:
      return mk_leq0(f->term.substituted(v, replacement));
    case Kind::Eq0:
      return mk_eq0(f->term.substituted(v, replacement));
    case Kind::Div:
      return mk_div(f->divisor, f->term.substituted(v, replacement));
    case Kind::NotDiv:
      return mk_notdiv(f->divisor, f->term.substituted(v, replacement));
    case Kind::And: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(substitute(k, v, replacement));
      return mk_and(std::move(kids));
    }
    case Kind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(substitute(k, v, replacement));
      return mk_or(std::move(kids));
    }
    case Kind::Not:
      return mk_not(substitute(f->kids.front(), v, replacement));
    default:
      throw input_error("substitute expects a quantifier-free formula");
  }
}

FormulaPtr simplify(const FormulaPtr& f) {
  // The smart constructors already fold; rebuilding through them suffices.
  switch (f->kind) {
    case Kind::And: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(simplify(k));
      return mk_and(std::move(kids));
    }
    case Kind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(simplify(k));
      return mk_or(std::move(kids));
    }
    case Kind::Not:
      return mk_not(simplify(f->kids.front()));
    case Kind::Exists:
      return mk_exists(f->var, simplify(f->kids.front()));
    case Kind::Forall:
      return mk_forall(f->var, simplify(f->kids.front()));
    default:
      return f;
  }
}

// ---------------------------------------------------------------- Cooper

namespace {

bool contains_var(const FormulaPtr& f, VarId v) {
  switch (f->kind) {
    case Kind::Leq0:
    case Kind::Eq0:
    case Kind::Div:
    case Kind::NotDiv:
      return f->term.coeff(v) != 0;
    default:
      for (const auto& k : f->kids)
        if (contains_var(k, v)) return true;
      return false;
  }
}

// Negation normal form with equalities on v split into inequalities, so
// that every atom mentioning v is Leq0, Div or NotDiv.
FormulaPtr nnf_for(const FormulaPtr& f, VarId v, bool neg) {
  switch (f->kind) {
    case Kind::True:
      return mk_bool(!neg);
    case Kind::False:
      return mk_bool(neg);
    case Kind::Leq0:
    case Kind::Div:
    case Kind::NotDiv:
      return neg ? mk_not(f) : f;
    case Kind::Eq0:
      if (neg)
        return mk_or({mk_leq0(f->term + Term(1)), mk_leq0(f->term.scaled(-1) + Term(1))});
      if (f->term.coeff(v) != 0)
        return mk_and({mk_leq0(f->term), mk_leq0(f->term.scaled(-1))});
      return f;
    case Kind::Not:
      return nnf_for(f->kids.front(), v, !neg);
    case Kind::And: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(nnf_for(k, v, neg));
      return neg ? mk_or(std::move(kids)) : mk_and(std::move(kids));
    }
    case Kind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(nnf_for(k, v, neg));
      return neg ? mk_and(std::move(kids)) : mk_or(std::move(kids));
    }
    default:
      throw input_error("eliminate_exists expects a quantifier-free formula");
  }
}

// mk_not on an NNF'd tree keeps atoms closed under negation, but equality
// atoms reintroduced by mk_not never mention v after the split above.

Int coeff_lcm(const FormulaPtr& f, VarId v) {
  switch (f->kind) {
    case Kind::Leq0:
    case Kind::Div:
    case Kind::NotDiv: {
      Int c = f->term.coeff(v);
      if (c == 0) return 1;
      return abs(c);
    }
    default: {
      Int l = 1;
      for (const auto& k : f->kids) l = lcm(l, coeff_lcm(k, v));
      return l;
    }
  }
}

// Rescale atoms so the coefficient of v becomes +-1 for y = L*v.
FormulaPtr unify_coeff(const FormulaPtr& f, VarId v, const Int& big) {
  switch (f->kind) {
    case Kind::Leq0: {
      Int c = f->term.coeff(v);
      if (c == 0) return f;
      Int k = big / abs(c);
      Term t = f->term.scaled(k);  // coeff of v now +-big
      Term rest = t.without(v);
      rest.set_coeff(v, t.coeff(v) > 0 ? 1 : -1);
      return std::make_shared<Formula>(Formula{Kind::Leq0, std::move(rest), 0, {}, -1});
    }
    case Kind::Div:
    case Kind::NotDiv: {
      Int c = f->term.coeff(v);
      if (c == 0) return f;
      Int k = big / abs(c);
      Term t = f->term.scaled(k);
      Term rest = t.without(v);
      rest.set_coeff(v, t.coeff(v) > 0 ? 1 : -1);
      return std::make_shared<Formula>(
          Formula{f->kind, std::move(rest), f->divisor * k, {}, -1});
    }
    case Kind::And: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(unify_coeff(k, v, big));
      return mk_and(std::move(kids));
    }
    case Kind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(unify_coeff(k, v, big));
      return mk_or(std::move(kids));
    }
    default:
      return f;
  }
}

// Divisor lcm over atoms that mention v.
Int divisor_lcm(const FormulaPtr& f, VarId v) {
  switch (f->kind) {
    case Kind::Div:
    case Kind::NotDiv:
      return f->term.coeff(v) != 0 ? f->divisor : Int(1);
    default: {
      Int l = 1;
      for (const auto& k : f->kids) l = lcm(l, divisor_lcm(k, v));
      return l;
    }
  }
}

// Lower-bound terms b with "b < y" (from atoms -y + s <= 0, b = s - 1).
void lower_bounds(const FormulaPtr& f, VarId v, std::vector<Term>& out) {
  switch (f->kind) {
    case Kind::Leq0:
      if (f->term.coeff(v) < 0) out.push_back(f->term.without(v) - Term(1));
      break;
    default:
      for (const auto& k : f->kids) lower_bounds(k, v, out);
  }
}

// F with y replaced by "minus infinity": upper-bound atoms become true,
// lower-bound atoms false; divisibility atoms keep y for later substitution.
FormulaPtr minus_infinity(const FormulaPtr& f, VarId v) {
  switch (f->kind) {
    case Kind::Leq0:
      if (f->term.coeff(v) > 0) return mk_true();   // y <= t: far left satisfies
      if (f->term.coeff(v) < 0) return mk_false();  // y >= s: far left violates
      return f;
    case Kind::And: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(minus_infinity(k, v));
      return mk_and(std::move(kids));
    }
    case Kind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(minus_infinity(k, v));
      return mk_or(std::move(kids));
    }
    default:
      return f;
  }
}

// Fast path: a conjunct a*v + r = 0 with a = +-1 pins v to a term.
std::optional<Term> pinned_value(const FormulaPtr& f, VarId v) {
  if (f->kind == Kind::Eq0) {
    Int c = f->term.coeff(v);
    if (c == 1) return f->term.without(v).scaled(-1);
    if (c == -1) return f->term.without(v);
    return std::nullopt;
  }
  if (f->kind == Kind::And) {
    for (const auto& k : f->kids)
      if (auto r = pinned_value(k, v)) return r;
  }
  return std::nullopt;
}

}  // namespace

FormulaPtr eliminate_exists(const FormulaPtr& f, VarId v, const QeLimits& limits) {
  if (!is_quantifier_free(f)) throw input_error("eliminate_exists expects a quantifier-free body");
  if (!contains_var(f, v)) return simplify(f);

  // exists v in N. f  ==  exists v in Z. (v >= 0 and f)
  if (auto pin = pinned_value(f, v)) {
    // v = *pin: substitute and require nonnegativity of the pinned value.
    return mk_and({substitute(f, v, *pin), mk_leq0(pin->scaled(-1))});
  }

  FormulaPtr g = mk_and({mk_leq0(Term::var(v, -1)), nnf_for(f, v, false)});
  Int big = coeff_lcm(g, v);
  g = unify_coeff(g, v, big);
  // y = big * v must be divisible by big.
  if (big > 1) g = mk_and({g, mk_div(big, Term::var(v))});

  Int period = lcm(divisor_lcm(g, v), 1);
  std::vector<Term> lows;
  lower_bounds(g, v, lows);
  std::sort(lows.begin(), lows.end(), [](const Term& a, const Term& b) { return a.cmp(b) < 0; });
  lows.erase(std::unique(lows.begin(), lows.end()), lows.end());

  std::vector<FormulaPtr> disjuncts;
  FormulaPtr fmi = minus_infinity(g, v);
  std::size_t nodes = 0;
  for (Int j = 1; j <= period; ++j) {
    FormulaPtr d = substitute(fmi, v, Term(j));
    nodes += d->node_count();
    if (nodes > limits.max_nodes) throw budget_error("quantifier elimination exceeded node limit");
    disjuncts.push_back(std::move(d));
  }
  for (const Term& b : lows) {
    for (Int j = 1; j <= period; ++j) {
      FormulaPtr d = substitute(g, v, b + Term(j));
      nodes += d->node_count();
      if (nodes > limits.max_nodes)
        throw budget_error("quantifier elimination exceeded node limit");
      disjuncts.push_back(std::move(d));
    }
  }
  return mk_or(std::move(disjuncts));
}

FormulaPtr eliminate_all(const FormulaPtr& f, const QeLimits& limits) {
  switch (f->kind) {
    case Kind::And: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(eliminate_all(k, limits));
      return mk_and(std::move(kids));
    }
    case Kind::Or: {
      std::vector<FormulaPtr> kids;
      for (const auto& k : f->kids) kids.push_back(eliminate_all(k, limits));
      return mk_or(std::move(kids));
    }
    case Kind::Not:
      return mk_not(eliminate_all(f->kids.front(), limits));
    case Kind::Exists:
      return eliminate_exists(eliminate_all(f->kids.front(), limits), f->var, limits);
    case Kind::Forall:
      return mk_not(
          eliminate_exists(mk_not(eliminate_all(f->kids.front(), limits)), f->var, limits));
    default:
      return f;
  }
}

bool decide(const FormulaPtr& f, const QeLimits& limits) {
  if (!free_vars(f).empty()) throw input_error("decide requires a closed formula");
  FormulaPtr qf = eliminate_all(f, limits);
  return evaluate(qf, {});
}

// ------------------------------------------------------------- printing

std::string term_to_string(const Term& t) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [v, c] : t.coeffs()) {
    if (!first) os << " + ";
    first = false;
    if (c != 1) os << c << "*";
    os << "x" << v;
  }
  if (t.constant() != 0 || first) {
    if (!first) os << " + ";
    os << t.constant();
  }
  return os.str();
}

std::string to_string(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::True:
      return "true";
    case Kind::False:
      return "false";
    case Kind::Leq0:
      return "(" + term_to_string(f->term) + " <= 0)";
    case Kind::Eq0:
      return "(" + term_to_string(f->term) + " = 0)";
    case Kind::Div:
      return "(" + f->divisor.get_str() + " | " + term_to_string(f->term) + ")";
    case Kind::NotDiv:
      return "(" + f->divisor.get_str() + " !| " + term_to_string(f->term) + ")";
    case Kind::And:
    case Kind::Or: {
      std::string op = f->kind == Kind::And ? " and " : " or ";
      std::string out = "(";
      for (std::size_t i = 0; i < f->kids.size(); ++i) {
        if (i) out += op;
        out += to_string(f->kids[i]);
      }
      return out + ")";
    }
    case Kind::Not:
      return "(not " + to_string(f->kids.front()) + ")";
    case Kind::Exists:
      return "(exists x" + std::to_string(f->var) + " " + to_string(f->kids.front()) + ")";
    case Kind::Forall:
      return "(forall x" + std::to_string(f->var) + " " + to_string(f->kids.front()) + ")";
  }
  return "?";
}

}  // namespace pa
}  // namespace slat
