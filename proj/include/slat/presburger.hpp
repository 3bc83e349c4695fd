#pragma once

#include <gmpxx.h>

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "slat/errors.hpp"

namespace slat {
namespace pa {

using Int = mpz_class;
using VarId = int;

// Linear term: sum of coeff * var plus a constant. Zero coefficients are
// never stored.
class Term {
 public:
  Term() = default;
  explicit Term(Int constant) : constant_(std::move(constant)) {}
  static Term var(VarId v, Int coeff = 1) {
    Term t;
    t.set_coeff(v, std::move(coeff));
    return t;
  }

  const std::map<VarId, Int>& coeffs() const { return coeffs_; }
  const Int& constant() const { return constant_; }
  Int coeff(VarId v) const {
    auto it = coeffs_.find(v);
    return it == coeffs_.end() ? Int(0) : it->second;
  }
  void set_coeff(VarId v, Int c) {
    if (c == 0)
      coeffs_.erase(v);
    else
      coeffs_[v] = std::move(c);
  }
  bool is_constant() const { return coeffs_.empty(); }

  Term operator+(const Term& o) const;
  Term operator-(const Term& o) const;
  Term scaled(const Int& k) const;
  Term without(VarId v) const;  // drop v's monomial

  // Substitute v := replacement.
  Term substituted(VarId v, const Term& replacement) const;

  Int evaluate(const std::map<VarId, Int>& env) const;

  bool operator==(const Term&) const = default;
  int cmp(const Term& o) const;  // total order for deterministic output
  bool operator<(const Term& o) const { return cmp(o) < 0; }

 private:
  std::map<VarId, Int> coeffs_;
  Int constant_ = 0;
};

enum class Kind { False, True, Leq0, Eq0, Div, NotDiv, And, Or, Not, Exists, Forall };

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

// Immutable formula tree. Atoms are normalized: term <= 0, term = 0,
// d | term (d >= 1). Quantified variables range over the naturals.
struct Formula {
  Kind kind;
  Term term;                       // Leq0 / Eq0 / Div / NotDiv
  Int divisor = 0;                 // Div / NotDiv
  std::vector<FormulaPtr> kids;    // And / Or / Not
  VarId var = -1;                  // Exists / Forall

  std::size_t node_count() const;
};

FormulaPtr mk_true();
FormulaPtr mk_false();
FormulaPtr mk_bool(bool b);
FormulaPtr mk_leq0(Term t);                       // t <= 0
FormulaPtr mk_eq0(Term t);                        // t = 0
FormulaPtr mk_leq(const Term& a, const Term& b);  // a <= b
FormulaPtr mk_eq(const Term& a, const Term& b);   // a = b
FormulaPtr mk_div(Int d, Term t);                 // d | t, d >= 1
FormulaPtr mk_and(std::vector<FormulaPtr> kids);
FormulaPtr mk_or(std::vector<FormulaPtr> kids);
FormulaPtr mk_not(FormulaPtr f);
FormulaPtr mk_exists(VarId v, FormulaPtr f);
FormulaPtr mk_forall(VarId v, FormulaPtr f);

bool is_quantifier_free(const FormulaPtr& f);
void collect_free_vars(const FormulaPtr& f, std::vector<VarId>& out);
std::vector<VarId> free_vars(const FormulaPtr& f);

// Node-count guard for quantifier elimination; exceeded -> budget_error.
struct QeLimits {
  std::size_t max_nodes = 1'000'000;
};

// First-order semantics over the naturals; quantifiers are rejected.
bool evaluate(const FormulaPtr& f, const std::map<VarId, Int>& env);

// Quantifier-free equivalent of (exists v >= 0) f, for quantifier-free f.
FormulaPtr eliminate_exists(const FormulaPtr& f, VarId v, const QeLimits& limits = {});

// Quantifier-free equivalent of f (innermost-first elimination, forall
// via double negation).
FormulaPtr eliminate_all(const FormulaPtr& f, const QeLimits& limits = {});

// Truth of a closed formula over the naturals.
bool decide(const FormulaPtr& f, const QeLimits& limits = {});

// Substitute var := replacement throughout a quantifier-free formula.
FormulaPtr substitute(const FormulaPtr& f, VarId v, const Term& replacement);

FormulaPtr simplify(const FormulaPtr& f);

std::string to_string(const FormulaPtr& f);
std::string term_to_string(const Term& t);

}  // namespace pa
}  // namespace slat
