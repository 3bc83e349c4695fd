#include "slat/semilinear.hpp"

#include <algorithm>
#include <functional>

namespace slat {

namespace {

// Depth-first search for nonnegative coefficients with ascending-period
// pruning; vectors at desk scale keep this tiny.
bool solvable(const std::vector<std::vector<Value>>& periods, std::vector<Value> rest,
              std::size_t from) {
  bool all_zero = true;
  for (Value x : rest)
    if (x != 0) {
      all_zero = false;
      break;
    }
  if (all_zero) return true;
  if (from >= periods.size()) return false;
  const auto& pi = periods[from];
  // max multiplicity of this period bounded by the smallest quotient over
  // coordinates where the period is nonzero
  Value max_k = -1;
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (pi[i] > 0) {
      Value q = rest[i] / pi[i];
      max_k = max_k < 0 ? q : std::min(max_k, q);
    }
  if (max_k < 0) return solvable(periods, rest, from + 1);  // zero period
  for (Value k = 0; k <= max_k; ++k) {
    std::vector<Value> next(rest.size());
    bool ok = true;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      next[i] = rest[i] - k * pi[i];
      if (next[i] < 0) {
        ok = false;
        break;
      }
    }
    if (ok && solvable(periods, next, from + 1)) return true;
  }
  return false;
}

}  // namespace

bool member(const LinearSet& c, const std::vector<Value>& v) {
  if (v.size() != c.dimension()) throw input_error("dimension mismatch");
  std::vector<Value> rest(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    rest[i] = v[i] - c.base[i];
    if (rest[i] < 0) return false;
  }
  return solvable(c.periods, std::move(rest), 0);
}

bool member(const SemilinearSet& s, const std::vector<Value>& v) {
  for (const auto& c : s.components)
    if (member(c, v)) return true;
  return false;
}

namespace {

bool solve_rec(const std::vector<std::vector<Value>>& periods, std::vector<Value> rest,
               std::size_t from, std::vector<Value>& coeffs) {
  if (std::all_of(rest.begin(), rest.end(), [](Value x) { return x == 0; })) {
    std::fill(coeffs.begin() + static_cast<std::ptrdiff_t>(from), coeffs.end(), 0);
    return true;
  }
  if (from >= periods.size()) return false;
  const auto& pi = periods[from];
  Value max_k = -1;
  for (std::size_t i = 0; i < pi.size(); ++i)
    if (pi[i] > 0) {
      Value q = rest[i] / pi[i];
      max_k = max_k < 0 ? q : std::min(max_k, q);
    }
  if (max_k < 0) {
    coeffs[from] = 0;
    return solve_rec(periods, std::move(rest), from + 1, coeffs);
  }
  for (Value k = 0; k <= max_k; ++k) {
    std::vector<Value> next(rest.size());
    bool ok = true;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      next[i] = rest[i] - k * pi[i];
      if (next[i] < 0) {
        ok = false;
        break;
      }
    }
    if (ok && solve_rec(periods, std::move(next), from + 1, coeffs)) {
      coeffs[from] = k;
      return true;
    }
  }
  return false;
}

}  // namespace

std::optional<std::vector<Value>> solve_coefficients(const LinearSet& c,
                                                     const std::vector<Value>& v) {
  if (v.size() != c.dimension()) throw input_error("dimension mismatch");
  std::vector<Value> rest(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    rest[i] = v[i] - c.base[i];
    if (rest[i] < 0) return std::nullopt;
  }
  std::vector<Value> coeffs(c.periods.size(), 0);
  if (!solve_rec(c.periods, std::move(rest), 0, coeffs)) return std::nullopt;
  return coeffs;
}

pa::FormulaPtr to_formula(const SemilinearSet& s, const std::vector<pa::VarId>& vars) {
  using namespace pa;
  if (!s.components.empty() && vars.size() != s.dimension())
    throw input_error("variable count must equal dimension");
  VarId fresh = 0;
  for (VarId v : vars) fresh = std::max(fresh, v + 1);
  std::vector<FormulaPtr> disjuncts;
  for (const auto& c : s.components) {
    std::vector<FormulaPtr> eqs;
    std::vector<VarId> coeff_vars;
    for (std::size_t k = 0; k < c.periods.size(); ++k) coeff_vars.push_back(fresh + k);
    for (std::size_t j = 0; j < c.dimension(); ++j) {
      Term rhs{Int(c.base[j])};
      for (std::size_t k = 0; k < c.periods.size(); ++k)
        if (c.periods[k][j] != 0)
          rhs = rhs + Term::var(coeff_vars[k], Int(static_cast<long>(c.periods[k][j])));
      eqs.push_back(mk_eq(Term::var(vars[j]), rhs));
    }
    FormulaPtr body = mk_and(std::move(eqs));
    for (auto it = coeff_vars.rbegin(); it != coeff_vars.rend(); ++it)
      body = mk_exists(*it, body);
    disjuncts.push_back(std::move(body));
  }
  return mk_or(std::move(disjuncts));
}

pa::FormulaPtr downset_formula(const DownSet& d, const std::vector<pa::VarId>& vars) {
  using namespace pa;
  std::vector<FormulaPtr> disjuncts;
  for (const auto& b : d.basis) {
    if (b.size() != vars.size()) throw input_error("dimension mismatch");
    std::vector<FormulaPtr> conj;
    for (std::size_t j = 0; j < vars.size(); ++j)
      if (b[j] != kOmega)
        conj.push_back(mk_leq(Term::var(vars[j]), Term(Int(static_cast<long>(b[j])))));
    disjuncts.push_back(mk_and(std::move(conj)));
  }
  return mk_or(std::move(disjuncts));
}

SemilinearSet from_downset(const DownSet& d, std::size_t dimension) {
  SemilinearSet out;
  for (const auto& b : d.basis) {
    if (b.size() != dimension) throw input_error("dimension mismatch");
    // product of ranges over finite coordinates; omega coordinates get a
    // unit period
    std::size_t product = 1;
    for (std::size_t j = 0; j < dimension; ++j)
      if (b[j] != kOmega) {
        if (b[j] + 1 > static_cast<Value>(kDownsetEnumerationLimit / product))
          throw budget_error("down-set enumeration exceeds the product bound");
        product *= static_cast<std::size_t>(b[j] + 1);
      }
    std::vector<std::vector<Value>> periods;
    for (std::size_t j = 0; j < dimension; ++j)
      if (b[j] == kOmega) {
        std::vector<Value> e(dimension, 0);
        e[j] = 1;
        periods.push_back(std::move(e));
      }
    std::vector<Value> cur(dimension, 0);
    std::function<void(std::size_t)> emit = [&](std::size_t j) {
      if (j == dimension) {
        out.components.push_back({cur, periods, std::nullopt});
        return;
      }
      if (b[j] == kOmega) {
        cur[j] = 0;
        emit(j + 1);
      } else {
        for (Value x = 0; x <= b[j]; ++x) {
          cur[j] = x;
          emit(j + 1);
        }
      }
    };
    emit(0);
  }
  return out;
}

SemilinearSet project(const SemilinearSet& s, const std::vector<std::size_t>& coords) {
  SemilinearSet out;
  for (const auto& c : s.components) {
    LinearSet pc;
    for (std::size_t j : coords) {
      if (j >= c.dimension()) throw input_error("projection coordinate out of range");
      pc.base.push_back(c.base[j]);
    }
    for (const auto& pi : c.periods) {
      std::vector<Value> p;
      for (std::size_t j : coords) p.push_back(pi[j]);
      pc.periods.push_back(std::move(p));
    }
    out.components.push_back(std::move(pc));
  }
  return out;
}

namespace {

std::vector<pa::VarId> coordinate_vars(std::size_t n) {
  std::vector<pa::VarId> vars(n);
  for (std::size_t i = 0; i < n; ++i) vars[i] = static_cast<pa::VarId>(i);
  return vars;
}

pa::FormulaPtr close_universally(pa::FormulaPtr body, const std::vector<pa::VarId>& vars) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) body = pa::mk_forall(*it, body);
  return body;
}

}  // namespace

bool is_universal(const SemilinearSet& s, const pa::QeLimits& limits) {
  auto vars = coordinate_vars(s.dimension());
  if (s.structurally_empty()) return false;
  return pa::decide(close_universally(to_formula(s, vars), vars), limits);
}

bool includes(const SemilinearSet& a, const SemilinearSet& b, const pa::QeLimits& limits) {
  if (b.structurally_empty()) return true;
  if (a.structurally_empty()) return false;
  if (a.dimension() != b.dimension()) throw input_error("dimension mismatch");
  auto vars = coordinate_vars(a.dimension());
  using namespace pa;
  FormulaPtr body = mk_or({mk_not(to_formula(b, vars)), to_formula(a, vars)});
  return decide(close_universally(body, vars), limits);
}

bool semantically_equal(const SemilinearSet& a, const SemilinearSet& b,
                        const pa::QeLimits& limits) {
  return includes(a, b, limits) && includes(b, a, limits);
}

bool empty_intersection_with(const SemilinearSet& s, const DownSet& d,
                             const pa::QeLimits& limits) {
  if (s.structurally_empty() || d.basis.empty()) return true;
  auto vars = coordinate_vars(s.dimension());
  using namespace pa;
  FormulaPtr body = mk_and({to_formula(s, vars), downset_formula(d, vars)});
  FormulaPtr closed = body;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) closed = mk_exists(*it, closed);
  return !decide(closed, limits);
}

namespace {

// Visits N^d in order of increasing coordinate sum, lexicographic within a
// sum; returns the first vector accepted by the visitor.
template <typename Pred>
std::optional<std::vector<Value>> diagonal_search(std::size_t dim, std::size_t cap, Pred pred) {
  std::size_t visited = 0;
  for (Value total = 0;; ++total) {
    std::vector<Value> v(dim, 0);
    std::function<bool(std::size_t, Value)> place = [&](std::size_t j, Value rest) -> bool {
      if (j + 1 == dim) {
        v[j] = rest;
        ++visited;
        return pred(v);
      }
      for (Value x = 0; x <= rest; ++x) {
        v[j] = x;
        if (place(j + 1, rest - x)) return true;
      }
      return false;
    };
    if (dim == 0) return std::nullopt;
    if (place(0, total)) return v;
    if (visited >= cap) return std::nullopt;
  }
}

}  // namespace

std::optional<std::vector<Value>> witness_not_member(const SemilinearSet& s,
                                                     const pa::QeLimits& limits) {
  if (s.structurally_empty()) return std::vector<Value>(s.dimension(), 0);
  if (is_universal(s, limits)) return std::nullopt;
  return diagonal_search(s.dimension(), static_cast<std::size_t>(-1),
                         [&](const std::vector<Value>& v) { return !member(s, v); });
}

std::optional<std::vector<Value>> find_in_intersection(const SemilinearSet& s, const DownSet& d,
                                                       std::size_t enumeration_cap) {
  if (s.structurally_empty()) return std::nullopt;
  return diagonal_search(s.dimension(), enumeration_cap, [&](const std::vector<Value>& v) {
    return member(s, v) && member_down(d, Marking(v));
  });
}

}  // namespace slat
