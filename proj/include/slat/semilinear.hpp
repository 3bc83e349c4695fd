#pragma once

#include <optional>
#include <vector>

#include "slat/presburger.hpp"
#include "slat/wqo.hpp"

namespace slat {

// One unit of a period is replayed by inserting each entry's sequence at the
// end of its anchor segment of the spine; k units insert k copies apiece.
struct PeriodScheme {
  std::vector<std::pair<int, FiringSequence>> entries;  // (anchor segment, moves)
};

// Replay evidence for a linear set over a net's reachability space. The
// spine (concatenated segments) leads from the analysis root to the base;
// period schemes justify every base + sum(x_i * period_i) by insertion.
struct LinearCertificate {
  std::vector<FiringSequence> segments;      // spine; never empty
  std::vector<PeriodScheme> period_schemes;  // parallel to the periods
};

struct LinearSet {
  std::vector<Value> base;
  std::vector<std::vector<Value>> periods;
  std::optional<LinearCertificate> certificate;

  std::size_t dimension() const { return base.size(); }
};

struct SemilinearSet {
  std::vector<LinearSet> components;

  std::size_t dimension() const { return components.empty() ? 0 : components[0].dimension(); }
  bool structurally_empty() const { return components.empty(); }
};

// Guard for from_downset's enumeration of finite-coordinate down-closures.
inline constexpr std::size_t kDownsetEnumerationLimit = 100000;

bool member(const SemilinearSet& s, const std::vector<Value>& v);
bool member(const LinearSet& c, const std::vector<Value>& v);

// Nonnegative coefficients x with base + sum(x_i * period_i) = v, if any.
std::optional<std::vector<Value>> solve_coefficients(const LinearSet& c,
                                                     const std::vector<Value>& v);

// Existential Presburger formula over `vars` (one per coordinate); fresh
// coefficient variables start above every id in `vars`.
pa::FormulaPtr to_formula(const SemilinearSet& s, const std::vector<pa::VarId>& vars);

// Quantifier-free membership predicate of a down-set over `vars`.
pa::FormulaPtr downset_formula(const DownSet& d, const std::vector<pa::VarId>& vars);

SemilinearSet from_downset(const DownSet& d, std::size_t dimension);

SemilinearSet project(const SemilinearSet& s, const std::vector<std::size_t>& coords);

bool is_universal(const SemilinearSet& s, const pa::QeLimits& limits = {});
bool includes(const SemilinearSet& a, const SemilinearSet& b, const pa::QeLimits& limits = {});
bool semantically_equal(const SemilinearSet& a, const SemilinearSet& b,
                        const pa::QeLimits& limits = {});
bool empty_intersection_with(const SemilinearSet& s, const DownSet& d,
                             const pa::QeLimits& limits = {});

// Vector outside the set (diagonal enumeration by sum then lex), or nothing
// when the set is universal.
std::optional<std::vector<Value>> witness_not_member(const SemilinearSet& s,
                                                     const pa::QeLimits& limits = {});

// Smallest denoted vector of the nonempty intersection with a down-set, by
// diagonal enumeration capped at `enumeration_cap` visited vectors.
std::optional<std::vector<Value>> find_in_intersection(const SemilinearSet& s, const DownSet& d,
                                                       std::size_t enumeration_cap);

}  // namespace slat
