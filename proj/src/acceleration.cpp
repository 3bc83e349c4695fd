#include "slat/acceleration.hpp"

#include <algorithm>
#include <random>

#include "slat/errors.hpp"

namespace slat {
namespace {

using Vec = std::vector<Value>;

Vec to_vec(const Marking& m) { return m.values(); }

Vec vec_sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = checked_sub(a[i], b[i]);
  return r;
}

bool vec_geq(const Vec& a, const Vec& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

bool vec_nonneg(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](Value x) { return x >= 0; });
}

bool vec_is_zero(const Vec& a) {
  return std::all_of(a.begin(), a.end(), [](Value x) { return x == 0; });
}

Vec sequence_effect(const Net& net, const FiringSequence& u) {
  Vec r(net.place_count(), 0);
  for (int t : u) {
    Vec e = transition_effect(net, t);
    for (std::size_t p = 0; p < r.size(); ++p) r[p] = checked_add(r[p], e[p]);
  }
  return r;
}

// Visits coefficient vectors of dimension k by increasing sum (lexicographic
// within a sum); stops early once `visit` returns true.
template <typename F>
void enumerate_coefficients(std::size_t k, std::size_t max_total, F&& visit) {
  if (k == 0) {
    visit(Vec{});
    return;
  }
  for (std::size_t total = 0; total <= max_total; ++total) {
    Vec x(k, 0);
    x[0] = static_cast<Value>(total);
    for (;;) {
      if (visit(x)) return;
      // successor composition: drain the leftmost nonzero slot and push one
      // unit into the slot after it
      std::size_t j = 0;
      while (j < k && x[j] == 0) ++j;
      if (j >= k - 1) break;  // last composition of this total (or total == 0)
      Value v = x[j];
      x[j] = 0;
      x[0] = v - 1;
      ++x[j + 1];
    }
  }
}

// Quantifier-free membership predicate of one linear set over `vars`.
pa::FormulaPtr component_qf(const LinearSet& c, const std::vector<pa::VarId>& vars,
                            const pa::QeLimits& limits) {
  using namespace pa;
  VarId next = 0;
  for (VarId v : vars) next = std::max(next, v + 1);
  std::vector<VarId> xs;
  xs.reserve(c.periods.size());
  for (std::size_t i = 0; i < c.periods.size(); ++i) xs.push_back(next++);
  std::vector<FormulaPtr> eqs;
  for (std::size_t j = 0; j < c.base.size(); ++j) {
    Term rhs{Int(static_cast<long>(c.base[j]))};
    for (std::size_t i = 0; i < c.periods.size(); ++i)
      if (c.periods[i][j] != 0)
        rhs = rhs + Term::var(xs[i], Int(static_cast<long>(c.periods[i][j])));
    eqs.push_back(mk_eq(Term::var(vars[j]), rhs));
  }
  FormulaPtr f = mk_and(std::move(eqs));
  for (auto it = xs.rbegin(); it != xs.rend(); ++it) f = mk_exists(*it, f);
  return eliminate_all(f, limits);
}

// Is v a nonnegative integer combination of the given periods?
bool in_period_cone(const std::vector<Vec>& periods, const Vec& v) {
  LinearSet probe;
  probe.base.assign(v.size(), 0);
  probe.periods = periods;
  return solve_coefficients(probe, v).has_value();
}

}  // namespace

std::optional<ClosureEscape> find_escape(const Net& net, const SemilinearSet& s,
                                         const pa::QeLimits& limits) {
  using namespace pa;
  if (s.components.empty()) return std::nullopt;
  const std::size_t n = net.place_count();
  std::vector<VarId> vars(n);
  for (std::size_t p = 0; p < n; ++p) vars[p] = static_cast<VarId>(p);

  std::vector<FormulaPtr> qf(s.components.size());
  for (std::size_t ci = 0; ci < s.components.size(); ++ci)
    qf[ci] = component_qf(s.components[ci], vars, limits);

  for (std::size_t t = 0; t < net.transition_count(); ++t) {
    Vec need(n), eff = transition_effect(net, static_cast<int>(t));
    for (std::size_t p = 0; p < n; ++p)
      need[p] = net.input_weight(static_cast<int>(p), static_cast<int>(t));

    // membership predicates shifted by the firing effect, built on demand
    std::vector<FormulaPtr> shifted(s.components.size());
    auto shifted_qf = [&](std::size_t ci) {
      if (!shifted[ci]) {
        FormulaPtr f = qf[ci];
        for (std::size_t p = 0; p < n; ++p)
          if (eff[p] != 0)
            f = substitute(f, vars[p],
                           Term::var(vars[p]) + Term{Int(static_cast<long>(eff[p]))});
        shifted[ci] = f;
      }
      return shifted[ci];
    };

    for (std::size_t ci = 0; ci < s.components.size(); ++ci) {
      const LinearSet& c = s.components[ci];

      // Can any denoted marking enable t at all? Periods are nonnegative,
      // so each deficit coordinate just needs some period feeding it.
      bool possible = true;
      for (std::size_t p = 0; p < n && possible; ++p) {
        if (c.base[p] >= need[p]) continue;
        possible = std::any_of(c.periods.begin(), c.periods.end(),
                               [p](const Vec& pi) { return pi[p] > 0; });
      }
      if (!possible) continue;

      if (vec_geq(c.base, need)) {
        // Structural cover: the image base lands in a component whose
        // periods absorb all of ours. No formulas involved.
        Vec image(n);
        for (std::size_t p = 0; p < n; ++p) image[p] = checked_add(c.base[p], eff[p]);
        bool covered = false;
        for (const LinearSet& d : s.components) {
          if (!solve_coefficients(d, image)) continue;
          if (std::all_of(c.periods.begin(), c.periods.end(),
                          [&](const Vec& pi) { return in_period_cone(d.periods, pi); })) {
            covered = true;
            break;
          }
        }
        if (covered) continue;
      }

      // Sample small denoted markings to guess a single covering component.
      std::vector<Vec> sample_images;
      std::size_t visited = 0;
      enumerate_coefficients(c.periods.size(), 3, [&](const Vec& x) {
        if (++visited > 64 || sample_images.size() >= 12) return true;
        Vec v = c.base;
        for (std::size_t i = 0; i < x.size(); ++i)
          for (std::size_t p = 0; p < n; ++p)
            v[p] = checked_add(v[p], checked_mul(x[i], c.periods[i][p]));
        if (!vec_geq(v, need)) return false;
        for (std::size_t p = 0; p < n; ++p) v[p] = checked_add(v[p], eff[p]);
        sample_images.push_back(std::move(v));
        return false;
      });

      FormulaPtr lhs;
      {
        std::vector<FormulaPtr> en;
        en.push_back(qf[ci]);
        for (std::size_t p = 0; p < n; ++p)
          if (need[p] > 0)
            en.push_back(mk_leq(Term{Int(static_cast<long>(need[p]))}, Term::var(vars[p])));
        lhs = mk_and(std::move(en));
      }

      bool settled = false;
      for (std::size_t di = 0; di < s.components.size() && !sample_images.empty(); ++di) {
        if (!std::all_of(sample_images.begin(), sample_images.end(),
                         [&](const Vec& w) { return member(s.components[di], w); }))
          continue;
        FormulaPtr escape_f = mk_and({lhs, mk_not(shifted_qf(di))});
        for (std::size_t p = n; p-- > 0;) escape_f = mk_exists(vars[p], escape_f);
        settled = !decide(escape_f, limits);
        break;  // only the first full-cover candidate before the union query
      }
      if (settled) continue;

      {
        std::vector<FormulaPtr> none;
        none.push_back(lhs);
        for (std::size_t di = 0; di < s.components.size(); ++di)
          none.push_back(mk_not(shifted_qf(di)));
        FormulaPtr escape_f = mk_and(std::move(none));
        for (std::size_t p = n; p-- > 0;) escape_f = mk_exists(vars[p], escape_f);
        if (!decide(escape_f, limits)) continue;
      }

      // An escape exists inside this component; find a smallest one.
      std::optional<ClosureEscape> found;
      std::size_t guard = 0;
      enumerate_coefficients(c.periods.size(), 4096, [&](const Vec& x) {
        if (++guard > 1000000) throw budget_error("closure counterexample enumeration overflow");
        Vec v = c.base;
        for (std::size_t i = 0; i < x.size(); ++i)
          for (std::size_t p = 0; p < n; ++p)
            v[p] = checked_add(v[p], checked_mul(x[i], c.periods[i][p]));
        if (!vec_geq(v, need)) return false;
        Vec w(n);
        for (std::size_t p = 0; p < n; ++p) w[p] = checked_add(v[p], eff[p]);
        if (member(s, w)) return false;
        found = ClosureEscape{ci, x, static_cast<int>(t), Marking(v)};
        return true;
      });
      if (!found) throw budget_error("closure counterexample enumeration overflow");
      return found;
    }
  }
  return std::nullopt;
}

PostClosureResult is_post_closed(const Net& net, const SemilinearSet& s,
                                 const pa::QeLimits& limits) {
  auto esc = find_escape(net, s, limits);
  if (!esc) return {};
  PostClosureResult r;
  r.closed = false;
  r.counterexample = esc->from;
  r.transition = esc->transition;
  return r;
}

FiringSequence replay_sequence(const LinearSet& c, const std::vector<Value>& coeffs) {
  if (!c.certificate) throw certificate_error("component has no replay certificate", -1);
  const LinearCertificate& cert = *c.certificate;
  FiringSequence out;
  for (std::size_t g = 0; g < cert.segments.size(); ++g) {
    out.insert(out.end(), cert.segments[g].begin(), cert.segments[g].end());
    for (std::size_t i = 0; i < cert.period_schemes.size(); ++i) {
      Value x = i < coeffs.size() ? coeffs[i] : 0;
      if (x <= 0) continue;
      for (const auto& [anchor, seq] : cert.period_schemes[i].entries) {
        if (anchor != static_cast<int>(g)) continue;
        for (Value rep = 0; rep < x; ++rep) out.insert(out.end(), seq.begin(), seq.end());
      }
    }
  }
  return out;
}

void verify_certificates(const Net& net, const Marking& m0, const SemilinearSet& s,
                         std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (std::size_t ci = 0; ci < s.components.size(); ++ci) {
    const LinearSet& c = s.components[ci];
    const int id = static_cast<int>(ci);
    if (!c.certificate) throw certificate_error("component has no replay certificate", id);
    const std::size_t k = c.periods.size();
    if (c.certificate->period_schemes.size() != k)
      throw certificate_error("period scheme count mismatch", id);

    auto check = [&](const Vec& coeffs) {
      auto end = try_fire_sequence(net, m0, replay_sequence(c, coeffs));
      if (!end) throw certificate_error("certificate replay hit a disabled transition", id);
      Vec expect = c.base;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t p = 0; p < expect.size(); ++p)
          expect[p] = checked_add(expect[p], checked_mul(coeffs[i], c.periods[i][p]));
      if (end->values() != expect)
        throw certificate_error("certificate replay reached the wrong marking", id);
    };

    check(Vec(k, 0));
    for (std::size_t j = 0; j < k; ++j) {
      Vec unit(k, 0);
      unit[j] = 1;
      check(unit);
    }
    for (std::size_t r = 0; r < samples && k > 0; ++r) {
      Vec coeffs(k);
      for (std::size_t i = 0; i < k; ++i) coeffs[i] = static_cast<Value>(rng() % 4);
      check(coeffs);
    }
  }
}

AccelerationRun::AccelerationRun(Net net, Marking m0, AccelerationConfig config)
    : net_(std::move(net)), config_(config), m0_(std::move(m0)) {
  if (m0_.size() != net_.place_count()) throw input_error("marking dimension mismatch");
  Node seed;
  seed.chain = {m0_};
  add_component({FiringSequence{}}, {}, {}, std::move(seed));
  components_since_check_ = 0;  // nothing to check before the root expands
}

InvariantCandidate AccelerationRun::candidate() const {
  InvariantCandidate c;
  c.set = result_;
  c.status = closed_ ? InvariantStatus::ClosedExact
                     : (exhausted_ ? InvariantStatus::BudgetExhausted : InvariantStatus::Growing);
  c.nodes_used = nodes_used_;
  return c;
}

std::size_t AccelerationRun::add_component(std::vector<FiringSequence> segments,
                                           std::vector<std::vector<Value>> periods,
                                           std::vector<PeriodScheme> schemes, Node seed) {
  LinearSet c;
  c.base = to_vec(seed.chain.back());
  c.periods = std::move(periods);
  LinearCertificate cert;
  cert.segments = std::move(segments);
  cert.period_schemes = std::move(schemes);
  c.certificate = std::move(cert);
  result_.components.push_back(std::move(c));
  seed.component = result_.components.size() - 1;
  queue_.push_back(std::move(seed));
  ++components_since_check_;
  closed_ = false;
  return result_.components.size() - 1;
}

bool AccelerationRun::install_period(std::size_t component, std::vector<Value> delta,
                                     PeriodScheme scheme) {
  LinearSet& c = result_.components[component];
  if (std::find(c.periods.begin(), c.periods.end(), delta) != c.periods.end()) return false;
  c.periods.push_back(std::move(delta));
  c.certificate->period_schemes.push_back(std::move(scheme));
  closed_ = false;
  return true;
}

void AccelerationRun::expand(const Node& node) {
  const Marking base = node.chain.back();
  for (std::size_t t = 0; t < net_.transition_count(); ++t) {
    if (!enabled(net_, base, static_cast<int>(t))) continue;
    absorb(node, static_cast<int>(t), fire(net_, base, static_cast<int>(t)));
  }
}

void AccelerationRun::absorb(const Node& node, int t, const Marking& succ) {
  // pump detection: a dominated chain ancestor yields a repeatable period
  const std::size_t depth = std::min(config_.ancestor_depth, node.chain.size());
  for (std::size_t back = 0; back < depth; ++back) {
    const std::size_t pos = node.chain.size() - 1 - back;
    const Marking& a = node.chain[pos];
    if (succ == a || !succ.dominates(a)) continue;
    FiringSequence u(node.moves.begin() + static_cast<std::ptrdiff_t>(pos), node.moves.end());
    u.push_back(t);
    Vec delta = vec_sub(to_vec(succ), to_vec(a));
    // the pump is enabled at every base dominating its start
    for (std::size_t ci = 0; ci < result_.components.size(); ++ci) {
      const LinearSet& c = result_.components[ci];
      if (!vec_geq(c.base, to_vec(a))) continue;
      PeriodScheme sch;
      sch.entries.emplace_back(static_cast<int>(c.certificate->segments.size()) - 1, u);
      install_period(ci, delta, std::move(sch));
    }
    break;
  }
  if (member(result_, to_vec(succ))) return;

  // image component: inherits the parent's periods, since their insertions
  // happen earlier on the spine and extra tokens never disable the tail
  const LinearSet& c = result_.components[node.component];
  auto segments = c.certificate->segments;
  segments.push_back({t});
  Node seed;
  seed.chain = node.chain;
  seed.chain.push_back(succ);
  seed.moves = node.moves;
  seed.moves.push_back(t);
  add_component(std::move(segments), c.periods, c.certificate->period_schemes, std::move(seed));
}

bool AccelerationRun::try_owner_install(const ClosureEscape& esc, const Marking& succ) {
  const LinearSet& c = result_.components[esc.component];
  if (!vec_geq(to_vec(succ), c.base)) return false;
  Vec delta = vec_sub(to_vec(succ), c.base);
  if (vec_is_zero(delta)) return false;

  // one unit of the new period: the escape's coefficient mix plus the move
  PeriodScheme sch;
  for (std::size_t i = 0; i < c.periods.size(); ++i)
    for (const auto& entry : c.certificate->period_schemes[i].entries)
      for (Value rep = 0; rep < esc.coefficients[i]; ++rep) sch.entries.push_back(entry);
  sch.entries.emplace_back(static_cast<int>(c.certificate->segments.size()) - 1,
                           FiringSequence{esc.transition});

  // sound for every repetition count iff the replay-order prefix effects
  // stay nonnegative: later copies then start from pointwise-larger markings
  Vec prefix(net_.place_count(), 0);
  for (std::size_t g = 0; g < c.certificate->segments.size(); ++g)
    for (const auto& [anchor, seq] : sch.entries) {
      if (anchor != static_cast<int>(g)) continue;
      Vec e = sequence_effect(net_, seq);
      for (std::size_t p = 0; p < prefix.size(); ++p) prefix[p] = checked_add(prefix[p], e[p]);
      if (!vec_nonneg(prefix)) return false;
    }
  if (prefix != delta) return false;

  // concrete one-unit replay before committing
  LinearSet probe = c;
  probe.periods.push_back(delta);
  probe.certificate->period_schemes.push_back(sch);
  Vec coeffs(probe.periods.size(), 0);
  coeffs.back() = 1;
  auto end = try_fire_sequence(net_, m0_, replay_sequence(probe, coeffs));
  if (!end || end->values() != to_vec(succ)) return false;

  return install_period(esc.component, std::move(delta), std::move(sch));
}

void AccelerationRun::reseed_from_escape(const ClosureEscape& esc, const Marking& succ) {
  const LinearSet& c = result_.components[esc.component];
  // materialize the escape's coefficient mix into the spine, then the move
  std::vector<FiringSequence> segments = c.certificate->segments;
  for (std::size_t g = 0; g < segments.size(); ++g)
    for (std::size_t i = 0; i < c.periods.size(); ++i)
      for (const auto& [anchor, seq] : c.certificate->period_schemes[i].entries) {
        if (anchor != static_cast<int>(g)) continue;
        for (Value rep = 0; rep < esc.coefficients[i]; ++rep)
          segments[g].insert(segments[g].end(), seq.begin(), seq.end());
      }
  segments.push_back({esc.transition});

  Node seed;
  seed.chain = {m0_};
  Marking cur = m0_;
  for (const FiringSequence& seg : segments)
    for (int t : seg) {
      cur = fire(net_, cur, t);
      seed.chain.push_back(cur);
      seed.moves.push_back(t);
    }
  if (cur != succ)
    throw certificate_error("escape replay mismatch", static_cast<int>(esc.component));
  add_component(std::move(segments), c.periods, c.certificate->period_schemes, std::move(seed));
}

bool AccelerationRun::run_closure_check() {
  components_since_check_ = 0;
  auto esc = find_escape(net_, result_, config_.qe);
  if (!esc) return true;
  Marking succ = fire(net_, esc->from, esc->transition);
  if (!try_owner_install(*esc, succ)) reseed_from_escape(*esc, succ);
  return false;
}

InvariantStatus AccelerationRun::step(std::size_t max_nodes) {
  if (closed_) return InvariantStatus::ClosedExact;
  if (exhausted_) return InvariantStatus::BudgetExhausted;
  std::size_t used = 0;
  try {
    while (used < max_nodes) {
      if (queue_.empty()) {
        ++used;
        ++nodes_used_;
        if (run_closure_check()) {
          closed_ = true;
          return InvariantStatus::ClosedExact;
        }
        continue;
      }
      Node node = std::move(queue_.front());
      queue_.pop_front();
      expand(node);
      ++used;
      ++nodes_used_;
      if (components_since_check_ >= config_.closure_stride) {
        ++used;
        if (run_closure_check()) {
          closed_ = true;
          return InvariantStatus::ClosedExact;
        }
      }
    }
  } catch (const budget_error&) {
    exhausted_ = true;
    return InvariantStatus::BudgetExhausted;
  }
  return InvariantStatus::Growing;
}

InvariantCandidate accelerate(const Net& net, const Marking& m0, std::size_t budget,
                              const AccelerationConfig& config) {
  AccelerationRun run(net, m0, config);
  run.step(budget);
  return run.candidate();
}

}  // namespace slat
