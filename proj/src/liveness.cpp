#include "slat/liveness.hpp"

#include <algorithm>

#include "slat/errors.hpp"

namespace slat {
namespace {

std::vector<int> checked_transitions(const Net& net, const std::vector<int>& ts) {
  if (ts.empty()) throw input_error("transition set must be nonempty");
  std::vector<int> sorted = ts;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (int t : sorted)
    if (t < 0 || static_cast<std::size_t>(t) >= net.transition_count())
      throw input_error("transition index out of range: " + std::to_string(t));
  return sorted;
}

// Finite reachability set, one certified singleton component per marking.
SemilinearSet explicit_invariant(const DownsetSearch& search) {
  SemilinearSet s;
  s.components.reserve(search.seen().size());
  for (std::size_t i = 0; i < search.seen().size(); ++i) {
    LinearSet c;
    c.base = search.seen()[i].values();
    LinearCertificate cert;
    cert.segments = {search.path_to(static_cast<int>(i))};
    c.certificate = std::move(cert);
    s.components.push_back(std::move(c));
  }
  return s;
}

}  // namespace

Verdict decide_avoidance(const Net& net, const Marking& m0, const DownSet& d, std::size_t budget,
                         const AccelerationConfig& config) {
  Verdict v;
  v.dead_set = d;
  if (member_down(d, m0)) {
    v.answer = Answer::No;
    v.path = FiringSequence{};
    return v;
  }
  DownsetSearch search(net, m0, d);
  AccelerationRun accel(net, m0, config);
  bool accel_usable = true;
  while (v.stats.budget_used < budget) {
    ++v.stats.steps;
    {
      const std::size_t slice = std::min(kSliceNodes, budget - v.stats.budget_used);
      const std::size_t before = search.nodes_explored();
      auto path = search.step(slice);
      const std::size_t delta = search.nodes_explored() - before;
      v.stats.nodes += delta;
      v.stats.budget_used += std::max<std::size_t>(delta, 1);
      if (path) {
        v.answer = Answer::No;
        v.path = std::move(*path);
        return v;
      }
      if (search.exhausted()) {
        v.answer = Answer::Yes;
        v.invariant = explicit_invariant(search);
        return v;
      }
    }
    if (accel_usable && v.stats.budget_used < budget) {
      const std::size_t slice = std::min(kSliceNodes, budget - v.stats.budget_used);
      const std::size_t before = accel.nodes_used();
      const InvariantStatus st = accel.step(slice);
      const std::size_t delta = accel.nodes_used() - before;
      v.stats.nodes += delta;
      v.stats.budget_used += std::max<std::size_t>(delta, 1);
      if (st == InvariantStatus::ClosedExact) {
        accel_usable = false;
        try {
          if (empty_intersection_with(accel.set(), d, config.qe)) {
            v.answer = Answer::Yes;
            v.invariant = accel.set();
            return v;
          }
          // A reachable dead marking exists; only the search produces the run.
        } catch (const budget_error&) {
        }
      } else if (st == InvariantStatus::BudgetExhausted) {
        accel_usable = false;
      }
    }
  }
  return v;  // unknown
}

Verdict is_live_set(const Net& net, const Marking& m0, const std::vector<int>& ts,
                    std::size_t budget) {
  const std::vector<int> sorted = checked_transitions(net, ts);
  if (m0.size() != net.place_count()) throw input_error("marking dimension mismatch");
  const DeadSetReport report = dead_set(net, sorted);
  return decide_avoidance(net, m0, report.dead_set, budget);
}

Verdict is_live_transition(const Net& net, const Marking& m0, int t, std::size_t budget) {
  return is_live_set(net, m0, {t}, budget);
}

Verdict is_live_marked_net(const Net& net, const Marking& m0, std::size_t budget) {
  std::vector<int> all(net.transition_count());
  for (std::size_t t = 0; t < all.size(); ++t) all[t] = static_cast<int>(t);
  return is_live_set(net, m0, all, budget);
}

Verdict is_weakly_live_set(const Net& net, const Marking& m0, const std::vector<int>& ts,
                           std::size_t budget) {
  const std::vector<int> sorted = checked_transitions(net, ts);
  if (m0.size() != net.place_count()) throw input_error("marking dimension mismatch");
  const DeadSetReport report = dead_set(net, sorted);
  // markings where *every* queried transition is dead
  DownSet all_dead = DownSet{{OmegaMarking::full(net.place_count())}};
  for (int t : sorted)
    all_dead = intersect_down(
        all_dead, complement_up(report.per_transition.at(t).up_set(), net.place_count()));
  return decide_avoidance(net, m0, all_dead, budget);
}

std::map<Marking, Answer> live_predicate_scan(const Net& net, const std::vector<int>& ts,
                                              Value bound, std::size_t budget_per_marking) {
  const std::vector<int> sorted = checked_transitions(net, ts);
  if (bound < 0) throw input_error("box bound must be nonnegative");
  const DeadSetReport report = dead_set(net, sorted);
  std::map<Marking, Answer> out;
  std::vector<Value> v(net.place_count(), 0);
  for (;;) {
    Marking m{v};
    out[m] = decide_avoidance(net, m, report.dead_set, budget_per_marking).answer;
    std::size_t i = 0;
    while (i < v.size() && v[i] == bound) v[i++] = 0;
    if (i == v.size()) break;
    ++v[i];
  }
  return out;
}

}  // namespace slat
