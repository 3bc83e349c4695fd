#include "slat/structural.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "slat/errors.hpp"

namespace slat {
namespace {

std::string unique_name(std::vector<std::string>& taken, std::string candidate) {
  while (std::find(taken.begin(), taken.end(), candidate) != taken.end()) candidate += "_";
  taken.push_back(candidate);
  return candidate;
}

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

// Finite reachability set as singleton certified components.
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

ReductionNet build_reduction(const Net& net, const std::vector<int>& ts) {
  const std::vector<int> sorted = checked_transitions(net, ts);
  const std::size_t n = net.place_count();
  const DeadSetReport report = dead_set(net, sorted);
  const SemilinearSet desc = from_downset(report.dead_set, n);
  const std::size_t m = desc.components.size();

  std::vector<std::string> place_names = net.place_names();
  std::vector<std::string> taken = place_names;
  const std::string start_name = unique_name(taken, "start");
  std::vector<std::string> gen_names;
  for (std::size_t i = 0; i < m; ++i) gen_names.push_back(unique_name(taken, "gen" + std::to_string(i + 1)));
  const std::string run_name = unique_name(taken, "run");
  place_names.push_back(start_name);
  place_names.insert(place_names.end(), gen_names.begin(), gen_names.end());
  place_names.push_back(run_name);

  std::vector<std::string> transition_names = net.transition_names();
  std::vector<std::string> t_taken = transition_names;
  struct GenIds {
    std::string spawn;
    std::vector<std::string> pumps;
    std::string enter;
  };
  std::vector<GenIds> gens(m);
  for (std::size_t i = 0; i < m; ++i) {
    gens[i].spawn = unique_name(t_taken, "spawn" + std::to_string(i + 1));
    for (std::size_t l = 0; l < desc.components[i].periods.size(); ++l)
      gens[i].pumps.push_back(
          unique_name(t_taken, "pump" + std::to_string(i + 1) + "_" + std::to_string(l + 1)));
    gens[i].enter = unique_name(t_taken, "enter" + std::to_string(i + 1));
  }
  for (const GenIds& g : gens) {
    transition_names.push_back(g.spawn);
    transition_names.insert(transition_names.end(), g.pumps.begin(), g.pumps.end());
    transition_names.push_back(g.enter);
  }

  ReductionNet red{Net(net.name() + "_wrapped", place_names, transition_names),
                   Marking{},
                   n,
                   static_cast<int>(n),
                   {},
                   static_cast<int>(n + 1 + m),
                   desc};
  for (std::size_t i = 0; i < m; ++i) red.generator_places.push_back(static_cast<int>(n + 1 + i));

  const Net rev = reverse(net);
  for (std::size_t t = 0; t < net.transition_count(); ++t) {
    for (std::size_t p = 0; p < n; ++p) {
      red.net.set_input_weight(static_cast<int>(p), static_cast<int>(t),
                               rev.input_weight(static_cast<int>(p), static_cast<int>(t)));
      red.net.set_output_weight(static_cast<int>(t), static_cast<int>(p),
                                rev.output_weight(static_cast<int>(t), static_cast<int>(p)));
    }
    // reversed moves only run while the control token sits on `run`
    red.net.set_input_weight(red.run_place, static_cast<int>(t), 1);
    red.net.set_output_weight(static_cast<int>(t), red.run_place, 1);
  }
  int next_t = static_cast<int>(net.transition_count());
  for (std::size_t i = 0; i < m; ++i) {
    const LinearSet& c = desc.components[i];
    const int spawn = next_t++;
    red.net.set_input_weight(red.start_place, spawn, 1);
    red.net.set_output_weight(spawn, red.generator_places[i], 1);
    for (std::size_t p = 0; p < n; ++p)
      if (c.base[p] != 0) red.net.set_output_weight(spawn, static_cast<int>(p), c.base[p]);
    for (const std::vector<Value>& period : c.periods) {
      const int pump = next_t++;
      red.net.set_input_weight(red.generator_places[i], pump, 1);
      red.net.set_output_weight(pump, red.generator_places[i], 1);
      for (std::size_t p = 0; p < n; ++p)
        if (period[p] != 0) red.net.set_output_weight(pump, static_cast<int>(p), period[p]);
    }
    const int enter = next_t++;
    red.net.set_input_weight(red.generator_places[i], enter, 1);
    red.net.set_output_weight(enter, red.run_place, 1);
  }

  std::vector<Value> init(red.net.place_count(), 0);
  init[static_cast<std::size_t>(red.start_place)] = 1;
  red.initial = Marking(std::move(init));
  return red;
}

SemilinearSet rev_section(const ReductionNet& red, const SemilinearSet& s) {
  std::vector<int> control = {red.start_place, red.run_place};
  control.insert(control.end(), red.generator_places.begin(), red.generator_places.end());

  SemilinearSet in_phase;
  for (const LinearSet& c : s.components) {
    if (c.dimension() != red.net.place_count())
      throw input_error("description dimension does not match the reduction");
    for (const std::vector<Value>& period : c.periods)
      for (int cp : control)
        if (period[static_cast<std::size_t>(cp)] != 0)
          throw input_error("description periods must not move the control token");
    if (c.base[static_cast<std::size_t>(red.run_place)] != 1) continue;
    in_phase.components.push_back(c);
  }
  std::vector<std::size_t> coords(red.original_places);
  for (std::size_t p = 0; p < red.original_places; ++p) coords[p] = p;
  return project(in_phase, coords);
}

Verdict find_live_marking(const Net& net, const std::vector<int>& ts, std::size_t budget) {
  const std::vector<int> sorted = checked_transitions(net, ts);
  const DeadSetReport report = dead_set(net, sorted);
  const ReductionNet red = build_reduction(net, sorted);

  Verdict v;
  v.dead_set = report.dead_set;

  AccelerationRun no_side(red.net, red.initial);
  bool no_side_usable = true;

  // initial-marking candidates: minimal not-immediately-dead markings first,
  // then every marking by increasing token sum
  std::set<Marking> tried;
  std::vector<Marking> pending(report.combined_live_candidates.basis);
  std::size_t pending_pos = 0;
  Value diag_sum = 0;
  std::vector<Value> diag(net.place_count(), 0);
  bool diag_fresh = true;
  auto next_candidate = [&]() -> Marking {
    while (pending_pos < pending.size()) {
      Marking m = pending[pending_pos++];
      if (tried.insert(m).second) return m;
    }
    // compositions of diag_sum over the places, then the next sum
    for (;;) {
      if (diag_fresh) {
        diag.assign(net.place_count(), 0);
        if (!diag.empty()) diag[0] = diag_sum;
        diag_fresh = false;
      } else {
        std::size_t j = 0;
        while (j < diag.size() && diag[j] == 0) ++j;
        if (diag.empty() || j >= diag.size() - 1) {
          ++diag_sum;
          diag_fresh = true;
          continue;
        }
        Value val = diag[j];
        diag[j] = 0;
        diag[0] = val - 1;
        ++diag[j + 1];
      }
      Marking m{diag};
      if (tried.insert(m).second) return m;
    }
  };

  while (v.stats.budget_used < budget) {
    ++v.stats.steps;
    if (no_side_usable) {
      const std::size_t slice = std::min(kSliceNodes, budget - v.stats.budget_used);
      const std::size_t before = no_side.nodes_used();
      const InvariantStatus st = no_side.step(slice);
      const std::size_t delta = no_side.nodes_used() - before;
      v.stats.nodes += delta;
      v.stats.budget_used += std::max<std::size_t>(delta, 1);
      if (st == InvariantStatus::BudgetExhausted) no_side_usable = false;
      if (st == InvariantStatus::ClosedExact) {
        no_side_usable = false;
        try {
          const SemilinearSet section = rev_section(red, no_side.set());
          if (is_universal(section)) {
            // every marking can reach the dead set: nothing is ever live
            v.answer = Answer::No;
            v.invariant = no_side.set();
            return v;
          }
          if (auto w = witness_not_member(section)) {
            // this marking cannot reach the dead set at all
            v.answer = Answer::Yes;
            v.witness = Marking(*w);
            return v;
          }
        } catch (const budget_error&) {
        }
      }
    }
    if (v.stats.budget_used >= budget) break;
    {
      const Marking candidate = next_candidate();
      const std::size_t slice = std::min<std::size_t>(4 * kSliceNodes, budget - v.stats.budget_used);
      Verdict sub = decide_avoidance(net, candidate, report.dead_set, slice);
      v.stats.nodes += sub.stats.nodes;
      v.stats.budget_used += std::max<std::size_t>(sub.stats.budget_used, 1);
      if (sub.answer == Answer::Yes) {
        v.answer = Answer::Yes;
        v.witness = candidate;
        v.invariant = std::move(sub.invariant);
        return v;
      }
    }
  }
  return v;  // unknown
}

Verdict find_live_marking(const Net& net, std::size_t budget) {
  if (net.transition_count() == 0) throw input_error("net has no transitions");
  std::vector<int> all(net.transition_count());
  for (std::size_t t = 0; t < all.size(); ++t) all[t] = static_cast<int>(t);
  return find_live_marking(net, all, budget);
}

Verdict decide_nonreachability(const Net& net, const Marking& m0, const Marking& target,
                               std::size_t budget, const AccelerationConfig& config) {
  if (m0.size() != net.place_count() || target.size() != net.place_count())
    throw input_error("marking dimension mismatch");
  Verdict v;
  if (m0 == target) {
    v.answer = Answer::No;
    v.path = FiringSequence{};
    return v;
  }
  DownsetSearch search(net, m0, target);
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
        if (!member(accel.set(), target.values())) {
          v.answer = Answer::Yes;
          v.invariant = accel.set();
          return v;
        }
        // target is reachable; the search will produce the run
      } else if (st == InvariantStatus::BudgetExhausted) {
        accel_usable = false;
      }
    }
  }
  return v;  // unknown
}

}  // namespace slat
