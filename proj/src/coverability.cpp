#include "slat/coverability.hpp"

#include <algorithm>
#include <deque>

namespace slat {

Marking min_enabling(const Net& net, int t) {
  if (t < 0 || static_cast<std::size_t>(t) >= net.transition_count())
    throw input_error("unknown transition index");
  std::vector<Value> v(net.place_count());
  for (std::size_t p = 0; p < net.place_count(); ++p)
    v[p] = net.input_weight(static_cast<int>(p), t);
  return Marking(std::move(v));
}

Marking pre_min(const Net& net, int t, const Marking& target) {
  if (target.size() != net.place_count()) throw input_error("marking dimension mismatch");
  std::vector<Value> v(net.place_count());
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    Value need = net.input_weight(static_cast<int>(p), t);
    Value carry =
        checked_add(checked_sub(target[p], net.output_weight(t, static_cast<int>(p))), need);
    v[p] = std::max(need, std::max<Value>(carry, 0));
  }
  return Marking(std::move(v));
}

namespace {

// Keeps `elems` an antichain; returns true when the candidate was inserted.
bool insert_minimal(std::vector<CoverElement>& elems, CoverElement cand) {
  for (const auto& e : elems)
    if (cand.marking.dominates(e.marking)) return false;  // covered already (or equal)
  std::erase_if(elems, [&](const CoverElement& e) { return e.marking.dominates(cand.marking); });
  elems.push_back(std::move(cand));
  return true;
}

}  // namespace

SaturationResult backward_saturate(const Net& net, int t) {
  SaturationResult res;
  res.transition = t;
  std::vector<CoverElement> basis{{min_enabling(net, t), {}}};
  std::deque<Marking> worklist{basis.front().marking};
  res.iterations = 0;
  while (!worklist.empty()) {
    ++res.iterations;
    // FIFO round: expand everything currently queued, queue the genuinely new.
    std::vector<CoverElement> fresh;
    std::size_t round = worklist.size();
    for (std::size_t i = 0; i < round; ++i) {
      Marking target = std::move(worklist.front());
      worklist.pop_front();
      auto owner = std::find_if(basis.begin(), basis.end(),
                                [&](const CoverElement& e) { return e.marking == target; });
      if (owner == basis.end()) continue;  // got minimized away meanwhile
      FiringSequence chain = owner->chain;
      for (std::size_t tp = 0; tp < net.transition_count(); ++tp) {
        Marking pre = pre_min(net, static_cast<int>(tp), target);
        FiringSequence pre_chain;
        pre_chain.push_back(static_cast<int>(tp));
        pre_chain.insert(pre_chain.end(), chain.begin(), chain.end());
        fresh.push_back({std::move(pre), std::move(pre_chain)});
      }
    }
    std::sort(fresh.begin(), fresh.end(),
              [](const CoverElement& a, const CoverElement& b) { return a.marking < b.marking; });
    for (auto& cand : fresh) {
      Marking key = cand.marking;
      if (insert_minimal(basis, std::move(cand))) worklist.push_back(key);
    }
  }
  std::sort(basis.begin(), basis.end(),
            [](const CoverElement& a, const CoverElement& b) { return a.marking < b.marking; });
  res.basis = std::move(basis);
  return res;
}

bool verify_saturation(const Net& net, const SaturationResult& s) {
  for (const auto& e : s.basis) {
    FiringSequence full = e.chain;
    full.push_back(s.transition);
    auto end = try_fire_sequence(net, e.marking, full);
    if (!end) return false;
  }
  return true;
}

DeadSetReport dead_set(const Net& net, const std::vector<int>& ts) {
  if (ts.empty()) throw input_error("transition set must be nonempty");
  DeadSetReport report;
  for (int t : ts) {
    if (t < 0 || static_cast<std::size_t>(t) >= net.transition_count())
      throw input_error("unknown transition index");
    if (!report.per_transition.count(t)) {
      report.per_transition[t] = backward_saturate(net, t);
      report.iterations += report.per_transition[t].iterations;
    }
  }
  for (auto& [t, sat] : report.per_transition) report.queried.push_back(t);
  std::sort(report.queried.begin(), report.queried.end());

  DownSet dead{{}};
  for (int t : report.queried)
    dead = union_down(dead, complement_up(report.per_transition[t].up_set(), net.place_count()));
  report.dead_set = std::move(dead);

  // S_{T'}: pointwise maxima of one basis element per transition, minimized.
  std::vector<Marking> combos{Marking::zero(net.place_count())};
  for (int t : report.queried) {
    const auto& base = report.per_transition[t].basis;
    std::vector<Marking> next;
    for (const auto& c : combos)
      for (const auto& e : base) {
        std::vector<Value> v(net.place_count());
        for (std::size_t p = 0; p < net.place_count(); ++p)
          v[p] = std::max(c[p], e.marking[p]);
        next.emplace_back(std::move(v));
      }
    combos = std::move(next);
  }
  report.combined_live_candidates = minimize(std::move(combos));
  return report;
}

bool is_dead(const DeadSetReport& report, const Marking& m, int t) {
  auto it = report.per_transition.find(t);
  if (it == report.per_transition.end()) throw input_error("transition not covered by report");
  return !member_up(it->second.up_set(), m);
}

}  // namespace slat
