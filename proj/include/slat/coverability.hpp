#pragma once

#include <map>
#include <vector>

#include "slat/wqo.hpp"

namespace slat {

// Minimal marking from which the target transition eventually fires,
// together with the transition chain that leads to it (replay evidence:
// firing chain ++ [target] from the marking succeeds).
struct CoverElement {
  Marking marking;
  FiringSequence chain;  // transitions to fire before the target becomes enabled
};

struct SaturationResult {
  int transition = -1;
  std::vector<CoverElement> basis;  // antichain, lexicographically sorted by marking
  int iterations = 0;

  UpSet up_set() const {
    std::vector<Marking> ms;
    ms.reserve(basis.size());
    for (const auto& e : basis) ms.push_back(e.marking);
    return UpSet{std::move(ms)};
  }
};

struct DeadSetReport {
  std::map<int, SaturationResult> per_transition;  // S_t per queried transition
  std::vector<int> queried;                        // the transition subset, sorted
  DownSet dead_set;                                // markings where some queried t is dead
  UpSet combined_live_candidates;                  // minimal markings where no queried t is dead
  int iterations = 0;                              // total saturation rounds
};

// The unique minimal marking enabling t: p -> W(p,t).
Marking min_enabling(const Net& net, int t);

// Minimal m with m --t--> m' >= target.
Marking pre_min(const Net& net, int t, const Marking& target);

// Least fixpoint of backward steps from the enabling marking of t.
SaturationResult backward_saturate(const Net& net, int t);

DeadSetReport dead_set(const Net& net, const std::vector<int>& ts);

bool is_dead(const DeadSetReport& report, const Marking& m, int t);

// Replays every basis element's chain; false on the first mismatch.
bool verify_saturation(const Net& net, const SaturationResult& s);

}  // namespace slat
