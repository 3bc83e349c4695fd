#pragma once

#include <vector>

#include "slat/liveness.hpp"
#include "slat/net.hpp"
#include "slat/semilinear.hpp"

namespace slat {

// Reversed net wrapped in a generator gadget: a control token moves from the
// start place through one generator place per component of the dead-set
// description, deposits a denoted marking, then enters the reversed net.
// A marking is then coverable in the original sense iff the wrapped run
// reaches it backwards from some dead marking.
struct ReductionNet {
  Net net;
  Marking initial;              // one token on the start place
  std::size_t original_places;  // original coordinates are 0..original_places-1
  int start_place = -1;
  std::vector<int> generator_places;  // one per description component
  int run_place = -1;                 // control place of the reversed-net phase
  SemilinearSet description;          // encoded dead-set description
};

ReductionNet build_reduction(const Net& net, const std::vector<int>& ts);

// Components of a reachability description of red.net that sit in the
// reversed-net phase, projected to the original places. These are exactly
// the markings from which the original net can reach the dead set.
SemilinearSet rev_section(const ReductionNet& red, const SemilinearSet& s);

// Does *some* initial marking make every transition of ts live? Yes-evidence
// is such a marking (plus its avoidance invariant); no-evidence is an exact
// reachability description of the reduction whose reversed-phase section is
// universal.
Verdict find_live_marking(const Net& net, const std::vector<int>& ts, std::size_t budget);

// Same for the whole transition set.
Verdict find_live_marking(const Net& net, std::size_t budget);

// Is `target` unreachable from m0? Yes-evidence: a closed reachability
// description omitting it; no-evidence: a firing sequence reaching it.
Verdict decide_nonreachability(const Net& net, const Marking& m0, const Marking& target,
                               std::size_t budget, const AccelerationConfig& config = {});

}  // namespace slat
