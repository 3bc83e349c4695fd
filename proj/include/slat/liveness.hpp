#pragma once

#include <map>
#include <optional>
#include <vector>

#include "slat/acceleration.hpp"
#include "slat/coverability.hpp"
#include "slat/exploration.hpp"

namespace slat {

enum class Answer { Yes, No, Unknown };

struct VerdictStats {
  std::size_t nodes = 0;  // forward expansions across both engines
  std::size_t steps = 0;  // interleaving slices taken
  std::size_t budget_used = 0;
};

// Result of a (semi-)decision procedure with replayable evidence: a run into
// the dead set refutes liveness, a closed reachability description avoiding
// it proves liveness.
struct Verdict {
  Answer answer = Answer::Unknown;
  std::optional<FiringSequence> path;      // no-side evidence
  std::optional<SemilinearSet> invariant;  // yes-side evidence
  std::optional<Marking> witness;          // structural queries: live initial marking
  DownSet dead_set;                        // what the evidence refers to
  VerdictStats stats;
};

// Deterministic interleaving granularity of the search and invariant engines.
inline constexpr std::size_t kSliceNodes = 256;

// Is every transition of ts live at m0 (fireable again from every reachable
// marking)? Budget counts forward node expansions.
Verdict is_live_set(const Net& net, const Marking& m0, const std::vector<int>& ts,
                    std::size_t budget);

Verdict is_live_transition(const Net& net, const Marking& m0, int t, std::size_t budget);

// Liveness of all transitions at once.
Verdict is_live_marked_net(const Net& net, const Marking& m0, std::size_t budget);

// Can some transition of ts always eventually fire again? Dead region is the
// intersection of the per-transition dead sets.
Verdict is_weakly_live_set(const Net& net, const Marking& m0, const std::vector<int>& ts,
                           std::size_t budget);

// Liveness answers for every marking of the box [0,bound]^P.
std::map<Marking, Answer> live_predicate_scan(const Net& net, const std::vector<int>& ts,
                                              Value bound, std::size_t budget_per_marking);

// Shared core: does some run from m0 reach the down-set d? No -> yes-verdict.
Verdict decide_avoidance(const Net& net, const Marking& m0, const DownSet& d, std::size_t budget,
                         const AccelerationConfig& config = {});

}  // namespace slat
