#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <vector>

#include "slat/net.hpp"
#include "slat/presburger.hpp"
#include "slat/semilinear.hpp"

namespace slat {

enum class InvariantStatus { ClosedExact, Growing, BudgetExhausted };

struct InvariantCandidate {
  SemilinearSet set;
  InvariantStatus status = InvariantStatus::Growing;
  std::size_t nodes_used = 0;
};

// A denoted marking of one component that enables `transition` yet fires
// outside the whole set.
struct ClosureEscape {
  std::size_t component = 0;
  std::vector<Value> coefficients;
  int transition = -1;
  Marking from;
};

std::optional<ClosureEscape> find_escape(const Net& net, const SemilinearSet& s,
                                         const pa::QeLimits& limits = {});

struct PostClosureResult {
  bool closed = true;
  std::optional<Marking> counterexample;
  int transition = -1;
};

// Is s closed under firing? Decided per component and transition: cheap
// structural inclusion first, then quantifier elimination.
PostClosureResult is_post_closed(const Net& net, const SemilinearSet& s,
                                 const pa::QeLimits& limits = {});

struct AccelerationConfig {
  std::size_t ancestor_depth = 12;  // chain suffix scanned for pump cycles
  std::size_t closure_stride = 32;  // components added between closure checks
  pa::QeLimits qe;
};

// Resumable forward exploration growing a certified semilinear
// under-approximation of the markings reachable from m0. Once the set is
// closed under firing it equals the reachability set exactly.
class AccelerationRun {
 public:
  AccelerationRun(Net net, Marking m0, AccelerationConfig config = {});

  // Expands up to `max_nodes` frontier nodes (closure checks count as one
  // node each); returns the status afterwards.
  InvariantStatus step(std::size_t max_nodes);

  bool closed() const { return closed_; }
  const SemilinearSet& set() const { return result_; }
  std::size_t nodes_used() const { return nodes_used_; }
  InvariantCandidate candidate() const;

 private:
  struct Node {
    std::size_t component = 0;
    std::vector<Marking> chain;  // spine markings, root first, base last
    FiringSequence moves;        // chain.size() - 1 transitions
  };

  void expand(const Node& node);
  void absorb(const Node& node, int t, const Marking& succ);
  std::size_t add_component(std::vector<FiringSequence> segments,
                            std::vector<std::vector<Value>> periods,
                            std::vector<PeriodScheme> schemes, Node seed);
  bool install_period(std::size_t component, std::vector<Value> delta, PeriodScheme scheme);
  bool try_owner_install(const ClosureEscape& esc, const Marking& succ);
  void reseed_from_escape(const ClosureEscape& esc, const Marking& succ);
  bool run_closure_check();  // true iff the set is closed

  Net net_;
  AccelerationConfig config_;
  Marking m0_;
  SemilinearSet result_;
  std::deque<Node> queue_;
  std::size_t nodes_used_ = 0;
  std::size_t components_since_check_ = 0;
  bool closed_ = false;
  bool exhausted_ = false;
};

InvariantCandidate accelerate(const Net& net, const Marking& m0, std::size_t budget,
                              const AccelerationConfig& config = {});

// Firing sequence denoting base + sum(coeffs[i] * period_i): spine segments
// with scheme insertions, replayed anchor-major.
FiringSequence replay_sequence(const LinearSet& c, const std::vector<Value>& coeffs);

// Replays every component's certificate (base, unit periods, and `samples`
// random coefficient mixes); throws certificate_error on any mismatch.
void verify_certificates(const Net& net, const Marking& m0, const SemilinearSet& s,
                         std::size_t samples = 8, std::uint64_t seed = 1);

}  // namespace slat
