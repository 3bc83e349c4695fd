#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "slat/wqo.hpp"

namespace slat {

struct ReachEdge {
  int src = -1;
  int transition = -1;
  int dst = -1;
};

// Finite portion of a reachability graph, breadth-first, budget-bounded.
struct ReachGraph {
  std::vector<Marking> nodes;  // discovery order; node 0 is the root
  std::vector<ReachEdge> edges;
  std::vector<int> parent;      // BFS tree parent, -1 for the root
  std::vector<int> parent_via;  // transition on the tree edge
  bool truncated = false;

  bool contains(const Marking& m) const;
  FiringSequence path_to(int node) const;
  std::string to_dot(const Net& net) const;
};

ReachGraph bfs_reach(const Net& net, const Marking& m0, std::size_t node_budget);

struct DownsetSearchOutcome {
  std::optional<FiringSequence> path;  // into the down-set, when found
  std::size_t nodes_explored = 0;
  bool exhausted = false;  // full reachability set enumerated, no hit
};

DownsetSearchOutcome find_in_downset(const Net& net, const Marking& m0, const DownSet& d,
                                     std::size_t node_budget);

// Resumable breadth-first search for a marking inside a down-set (or for one
// exact marking). Used by the interleaved decision engines.
class DownsetSearch {
 public:
  DownsetSearch(const Net& net, const Marking& m0, DownSet target);
  DownsetSearch(const Net& net, const Marking& m0, Marking exact_target);

  // Advances by up to `nodes` expansions; returns a path on a hit.
  std::optional<FiringSequence> step(std::size_t nodes);
  bool exhausted() const { return exhausted_; }
  std::size_t nodes_explored() const { return explored_; }
  const std::vector<Marking>& seen() const { return nodes_; }
  FiringSequence path_to(int node) const;

 private:
  std::optional<FiringSequence> check(int node);
  const Net& net_;
  DownSet target_;
  std::optional<Marking> exact_;
  std::vector<Marking> nodes_;
  std::vector<int> parent_, parent_via_;
  std::map<Marking, int> index_;
  std::size_t next_ = 0;  // frontier position
  std::size_t explored_ = 0;
  bool exhausted_ = false;
  bool done_ = false;
};

// Karp-Miller coverability tree.
struct KMNode {
  OmegaMarking marking;
  int parent = -1;
  int via = -1;           // transition from the parent
  bool accelerated = false;
};

struct KMTree {
  std::vector<KMNode> nodes;
  bool contains_covering(const Marking& target) const;
};

KMTree karp_miller(const Net& net, const Marking& m0);
bool coverable(const KMTree& tree, const Marking& target);

}  // namespace slat
