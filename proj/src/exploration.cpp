#include "slat/exploration.hpp"

#include <algorithm>
#include <sstream>

namespace slat {

bool ReachGraph::contains(const Marking& m) const {
  return std::find(nodes.begin(), nodes.end(), m) != nodes.end();
}

FiringSequence ReachGraph::path_to(int node) const {
  FiringSequence seq;
  for (int n = node; parent[n] >= 0; n = parent[n]) seq.push_back(parent_via[n]);
  std::reverse(seq.begin(), seq.end());
  return seq;
}

std::string ReachGraph::to_dot(const Net& net) const {
  std::ostringstream os;
  os << "digraph reach {\n";
  for (std::size_t i = 0; i < nodes.size(); ++i)
    os << "  n" << i << " [label=\"" << nodes[i].to_string() << "\"];\n";
  for (const auto& e : edges)
    os << "  n" << e.src << " -> n" << e.dst << " [label=\""
       << net.transition_names()[e.transition] << "\"];\n";
  os << "}\n";
  return os.str();
}

ReachGraph bfs_reach(const Net& net, const Marking& m0, std::size_t node_budget) {
  if (node_budget < 1) throw input_error("node budget must be >= 1");
  ReachGraph g;
  std::map<Marking, int> index;
  g.nodes.push_back(m0);
  g.parent.push_back(-1);
  g.parent_via.push_back(-1);
  index[m0] = 0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    for (std::size_t t = 0; t < net.transition_count(); ++t) {
      if (!enabled(net, g.nodes[i], static_cast<int>(t))) continue;
      Marking succ = fire(net, g.nodes[i], static_cast<int>(t));
      auto it = index.find(succ);
      int dst;
      if (it != index.end()) {
        dst = it->second;
      } else {
        if (g.nodes.size() >= node_budget) {
          g.truncated = true;
          continue;
        }
        dst = static_cast<int>(g.nodes.size());
        g.nodes.push_back(succ);
        g.parent.push_back(static_cast<int>(i));
        g.parent_via.push_back(static_cast<int>(t));
        index[succ] = dst;
      }
      g.edges.push_back({static_cast<int>(i), static_cast<int>(t), dst});
    }
  }
  return g;
}

DownsetSearch::DownsetSearch(const Net& net, const Marking& m0, DownSet target)
    : net_(net), target_(std::move(target)) {
  nodes_.push_back(m0);
  parent_.push_back(-1);
  parent_via_.push_back(-1);
  index_[m0] = 0;
}

DownsetSearch::DownsetSearch(const Net& net, const Marking& m0, Marking exact_target)
    : net_(net), exact_(std::move(exact_target)) {
  nodes_.push_back(m0);
  parent_.push_back(-1);
  parent_via_.push_back(-1);
  index_[m0] = 0;
}

FiringSequence DownsetSearch::path_to(int node) const {
  FiringSequence seq;
  for (int n = node; parent_[n] >= 0; n = parent_[n]) seq.push_back(parent_via_[n]);
  std::reverse(seq.begin(), seq.end());
  return seq;
}

std::optional<FiringSequence> DownsetSearch::check(int node) {
  bool hit = exact_ ? nodes_[node] == *exact_ : member_down(target_, nodes_[node]);
  if (hit) {
    done_ = true;
    return path_to(node);
  }
  return std::nullopt;
}

std::optional<FiringSequence> DownsetSearch::step(std::size_t nodes) {
  if (done_ || exhausted_) return std::nullopt;
  if (next_ == 0) {
    if (auto hit = check(0)) return hit;  // root may already be inside
  }
  std::size_t did = 0;
  while (next_ < nodes_.size() && did < nodes) {
    std::size_t i = next_++;
    ++did;
    ++explored_;
    for (std::size_t t = 0; t < net_.transition_count(); ++t) {
      if (!enabled(net_, nodes_[i], static_cast<int>(t))) continue;
      Marking succ = fire(net_, nodes_[i], static_cast<int>(t));
      if (index_.count(succ)) continue;
      int id = static_cast<int>(nodes_.size());
      nodes_.push_back(std::move(succ));
      parent_.push_back(static_cast<int>(i));
      parent_via_.push_back(static_cast<int>(t));
      index_[nodes_.back()] = id;
      if (auto hit = check(id)) return hit;
    }
  }
  if (next_ >= nodes_.size()) exhausted_ = true;
  return std::nullopt;
}

DownsetSearchOutcome find_in_downset(const Net& net, const Marking& m0, const DownSet& d,
                                     std::size_t node_budget) {
  DownsetSearch search(net, m0, d);
  DownsetSearchOutcome out;
  out.path = search.step(node_budget);
  out.nodes_explored = search.nodes_explored();
  out.exhausted = search.exhausted();
  return out;
}

KMTree karp_miller(const Net& net, const Marking& m0) {
  KMTree tree;
  tree.nodes.push_back({OmegaMarking::of(m0), -1, -1, false});
  std::vector<std::size_t> work{0};
  while (!work.empty()) {
    std::size_t cur = work.front();
    work.erase(work.begin());
    OmegaMarking m = tree.nodes[cur].marking;
    // A node equal to a strict ancestor is a leaf.
    bool repeat = false;
    for (int a = tree.nodes[cur].parent; a >= 0; a = tree.nodes[a].parent)
      if (tree.nodes[a].marking == m) {
        repeat = true;
        break;
      }
    if (repeat) continue;
    for (std::size_t t = 0; t < net.transition_count(); ++t) {
      bool en = true;
      for (std::size_t p = 0; p < net.place_count(); ++p)
        if (m[p] != kOmega && m[p] < net.input_weight(static_cast<int>(p), static_cast<int>(t))) {
          en = false;
          break;
        }
      if (!en) continue;
      std::vector<Value> succ(net.place_count());
      for (std::size_t p = 0; p < net.place_count(); ++p)
        succ[p] = m[p] == kOmega
                      ? kOmega
                      : m[p] - net.input_weight(static_cast<int>(p), static_cast<int>(t)) +
                            net.output_weight(static_cast<int>(t), static_cast<int>(p));
      OmegaMarking s(std::move(succ));
      // Omega-lift on coordinates strictly increased over a dominated ancestor.
      bool lifted = false;
      for (int a = static_cast<int>(cur); a >= 0; a = tree.nodes[a].parent) {
        const OmegaMarking& anc = tree.nodes[a].marking;
        if (s.dominates(anc) && s != anc) {
          std::vector<Value> lift = s.values();
          for (std::size_t p = 0; p < net.place_count(); ++p)
            if (s[p] > anc[p]) lift[p] = kOmega;
          s = OmegaMarking(std::move(lift));
          lifted = true;
        }
      }
      tree.nodes.push_back({std::move(s), static_cast<int>(cur), static_cast<int>(t), lifted});
      work.push_back(tree.nodes.size() - 1);
    }
  }
  return tree;
}

bool KMTree::contains_covering(const Marking& target) const {
  for (const auto& n : nodes)
    if (n.marking.dominates(target)) return true;
  return false;
}

bool coverable(const KMTree& tree, const Marking& target) {
  return tree.contains_covering(target);
}

}  // namespace slat
