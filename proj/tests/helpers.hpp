#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "slat/net.hpp"
#include "slat/net_format.hpp"
#include "slat/semilinear.hpp"
#include "slat/wqo.hpp"

namespace slat::testing {

inline std::string data_path(const std::string& name) {
  return std::string(SLAT_DATA_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline NetDocument load_fixture(const std::string& name) {
  return parse_net(read_file(data_path(name)));
}

// The three-place feedback net, built programmatically so format tests can
// compare against the fixture file.
inline Net feedback_net() {
  Net n("feedback", {"p1", "p2", "p3"}, {"t1", "t2", "t3"});
  n.set_input_weight(0, 0, 2);  // t1 consumes 2 p1
  n.set_input_weight(0, 1, 1);  // t2 consumes p1 + p2
  n.set_input_weight(1, 1, 1);
  n.set_output_weight(1, 0, 2);  // t2 produces 2 p1 + p3
  n.set_output_weight(1, 2, 1);
  n.set_input_weight(2, 2, 1);  // t3 consumes p3
  n.set_output_weight(2, 0, 1);  // t3 produces p1 + p2
  n.set_output_weight(2, 1, 1);
  return n;
}

// Known reachability description of the feedback net from (3,1,0):
// {(1,1,0) + 2e1 N} u {(0,0,1) + 2e1 N}.
inline SemilinearSet feedback_reach_set() {
  SemilinearSet s;
  s.components.push_back(LinearSet{{1, 1, 0}, {{2, 0, 0}}, std::nullopt});
  s.components.push_back(LinearSet{{0, 0, 1}, {{2, 0, 0}}, std::nullopt});
  return s;
}

// Reference liveness predicate of the feedback net: p2+p3 >= 1 and p1+p3 odd.
inline bool feedback_live_predicate(const Marking& m) {
  return m[1] + m[2] >= 1 && (m[0] + m[2]) % 2 == 1;
}

// Dead-set basis of the feedback net for all three transitions.
inline DownSet feedback_dead_all() {
  return DownSet{{OmegaMarking({0, kOmega, 0}), OmegaMarking({kOmega, 0, 0})}};
}

using Rng = std::mt19937_64;

inline Value rnd(Rng& rng, Value lo, Value hi) {
  return lo + static_cast<Value>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

// Random net with <= max_p places, <= max_t transitions, weights <= max_w.
inline Net random_net(Rng& rng, int max_p = 4, int max_t = 4, Value max_w = 2) {
  int np = static_cast<int>(1 + rng() % max_p);
  int nt = static_cast<int>(1 + rng() % max_t);
  std::vector<std::string> ps, ts;
  for (int i = 0; i < np; ++i) ps.push_back("p" + std::to_string(i + 1));
  for (int i = 0; i < nt; ++i) ts.push_back("t" + std::to_string(i + 1));
  Net n("rnd", ps, ts);
  for (int p = 0; p < np; ++p)
    for (int t = 0; t < nt; ++t) {
      if (rng() % 3 == 0) n.set_input_weight(p, t, rnd(rng, 1, max_w));
      if (rng() % 3 == 0) n.set_output_weight(t, p, rnd(rng, 1, max_w));
    }
  return n;
}

inline Marking random_marking(Rng& rng, std::size_t dim, Value bound) {
  std::vector<Value> v(dim);
  for (auto& x : v) x = rnd(rng, 0, bound);
  return Marking(std::move(v));
}

// Calls fn on every vector of [0,bound]^dim.
inline void for_box(std::size_t dim, Value bound,
                    const std::function<void(const std::vector<Value>&)>& fn) {
  std::vector<Value> v(dim, 0);
  while (true) {
    fn(v);
    std::size_t i = 0;
    while (i < dim && v[i] == bound) v[i++] = 0;
    if (i == dim) return;
    ++v[i];
  }
}

}  // namespace slat::testing
