#include "slat/wqo.hpp"

#include <algorithm>
#include <sstream>

namespace slat {

std::string omega_value_to_string(Value v) { return v == kOmega ? "w" : std::to_string(v); }

std::string OmegaMarking::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) os << ',';
    os << omega_value_to_string(values_[i]);
  }
  os << ')';
  return os.str();
}

UpSet minimize(std::vector<Marking> ms) {
  std::sort(ms.begin(), ms.end());
  ms.erase(std::unique(ms.begin(), ms.end()), ms.end());
  std::vector<Marking> keep;
  for (const auto& m : ms) {
    bool dominated = false;
    for (const auto& k : ms) {
      if (&k == &m) continue;
      if (m.dominates(k) && m != k) {
        dominated = true;
        break;
      }
    }
    if (!dominated) keep.push_back(m);
  }
  return UpSet{std::move(keep)};
}

DownSet maximize(std::vector<OmegaMarking> oms) {
  std::sort(oms.begin(), oms.end());
  oms.erase(std::unique(oms.begin(), oms.end()), oms.end());
  std::vector<OmegaMarking> keep;
  for (const auto& m : oms) {
    bool dominated = false;
    for (const auto& k : oms) {
      if (&k == &m) continue;
      if (k.dominates(m) && m != k) {
        dominated = true;
        break;
      }
    }
    if (!dominated) keep.push_back(m);
  }
  return DownSet{std::move(keep)};
}

bool member_up(const UpSet& u, const Marking& m) {
  for (const auto& b : u.basis)
    if (m.dominates(b)) return true;
  return false;
}

bool member_down(const DownSet& d, const Marking& m) {
  for (const auto& b : d.basis)
    if (b.dominates(m)) return true;
  return false;
}

namespace {

// Enumerates the cartesian product of per-coordinate candidate values,
// keeps survivors of `pred`, hands the result to the caller.
template <typename Pred>
std::vector<std::vector<Value>> product_filter(const std::vector<std::vector<Value>>& cands,
                                               Pred pred) {
  std::vector<std::vector<Value>> out;
  std::vector<std::size_t> idx(cands.size(), 0);
  if (cands.empty()) {
    if (pred(std::vector<Value>{})) out.push_back({});
    return out;
  }
  for (const auto& c : cands)
    if (c.empty()) return out;
  while (true) {
    std::vector<Value> v(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) v[i] = cands[i][idx[i]];
    if (pred(v)) out.push_back(std::move(v));
    std::size_t i = 0;
    while (i < cands.size() && ++idx[i] == cands[i].size()) idx[i++] = 0;
    if (i == cands.size()) break;
  }
  return out;
}

}  // namespace

DownSet complement_up(const UpSet& u, std::size_t dimension) {
  if (u.basis.empty()) return DownSet{{OmegaMarking::full(dimension)}};
  // Candidate maximal elements: per coordinate, one below some basis value, or omega.
  std::vector<std::vector<Value>> cands(dimension);
  for (std::size_t p = 0; p < dimension; ++p) {
    std::vector<Value>& c = cands[p];
    for (const auto& b : u.basis)
      if (b[p] >= 1) c.push_back(b[p] - 1);
    c.push_back(kOmega);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  auto outside_up = [&](const std::vector<Value>& v) {
    for (const auto& b : u.basis) {
      bool below_somewhere = false;
      for (std::size_t p = 0; p < dimension; ++p)
        if (v[p] < b[p]) {
          below_somewhere = true;
          break;
        }
      if (!below_somewhere) return false;  // v >= b, so v (and things below it) meet the up-set
    }
    return true;
  };
  std::vector<OmegaMarking> survivors;
  for (auto& v : product_filter(cands, outside_up)) survivors.emplace_back(std::move(v));
  return maximize(std::move(survivors));
}

UpSet complement_down(const DownSet& d, std::size_t dimension) {
  if (d.basis.empty()) return UpSet{{Marking::zero(dimension)}};
  // Candidate minimal elements: per coordinate, one above some finite basis value, or 0.
  std::vector<std::vector<Value>> cands(dimension);
  for (std::size_t p = 0; p < dimension; ++p) {
    std::vector<Value>& c = cands[p];
    c.push_back(0);
    for (const auto& b : d.basis)
      if (b[p] != kOmega) c.push_back(b[p] + 1);
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  auto outside_down = [&](const std::vector<Value>& v) {
    for (const auto& b : d.basis) {
      bool above_somewhere = false;
      for (std::size_t p = 0; p < dimension; ++p)
        if (v[p] > b[p]) {
          above_somewhere = true;
          break;
        }
      if (!above_somewhere) return false;  // v <= b: inside the down-set
    }
    return true;
  };
  std::vector<Marking> survivors;
  for (auto& v : product_filter(cands, outside_down)) survivors.emplace_back(std::move(v));
  return minimize(std::move(survivors));
}

DownSet union_down(const DownSet& a, const DownSet& b) {
  std::vector<OmegaMarking> all = a.basis;
  all.insert(all.end(), b.basis.begin(), b.basis.end());
  return maximize(std::move(all));
}

DownSet intersect_down(const DownSet& a, const DownSet& b) {
  std::vector<OmegaMarking> out;
  for (const auto& x : a.basis)
    for (const auto& y : b.basis) {
      if (x.size() != y.size()) throw input_error("dimension mismatch");
      std::vector<Value> v(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) v[i] = std::min(x[i], y[i]);
      out.emplace_back(std::move(v));
    }
  return maximize(std::move(out));
}

}  // namespace slat
