#pragma once

#include <limits>
#include <string>
#include <vector>

#include "slat/net.hpp"

namespace slat {

// Sentinel strictly above every token count; arithmetic with it absorbs.
inline constexpr Value kOmega = std::numeric_limits<Value>::max();

inline Value omega_add(Value a, Value b) {
  if (a == kOmega || b == kOmega) return kOmega;
  return checked_add(a, b);
}

// Marking over N union {omega}; plain int64 comparison orders omega on top.
class OmegaMarking {
 public:
  OmegaMarking() = default;
  explicit OmegaMarking(std::vector<Value> v) : values_(std::move(v)) {
    for (Value x : values_)
      if (x < 0) throw input_error("omega-marking entries must be nonnegative or omega");
  }
  static OmegaMarking full(std::size_t n) { return OmegaMarking(std::vector<Value>(n, kOmega)); }
  static OmegaMarking of(const Marking& m) { return OmegaMarking(m.values()); }

  std::size_t size() const { return values_.size(); }
  Value operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Value>& values() const { return values_; }
  bool is_finite() const {
    for (Value x : values_)
      if (x == kOmega) return false;
    return true;
  }
  Marking to_marking() const {
    if (!is_finite()) throw input_error("omega-marking is not finite");
    return Marking(values_);
  }

  bool operator==(const OmegaMarking&) const = default;
  auto operator<=>(const OmegaMarking&) const = default;

  bool dominates(const OmegaMarking& other) const {
    if (size() != other.size()) throw input_error("dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i)
      if (values_[i] < other.values_[i]) return false;
    return true;
  }
  bool dominates(const Marking& other) const { return dominates(OmegaMarking::of(other)); }

  std::string to_string() const;

 private:
  std::vector<Value> values_;
};

// Upward-closed subset of N^P: antichain of minimal markings.
struct UpSet {
  std::vector<Marking> basis;  // pairwise incomparable, sorted lexicographically
  bool operator==(const UpSet&) const = default;
};

// Downward-closed subset of N^P: antichain of maximal omega-markings.
struct DownSet {
  std::vector<OmegaMarking> basis;  // pairwise incomparable, sorted lexicographically
  bool operator==(const DownSet&) const = default;
};

UpSet minimize(std::vector<Marking> ms);
DownSet maximize(std::vector<OmegaMarking> oms);

bool member_up(const UpSet& u, const Marking& m);
bool member_down(const DownSet& d, const Marking& m);

DownSet complement_up(const UpSet& u, std::size_t dimension);
UpSet complement_down(const DownSet& d, std::size_t dimension);

DownSet union_down(const DownSet& a, const DownSet& b);
DownSet intersect_down(const DownSet& a, const DownSet& b);

// JSON-ish rendering of a basis vector; omega prints as "w".
std::string omega_value_to_string(Value v);

}  // namespace slat
