#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slat/errors.hpp"

namespace slat {

using Value = std::int64_t;

// A marking: one token count per place, in the net's place order.
class Marking {
 public:
  Marking() = default;
  explicit Marking(std::vector<Value> v) : values_(std::move(v)) {
    for (Value x : values_)
      if (x < 0) throw input_error("marking entries must be nonnegative");
  }
  static Marking zero(std::size_t n) { return Marking(std::vector<Value>(n, 0)); }

  std::size_t size() const { return values_.size(); }
  Value operator[](std::size_t i) const { return values_[i]; }
  const std::vector<Value>& values() const { return values_; }

  bool operator==(const Marking&) const = default;
  auto operator<=>(const Marking&) const = default;  // lexicographic

  // Componentwise order (partial).
  bool dominates(const Marking& other) const {
    if (size() != other.size()) throw input_error("marking dimension mismatch");
    for (std::size_t i = 0; i < size(); ++i)
      if (values_[i] < other.values_[i]) return false;
    return true;
  }

  Marking plus(const Marking& d) const {
    if (size() != d.size()) throw input_error("marking dimension mismatch");
    std::vector<Value> out(size());
    for (std::size_t i = 0; i < size(); ++i) out[i] = checked_add(values_[i], d.values_[i]);
    return Marking(std::move(out));
  }

  std::string to_string() const;

 private:
  std::vector<Value> values_;
};

// Finite sequence of transition indices.
using FiringSequence = std::vector<int>;

// Place/transition net with a weighted flow function. Identifiers are
// interned to dense indices; names survive only at the format boundary.
class Net {
 public:
  Net(std::string name, std::vector<std::string> places, std::vector<std::string> transitions);

  const std::string& name() const { return name_; }
  std::size_t place_count() const { return places_.size(); }
  std::size_t transition_count() const { return transitions_.size(); }
  const std::vector<std::string>& place_names() const { return places_; }
  const std::vector<std::string>& transition_names() const { return transitions_; }

  int place_index(const std::string& id) const;              // -1 if absent
  int transition_index(const std::string& id) const;         // -1 if absent
  int require_place(const std::string& id) const;            // throws input_error
  int require_transition(const std::string& id) const;       // throws input_error

  // W(p,t): weight consumed from place p by transition t.
  Value input_weight(int place, int transition) const { return in_[idx(place, transition)]; }
  // W(t,p): weight produced to place p by transition t.
  Value output_weight(int transition, int place) const { return out_[idx(place, transition)]; }

  void set_input_weight(int place, int transition, Value w);
  void set_output_weight(int transition, int place, Value w);

  bool operator==(const Net&) const = default;

 private:
  std::size_t idx(int place, int transition) const {
    return static_cast<std::size_t>(place) * transitions_.size() + transition;
  }
  std::string name_;
  std::vector<std::string> places_;
  std::vector<std::string> transitions_;
  std::vector<Value> in_;   // |P| x |T|
  std::vector<Value> out_;  // |P| x |T|
};

bool enabled(const Net& net, const Marking& m, int t);
Marking fire(const Net& net, const Marking& m, int t);
Marking fire_sequence(const Net& net, const Marking& m, const FiringSequence& u);

// Returns the marking if every step is enabled, otherwise nothing.
std::optional<Marking> try_fire_sequence(const Net& net, const Marking& m, const FiringSequence& u);

// All-arcs-flipped net: W_rev(p,t) = W(t,p), W_rev(t,p) = W(p,t).
Net reverse(const Net& net);

// Constant firing effect of t: W(t,.) - W(.,t).
std::vector<Value> transition_effect(const Net& net, int t);

}  // namespace slat
