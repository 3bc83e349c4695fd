#include "slat/net.hpp"

#include <sstream>
#include <unordered_set>

namespace slat {

std::string Marking::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) os << ',';
    os << values_[i];
  }
  os << ')';
  return os.str();
}

Net::Net(std::string name, std::vector<std::string> places, std::vector<std::string> transitions)
    : name_(std::move(name)), places_(std::move(places)), transitions_(std::move(transitions)) {
  std::unordered_set<std::string> seen;
  for (const auto& p : places_)
    if (!seen.insert(p).second) throw input_error("duplicate identifier: " + p);
  for (const auto& t : transitions_)
    if (!seen.insert(t).second) throw input_error("duplicate identifier: " + t);
  in_.assign(places_.size() * transitions_.size(), 0);
  out_.assign(places_.size() * transitions_.size(), 0);
}

int Net::place_index(const std::string& id) const {
  for (std::size_t i = 0; i < places_.size(); ++i)
    if (places_[i] == id) return static_cast<int>(i);
  return -1;
}

int Net::transition_index(const std::string& id) const {
  for (std::size_t i = 0; i < transitions_.size(); ++i)
    if (transitions_[i] == id) return static_cast<int>(i);
  return -1;
}

int Net::require_place(const std::string& id) const {
  int i = place_index(id);
  if (i < 0) throw input_error("unknown place: " + id);
  return i;
}

int Net::require_transition(const std::string& id) const {
  int i = transition_index(id);
  if (i < 0) throw input_error("unknown transition: " + id);
  return i;
}

void Net::set_input_weight(int place, int transition, Value w) {
  if (w < 0) throw input_error("negative arc weight");
  in_[idx(place, transition)] = w;
}

void Net::set_output_weight(int transition, int place, Value w) {
  if (w < 0) throw input_error("negative arc weight");
  out_[idx(place, transition)] = w;
}

bool enabled(const Net& net, const Marking& m, int t) {
  if (t < 0 || static_cast<std::size_t>(t) >= net.transition_count())
    throw input_error("unknown transition index");
  if (m.size() != net.place_count()) throw input_error("marking dimension mismatch");
  for (std::size_t p = 0; p < net.place_count(); ++p)
    if (m[p] < net.input_weight(static_cast<int>(p), t)) return false;
  return true;
}

Marking fire(const Net& net, const Marking& m, int t) {
  if (t < 0 || static_cast<std::size_t>(t) >= net.transition_count())
    throw input_error("unknown transition index");
  if (m.size() != net.place_count()) throw input_error("marking dimension mismatch");
  std::vector<Value> out(net.place_count());
  for (std::size_t p = 0; p < net.place_count(); ++p) {
    Value need = net.input_weight(static_cast<int>(p), t);
    if (m[p] < need)
      throw firing_error("transition " + net.transition_names()[t] + " disabled at place " +
                             net.place_names()[p],
                         static_cast<int>(p));
    out[p] = checked_add(checked_sub(m[p], need), net.output_weight(t, static_cast<int>(p)));
  }
  return Marking(std::move(out));
}

Marking fire_sequence(const Net& net, const Marking& m, const FiringSequence& u) {
  Marking cur = m;
  for (std::size_t i = 0; i < u.size(); ++i) {
    try {
      cur = fire(net, cur, u[i]);
    } catch (const firing_error& e) {
      throw firing_error(std::string(e.what()) + " (step " + std::to_string(i) + ")", e.place,
                         static_cast<int>(i));
    }
  }
  return cur;
}

std::optional<Marking> try_fire_sequence(const Net& net, const Marking& m,
                                         const FiringSequence& u) {
  Marking cur = m;
  for (int t : u) {
    if (!enabled(net, cur, t)) return std::nullopt;
    cur = fire(net, cur, t);
  }
  return cur;
}

Net reverse(const Net& net) {
  Net rev(net.name(), net.place_names(), net.transition_names());
  for (std::size_t p = 0; p < net.place_count(); ++p)
    for (std::size_t t = 0; t < net.transition_count(); ++t) {
      rev.set_input_weight(static_cast<int>(p), static_cast<int>(t),
                           net.output_weight(static_cast<int>(t), static_cast<int>(p)));
      rev.set_output_weight(static_cast<int>(t), static_cast<int>(p),
                            net.input_weight(static_cast<int>(p), static_cast<int>(t)));
    }
  return rev;
}

std::vector<Value> transition_effect(const Net& net, int t) {
  std::vector<Value> eff(net.place_count());
  for (std::size_t p = 0; p < net.place_count(); ++p)
    eff[p] = net.output_weight(t, static_cast<int>(p)) -
             net.input_weight(static_cast<int>(p), t);
  return eff;
}

}  // namespace slat
