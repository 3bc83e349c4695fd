#pragma once

#include <map>
#include <optional>
#include <string>

#include "slat/net.hpp"

namespace slat {

// Carrier for a (net, initial marking) instance plus free-form metadata.
struct NetDocument {
  Net net{"", {}, {}};
  std::optional<Marking> initial_marking;
  std::map<std::string, std::string> metadata;

  bool operator==(const NetDocument&) const = default;
};

// Line-oriented text format, one directive per line, '#' starts a comment.
// Directives: net, places, transitions, arc <src> <dst> [weight],
// marking <id>=<nat> ..., meta <key> <value>.
NetDocument parse_net(const std::string& text);
std::string serialize_net(const NetDocument& doc);

// Marking literal of the CLI: "p1=3,p2=1"; unlisted places default to 0.
Marking parse_marking_literal(const Net& net, const std::string& literal);

}  // namespace slat
