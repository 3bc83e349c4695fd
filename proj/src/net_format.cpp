#include "slat/net_format.hpp"

#include <cctype>
#include <sstream>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace slat {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == '#') break;
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(std::move(cur)), cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

Value parse_nat(const std::string& s, int line_no, const char* what) {
  if (s.empty()) throw parse_error(std::string("empty ") + what, line_no);
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c)))
      throw parse_error(std::string("invalid ") + what + ": " + s, line_no);
  if (s.size() > 18) throw parse_error(std::string(what) + " out of range: " + s, line_no);
  return std::stoll(s);
}

bool valid_identifier(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.'))
      return false;
  return true;
}

}  // namespace

NetDocument parse_net(const std::string& text) {
  std::string name;
  std::vector<std::string> places, transitions;
  struct Arc {
    std::string src, dst;
    Value weight;
    int line;
  };
  std::vector<Arc> arcs;
  std::vector<std::pair<std::string, Value>> marking_entries;
  bool have_marking = false;
  std::map<std::string, std::string> metadata;
  bool saw_places = false, saw_transitions = false, saw_net = false;
  std::unordered_set<std::string> seen_ids;

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    auto toks = tokenize(raw);
    if (toks.empty()) continue;
    const std::string& directive = toks[0];
    if (directive == "net") {
      if (saw_net) throw parse_error("duplicate net directive", line_no);
      if (toks.size() != 2) throw parse_error("net directive takes one name", line_no);
      if (!valid_identifier(toks[1])) throw parse_error("invalid net name: " + toks[1], line_no);
      name = toks[1];
      saw_net = true;
    } else if (directive == "places") {
      if (saw_places) throw parse_error("duplicate places directive", line_no);
      saw_places = true;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!valid_identifier(toks[i]))
          throw parse_error("invalid place identifier: " + toks[i], line_no);
        if (!seen_ids.insert(toks[i]).second)
          throw parse_error("duplicate identifier: " + toks[i], line_no);
        places.push_back(toks[i]);
      }
    } else if (directive == "transitions") {
      if (saw_transitions) throw parse_error("duplicate transitions directive", line_no);
      saw_transitions = true;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        if (!valid_identifier(toks[i]))
          throw parse_error("invalid transition identifier: " + toks[i], line_no);
        if (!seen_ids.insert(toks[i]).second)
          throw parse_error("duplicate identifier: " + toks[i], line_no);
        transitions.push_back(toks[i]);
      }
    } else if (directive == "arc") {
      if (toks.size() != 3 && toks.size() != 4)
        throw parse_error("arc directive takes: arc <src> <dst> [weight]", line_no);
      Value w = toks.size() == 4 ? parse_nat(toks[3], line_no, "weight") : 1;
      arcs.push_back({toks[1], toks[2], w, line_no});
    } else if (directive == "marking") {
      if (have_marking) throw parse_error("duplicate marking directive", line_no);
      have_marking = true;
      for (std::size_t i = 1; i < toks.size(); ++i) {
        auto eq = toks[i].find('=');
        if (eq == std::string::npos)
          throw parse_error("marking entries look like <place>=<nat>: " + toks[i], line_no);
        marking_entries.emplace_back(toks[i].substr(0, eq),
                                     parse_nat(toks[i].substr(eq + 1), line_no, "token count"));
        if (marking_entries.back().first.empty())
          throw parse_error("empty place name in marking entry", line_no);
      }
    } else if (directive == "meta") {
      if (toks.size() < 3) throw parse_error("meta directive takes: meta <key> <value>", line_no);
      std::string value = toks[2];
      for (std::size_t i = 3; i < toks.size(); ++i) value += " " + toks[i];
      if (metadata.count(toks[1])) throw parse_error("duplicate meta key: " + toks[1], line_no);
      metadata[toks[1]] = value;
    } else {
      throw parse_error("unknown directive: " + directive, line_no);
    }
  }

  NetDocument doc;
  try {
    doc.net = Net(name, places, transitions);
  } catch (const input_error& e) {
    throw parse_error(e.what(), line_no);
  }
  for (const auto& a : arcs) {
    int sp = doc.net.place_index(a.src), st = doc.net.transition_index(a.src);
    int dp = doc.net.place_index(a.dst), dt = doc.net.transition_index(a.dst);
    if (sp < 0 && st < 0) throw parse_error("unknown identifier: " + a.src, a.line);
    if (dp < 0 && dt < 0) throw parse_error("unknown identifier: " + a.dst, a.line);
    if (sp >= 0 && dt >= 0) {
      if (doc.net.input_weight(sp, dt))
        throw parse_error("duplicate arc " + a.src + " -> " + a.dst, a.line);
      doc.net.set_input_weight(sp, dt, a.weight);
    } else if (st >= 0 && dp >= 0) {
      if (doc.net.output_weight(st, dp))
        throw parse_error("duplicate arc " + a.src + " -> " + a.dst, a.line);
      doc.net.set_output_weight(st, dp, a.weight);
    } else {
      throw parse_error("arc endpoints must alternate place/transition", a.line);
    }
  }
  if (have_marking) {
    std::vector<Value> values(doc.net.place_count(), 0);
    std::vector<bool> set(doc.net.place_count(), false);
    for (const auto& [id, v] : marking_entries) {
      int p = doc.net.place_index(id);
      if (p < 0) throw parse_error("unknown place in marking: " + id, line_no);
      if (set[p]) throw parse_error("duplicate place in marking: " + id, line_no);
      set[p] = true;
      values[p] = v;
    }
    doc.initial_marking = Marking(std::move(values));
  }
  doc.metadata = std::move(metadata);
  return doc;
}

std::string serialize_net(const NetDocument& doc) {
  std::ostringstream os;
  const Net& n = doc.net;
  os << "net " << (n.name().empty() ? "unnamed" : n.name()) << "\n";
  os << "places";
  for (const auto& p : n.place_names()) os << ' ' << p;
  os << "\ntransitions";
  for (const auto& t : n.transition_names()) os << ' ' << t;
  os << "\n";
  for (std::size_t p = 0; p < n.place_count(); ++p)
    for (std::size_t t = 0; t < n.transition_count(); ++t) {
      Value w = n.input_weight(static_cast<int>(p), static_cast<int>(t));
      if (w > 0) {
        os << "arc " << n.place_names()[p] << ' ' << n.transition_names()[t];
        if (w != 1) os << ' ' << w;
        os << "\n";
      }
    }
  for (std::size_t t = 0; t < n.transition_count(); ++t)
    for (std::size_t p = 0; p < n.place_count(); ++p) {
      Value w = n.output_weight(static_cast<int>(t), static_cast<int>(p));
      if (w > 0) {
        os << "arc " << n.transition_names()[t] << ' ' << n.place_names()[p];
        if (w != 1) os << ' ' << w;
        os << "\n";
      }
    }
  if (doc.initial_marking) {
    os << "marking";
    for (std::size_t p = 0; p < n.place_count(); ++p)
      if ((*doc.initial_marking)[p] > 0)
        os << ' ' << n.place_names()[p] << '=' << (*doc.initial_marking)[p];
    os << "\n";
  }
  for (const auto& [k, v] : doc.metadata) os << "meta " << k << ' ' << v << "\n";
  return os.str();
}

Marking parse_marking_literal(const Net& net, const std::string& literal) {
  std::vector<Value> values(net.place_count(), 0);
  std::string cur;
  std::vector<std::string> parts;
  for (char c : literal) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  for (const auto& part : parts) {
    if (part.empty()) continue;
    auto eq = part.find('=');
    if (eq == std::string::npos) throw input_error("marking entry must be <place>=<nat>: " + part);
    int p = net.require_place(part.substr(0, eq));
    const std::string num = part.substr(eq + 1);
    for (char c : num)
      if (!std::isdigit(static_cast<unsigned char>(c)))
        throw input_error("invalid token count: " + num);
    if (num.empty() || num.size() > 18) throw input_error("invalid token count: " + num);
    values[p] = std::stoll(num);
  }
  return Marking(std::move(values));
}

}  // namespace slat
