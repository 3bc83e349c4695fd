// Command-line front end: parse/serialize nets, explore, compute dead sets,
// and run the liveness decision procedures with JSON verdicts on stdout.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "slat/acceleration.hpp"
#include "slat/coverability.hpp"
#include "slat/errors.hpp"
#include "slat/exploration.hpp"
#include "slat/liveness.hpp"
#include "slat/net_format.hpp"
#include "slat/presburger_parse.hpp"
#include "slat/structural.hpp"

namespace {

using nlohmann::json;
using namespace slat;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> resolve_transitions(const Net& net, const std::string& list) {
  std::vector<int> out;
  std::string token;
  std::istringstream ss(list);
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    int idx = net.transition_index(token);
    if (idx < 0) throw input_error("unknown transition: " + token);
    out.push_back(idx);
  }
  if (out.empty()) throw input_error("transition list is empty");
  return out;
}

Marking initial_marking(const NetDocument& doc, const std::string& override_literal) {
  if (!override_literal.empty()) return parse_marking_literal(doc.net, override_literal);
  if (doc.initial_marking) return *doc.initial_marking;
  throw input_error("no marking: the file has none and --marking was not given");
}

json marking_json(const Net& net, const Marking& m) {
  json o = json::object();
  for (std::size_t p = 0; p < net.place_count(); ++p)
    o[net.place_names()[p]] = m[p];
  return o;
}

json sequence_json(const Net& net, const FiringSequence& u) {
  json a = json::array();
  for (int t : u) a.push_back(net.transition_names()[static_cast<std::size_t>(t)]);
  return a;
}

json downset_json(const Net& net, const DownSet& d) {
  json a = json::array();
  for (const OmegaMarking& b : d.basis) {
    json row = json::array();
    for (std::size_t p = 0; p < net.place_count(); ++p) {
      if (b[p] == kOmega)
        row.push_back("w");
      else
        row.push_back(b[p]);
    }
    a.push_back(row);
  }
  return a;
}

json semilinear_json(const SemilinearSet& s) {
  json a = json::array();
  for (const LinearSet& c : s.components) {
    json o;
    o["base"] = c.base;
    o["periods"] = c.periods;
    a.push_back(o);
  }
  return a;
}

const char* answer_str(Answer a) {
  switch (a) {
    case Answer::Yes: return "yes";
    case Answer::No: return "no";
    default: return "unknown";
  }
}

json verdict_json(const Net& net, const std::string& problem, const Verdict& v) {
  json o;
  o["problem"] = problem;
  o["answer"] = answer_str(v.answer);
  json cert;
  if (v.path) {
    cert["type"] = "path";
    cert["transitions"] = sequence_json(net, *v.path);
  } else if (v.invariant) {
    cert["type"] = "invariant";
    cert["components"] = semilinear_json(*v.invariant);
  } else {
    cert = nullptr;
  }
  if (v.witness) {
    json w;
    w["marking"] = marking_json(net, *v.witness);
    if (!cert.is_null()) w["evidence"] = cert;
    cert = json{{"type", "witness"}};
    cert.update(w);
  }
  o["certificate"] = cert;
  o["stats"] = {{"nodes", v.stats.nodes},
                {"steps", v.stats.steps},
                {"budget_used", v.stats.budget_used}};
  return o;
}

int finish(const json& verdict, Answer a) {
  std::cout << verdict.dump(2) << "\n";
  return a == Answer::Unknown ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"structural liveness analysis toolkit"};
  app.require_subcommand(1);

  std::string file, marking_lit, transitions_lit, out_path, formula_text;
  std::size_t budget = 1 << 16;
  Value bound = 4;

  auto add_common = [&](CLI::App* cmd, bool needs_file = true) {
    if (needs_file) cmd->add_option("file", file, "net description file")->required();
    cmd->add_option("--marking", marking_lit, "initial marking literal, e.g. p1=3,p2=1");
    cmd->add_option("--budget", budget, "node expansion budget");
  };

  auto* cmd_parse = app.add_subcommand("parse", "validate a net file and print it canonically");
  add_common(cmd_parse);

  auto* cmd_fire = app.add_subcommand("fire", "fire a transition sequence");
  add_common(cmd_fire);
  std::string seq_lit;
  cmd_fire->add_option("--sequence", seq_lit, "comma-separated transition names")->required();

  auto* cmd_reach = app.add_subcommand("reach", "breadth-first reachability prefix");
  add_common(cmd_reach);
  cmd_reach->add_option("--emit-dot", out_path, "write the graph in dot format");

  auto* cmd_dead = app.add_subcommand("deadset", "markings where a transition set dies");
  add_common(cmd_dead);
  cmd_dead->add_option("--transitions", transitions_lit,
                       "comma-separated transition names (default: all)");

  auto* cmd_live = app.add_subcommand("live", "liveness of a transition set at a marking");
  add_common(cmd_live);
  cmd_live->add_option("--transitions", transitions_lit,
                       "comma-separated transition names (default: all)");

  auto* cmd_weak = app.add_subcommand("weaklive", "weak liveness of a transition set");
  add_common(cmd_weak);
  cmd_weak->add_option("--transitions", transitions_lit,
                       "comma-separated transition names (default: all)");

  auto* cmd_reduce = app.add_subcommand("reduce", "wrap the reversed net in a generator gadget");
  add_common(cmd_reduce);
  cmd_reduce->add_option("--transitions", transitions_lit,
                         "comma-separated transition names (default: all)");
  cmd_reduce->add_option("--emit-reduction", out_path, "write the wrapped net to a file");

  auto* cmd_struct =
      app.add_subcommand("structural", "existence of a live initial marking");
  add_common(cmd_struct);
  cmd_struct->add_option("--transitions", transitions_lit,
                         "comma-separated transition names (default: all)");

  auto* cmd_scan = app.add_subcommand("scan", "liveness verdicts over a box of markings");
  add_common(cmd_scan);
  cmd_scan->add_option("--transitions", transitions_lit,
                       "comma-separated transition names (default: all)");
  cmd_scan->add_option("--bound", bound, "box bound per place");

  auto* cmd_formula = app.add_subcommand("decide-formula", "truth of a closed formula");
  cmd_formula->add_option("file", file, "formula file ('-' reads stdin)")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    auto all_or_listed = [&](const Net& net) {
      if (!transitions_lit.empty()) return resolve_transitions(net, transitions_lit);
      if (net.transition_count() == 0) throw input_error("net has no transitions");
      std::vector<int> all(net.transition_count());
      for (std::size_t t = 0; t < all.size(); ++t) all[t] = static_cast<int>(t);
      return all;
    };

    if (cmd_parse->parsed()) {
      NetDocument doc = parse_net(read_file(file));
      std::cout << serialize_net(doc);
      return 0;
    }
    if (cmd_fire->parsed()) {
      NetDocument doc = parse_net(read_file(file));
      Marking m = initial_marking(doc, marking_lit);
      FiringSequence u = resolve_transitions(doc.net, seq_lit);
      Marking end = fire_sequence(doc.net, m, u);
      json o;
      o["problem"] = "fire";
      o["from"] = marking_json(doc.net, m);
      o["sequence"] = sequence_json(doc.net, u);
      o["to"] = marking_json(doc.net, end);
      std::cout << o.dump(2) << "\n";
      return 0;
    }
    if (cmd_reach->parsed()) {
      NetDocument doc = parse_net(read_file(file));
      Marking m = initial_marking(doc, marking_lit);
      ReachGraph g = bfs_reach(doc.net, m, budget);
      if (!out_path.empty()) {
        std::ofstream dot(out_path);
        dot << g.to_dot(doc.net);
      }
      json o;
      o["problem"] = "reach";
      o["nodes"] = g.nodes.size();
      o["edges"] = g.edges.size();
      o["truncated"] = g.truncated;
      std::cout << o.dump(2) << "\n";
      return 0;
    }
    if (cmd_dead->parsed()) {
      NetDocument doc = parse_net(read_file(file));
      DeadSetReport report = dead_set(doc.net, all_or_listed(doc.net));
      json o;
      o["problem"] = "deadset";
      o["dead_set"] = downset_json(doc.net, report.dead_set);
      json per = json::object();
      for (const auto& [t, sat] : report.per_transition) {
        json basis = json::array();
        for (const CoverElement& e : sat.basis) {
          basis.push_back({{"marking", marking_json(doc.net, e.marking)},
                           {"chain", sequence_json(doc.net, e.chain)}});
        }
        per[doc.net.transition_names()[static_cast<std::size_t>(t)]] = basis;
      }
      o["cover_basis"] = per;
      o["iterations"] = report.iterations;
      std::cout << o.dump(2) << "\n";
      return 0;
    }
    if (cmd_live->parsed() || cmd_weak->parsed()) {
      const bool weak = cmd_weak->parsed();
      NetDocument doc = parse_net(read_file(file));
      Marking m = initial_marking(doc, marking_lit);
      std::vector<int> ts = all_or_listed(doc.net);
      Verdict v = weak ? is_weakly_live_set(doc.net, m, ts, budget)
                       : is_live_set(doc.net, m, ts, budget);
      return finish(verdict_json(doc.net, weak ? "weak-liveness" : "liveness", v), v.answer);
    }
    if (cmd_reduce->parsed()) {
      NetDocument doc = parse_net(read_file(file));
      ReductionNet red = build_reduction(doc.net, all_or_listed(doc.net));
      if (!out_path.empty()) {
        NetDocument out{red.net, red.initial, {}};
        std::ofstream f(out_path);
        f << serialize_net(out);
      }
      json o;
      o["problem"] = "reduce";
      o["places"] = red.net.place_count();
      o["transitions"] = red.net.transition_count();
      o["components"] = red.description.components.size();
      o["initial"] = marking_json(red.net, red.initial);
      std::cout << o.dump(2) << "\n";
      return 0;
    }
    if (cmd_struct->parsed()) {
      NetDocument doc = parse_net(read_file(file));
      Verdict v = find_live_marking(doc.net, all_or_listed(doc.net), budget);
      return finish(verdict_json(doc.net, "structural-liveness", v), v.answer);
    }
    if (cmd_scan->parsed()) {
      NetDocument doc = parse_net(read_file(file));
      auto scan = live_predicate_scan(doc.net, all_or_listed(doc.net), bound, budget);
      json rows = json::array();
      for (const auto& [m, a] : scan)
        rows.push_back({{"marking", marking_json(doc.net, m)}, {"answer", answer_str(a)}});
      json o;
      o["problem"] = "liveness-scan";
      o["bound"] = bound;
      o["results"] = rows;
      std::cout << o.dump(2) << "\n";
      return 0;
    }
    if (cmd_formula->parsed()) {
      std::string text;
      if (file == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        text = ss.str();
      } else {
        text = read_file(file);
      }
      pa::ParsedFormula parsed = pa::parse_formula(text);
      if (!pa::free_vars(parsed.formula).empty())
        throw input_error("formula must be closed (bind every variable)");
      json o;
      o["problem"] = "decide-formula";
      o["answer"] = pa::decide(parsed.formula) ? "yes" : "no";
      std::cout << o.dump(2) << "\n";
      return 0;
    }
  } catch (const parse_error& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "parse"}, {"line", e.line}}.dump() << "\n";
    return 1;
  } catch (const input_error& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "input"}}.dump() << "\n";
    return 1;
  } catch (const budget_error& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "budget"}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << json{{"error", e.what()}, {"kind", "internal"}}.dump() << "\n";
    return 1;
  }
  return 1;
}
