#include "pdesync/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

#include "pdesync/gains.hpp"

namespace pdesync {

using nlohmann::json;

namespace {

json default_sim() {
  return {{"nx", 101},
          {"dt", 1e-3},
          {"t_end", 2.5},
          {"source", "paper"},
          {"scheme", "crank_nicolson"},
          {"output_stride", 10},
          {"initial_conditions", "sectionV"},
          {"leader_seven_pi", false}};
}

json example_graph_json() {
  return {{"n", 5}, {"edges", {{1, 3}, {2, 4}, {3, 4}, {4, 5}}}, {"leader_set", {1, 2, 3}}};
}

Vector gains_from(const json& j, int n, const char* name) {
  if (j.is_number()) return Vector(static_cast<std::size_t>(n), j.get<double>());
  if (j.is_array()) {
    Vector v = j.get<Vector>();
    if (static_cast<int>(v.size()) != n)
      throw ConfigError(std::string(name) + ": per-agent list must have N entries");
    return v;
  }
  throw ConfigError(std::string(name) + ": expected a number or a list");
}

Vector field_from(const json& j, int nx, const char* what) {
  if (j.is_number()) return Vector(static_cast<std::size_t>(nx), j.get<double>());
  if (j.is_array()) {
    Vector v = j.get<Vector>();
    if (static_cast<int>(v.size()) != nx)
      throw ConfigError(std::string(what) + ": sample list length must equal nx");
    return v;
  }
  throw ConfigError(std::string(what) + ": expected a constant or nx samples");
}

SimConfig sim_from(const json& s, int n_followers) {
  SimConfig sim;
  sim.nx = s.at("nx").get<int>();
  sim.dt = s.at("dt").get<double>();
  sim.t_end = s.at("t_end").get<double>();
  sim.output_stride = s.at("output_stride").get<int>();

  const auto source = s.at("source").get<std::string>();
  if (source == "paper")
    sim.source = SourceKind::paper;
  else if (source == "off")
    sim.source = SourceKind::off;
  else
    throw ConfigError("sim.source must be \"paper\" or \"off\"");

  const auto scheme = s.at("scheme").get<std::string>();
  if (scheme == "crank_nicolson")
    sim.scheme = TimeScheme::crank_nicolson;
  else if (scheme == "backward_euler")
    sim.scheme = TimeScheme::backward_euler;
  else
    throw ConfigError("sim.scheme must be \"crank_nicolson\" or \"backward_euler\"");

  if (sim.nx < 16) throw ConfigError("sim.nx must be >= 16");
  const json& ic = s.at("initial_conditions");
  if (ic.is_string()) {
    if (ic.get<std::string>() != "sectionV")
      throw ConfigError("sim.initial_conditions: unknown preset " + ic.dump());
    // Left empty for other network sizes; simulating such a scenario is
    // rejected by the commands that need initial data.
    if (n_followers == 5) sim.initial = section_v_initial_data(sim.nx, s.at("leader_seven_pi").get<bool>());
  } else {
    const json& fs = ic.at("followers");
    if (!fs.is_array() || static_cast<int>(fs.size()) != n_followers)
      throw ConfigError("sim.initial_conditions.followers must list N fields");
    for (const json& f : fs) sim.initial.followers.push_back(field_from(f, sim.nx, "follower field"));
    sim.initial.leader = field_from(ic.at("leader"), sim.nx, "leader field");
  }
  try {
    sim.validate(n_followers);
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return sim;
}

Scenario from_resolved(json resolved) {
  Scenario sc;
  const json& gj = resolved.at("graph");
  std::vector<std::pair<int, int>> edges;
  for (const json& e : gj.at("edges")) {
    if (!e.is_array() || e.size() != 2) throw ConfigError("graph.edges entries must be pairs");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  sc.graph = build_graph(gj.at("n").get<int>(), edges, gj.at("leader_set").get<std::vector<int>>());
  const int n = sc.graph.n();
  sc.alpha = resolved.at("alpha").get<double>();
  sc.beta = resolved.at("beta").get<double>();
  sc.k = gains_from(resolved.at("k"), n, "k");
  sc.g = gains_from(resolved.at("g"), n, "g");
  sc.margin = resolved.at("margin").get<double>();
  if (resolved.contains("P")) {
    const auto rows = resolved.at("P").get<std::vector<Vector>>();
    Matrix p(rows.size(), rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw ConfigError("P must be square");
      for (std::size_t j = 0; j < rows.size(); ++j) p(i, j) = rows[i][j];
    }
    sc.p = SymMatrix(p);
  }
  sc.sim = sim_from(resolved.at("sim"), n);
  if (resolved.contains("scenario_preset")) sc.preset = resolved.at("scenario_preset").get<std::string>();
  sc.resolved = std::move(resolved);
  // Catch invalid beta / P here rather than mid-command.
  try {
    (void)sc.network();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  return sc;
}

}  // namespace

NetworkConfig Scenario::network() const { return NetworkConfig(graph, alpha, beta, k, g, p); }

json preset_json(const std::string& name) {
  json base = {{"graph", example_graph_json()}, {"alpha", 0.0}, {"beta", 1.0}, {"k", 3.0},
               {"g", -2.0}, {"margin", kFeasibilityMargin}, {"sim", default_sim()}};
  if (name == "sectionV") return base;
  if (name == "fig5_k0") {
    base["k"] = 0.0;
    return base;
  }
  if (name == "fig6_g0") {
    base["g"] = 0.0;
    return base;
  }
  throw ConfigError("unknown scenario_preset \"" + name + "\"");
}

Scenario parse_scenario(const json& file_in) {
  try {
    if (!file_in.is_object()) throw ConfigError("scenario must be a JSON object");
    if (file_in.contains("config_json")) return parse_scenario(json::parse(file_in.at("config_json").get<std::string>()));

    json resolved = {{"beta", 1.0}, {"k", 0.0}, {"g", 0.0}, {"margin", kFeasibilityMargin},
                     {"sim", default_sim()}};
    std::vector<std::string> overridden;
    const bool has_preset = file_in.contains("scenario_preset");
    if (has_preset) resolved = preset_json(file_in.at("scenario_preset").get<std::string>());

    for (const auto& [key, value] : file_in.items()) {
      if (key == "scenario_preset") continue;
      if (key == "sim") {
        if (!value.is_object()) throw ConfigError("sim must be an object");
        for (const auto& [sk, sv] : value.items()) {
          if (!resolved["sim"].contains(sk)) throw ConfigError("unknown sim key \"" + sk + "\"");
          resolved["sim"][sk] = sv;
          if (has_preset) overridden.push_back("sim." + sk);
        }
        continue;
      }
      if (key == "design") continue;  // annotation written by the design command
      static const std::vector<std::string> known = {"graph", "alpha", "beta", "k", "g", "P", "margin"};
      if (std::find(known.begin(), known.end(), key) == known.end())
        throw ConfigError("unknown key \"" + key + "\"");
      resolved[key] = value;
      if (has_preset) overridden.push_back(key);
    }
    if (!resolved.contains("graph")) throw ConfigError("missing \"graph\"");
    if (!resolved.contains("alpha")) throw ConfigError("missing \"alpha\"");
    if (has_preset) resolved["scenario_preset"] = file_in.at("scenario_preset");

    Scenario sc = from_resolved(std::move(resolved));
    sc.overridden = std::move(overridden);
    return sc;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed scenario: ") + e.what());
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return parse_scenario(j);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

json make_manifest(const std::string& command, const Scenario& sc,
                   const std::vector<std::string>& outputs, const std::vector<ManifestEntry>& extra) {
  std::string out_list, over;
  for (const auto& o : outputs) out_list += (out_list.empty() ? "" : ",") + o;
  for (const auto& o : sc.overridden) over += (over.empty() ? "" : ",") + o;

  json m = {{"command", command},
            {"tool_version", kToolVersion},
            {"scenario_preset", sc.preset.value_or("")},
            {"overridden_fields", over},
            {"n", sc.graph.n()},
            {"alpha", sc.alpha},
            {"beta", sc.beta},
            {"k", sc.resolved.at("k").dump()},
            {"g", sc.resolved.at("g").dump()},
            {"nx", sc.sim.nx},
            {"dt", sc.sim.dt},
            {"t_end", sc.sim.t_end},
            {"output_stride", sc.sim.output_stride},
            {"feasibility_margin", sc.margin},
            {"eig_tolerance", kDefaultEigTol},
            {"g_tolerance", kGTolerance},
            {"divergence_bound", kDivergenceBound},
            {"outputs", out_list},
            {"config_json", sc.resolved.dump()}};
  for (const auto& e : extra) m[e.key] = e.value;
  return m;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

}  // namespace pdesync
