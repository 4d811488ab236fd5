#pragma once

// Scenario files (JSON) and run manifests.
//
//   {
//     "scenario_preset": "sectionV",              // optional base values
//     "graph": {"n": 5, "edges": [[1,3],[2,4],[3,4],[4,5]], "leader_set": [1,2,3]},
//     "alpha": 0, "beta": 1, "k": 3, "g": -2,    // k, g: number or per-agent list
//     "P": [[...]],                               // optional, default identity
//     "margin": 1e-9,
//     "sim": {"nx": 101, "dt": 0.001, "t_end": 2.5, "source": "paper",
//             "scheme": "crank_nicolson", "output_stride": 10,
//             "initial_conditions": "sectionV", "leader_seven_pi": false}
//   }
//
// A preset supplies base values; keys present in the file replace them and
// are listed in the manifest as overridden. Indices are 1-based.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pdesync/certify.hpp"
#include "pdesync/pdesim.hpp"

namespace pdesync {

inline constexpr const char* kToolVersion = "0.1.0";

/// Unreadable or malformed scenario (CLI exit code 2).
class ConfigError : public Error {
  using Error::Error;
};

struct Scenario {
  std::optional<std::string> preset;
  std::vector<std::string> overridden;  // keys the file set on top of the preset
  nlohmann::json resolved;              // every value, in the file schema
  FollowerGraph graph;
  double alpha = 0.0;
  double beta = 1.0;
  Vector k;
  Vector g;
  std::optional<SymMatrix> p;
  double margin = kFeasibilityMargin;
  SimConfig sim;

  NetworkConfig network() const;
};

/// Base JSON for "sectionV", "fig5_k0" or "fig6_g0". Throws ConfigError.
nlohmann::json preset_json(const std::string& name);

/// Resolves presets, defaults and overrides. A run manifest (flat record with
/// a "config_json" entry) is accepted too and reproduces its run.
Scenario parse_scenario(const nlohmann::json& file);
Scenario load_scenario(const std::filesystem::path& path);

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

struct ManifestEntry {
  std::string key;
  nlohmann::json value;  // scalar
};

/// Flat key/value record describing a run.
nlohmann::json make_manifest(const std::string& command, const Scenario& sc,
                             const std::vector<std::string>& outputs,
                             const std::vector<ManifestEntry>& extra = {});

void write_text(const std::filesystem::path& path, const std::string& text);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace pdesync
