#pragma once

// Subcommands behind the `pdesync` executable. Each returns the process exit
// code: 0 success / feasible, 1 domain-level negative outcome, 2 usage or
// parse error.

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace pdesync {

enum ExitCode : int { kExitOk = 0, kExitNegative = 1, kExitUsage = 2 };

/// Prints lambda_max(Omega), feasibility and the margin; writes
/// <stem>.certify.json and <stem>.certify.manifest.json next to the config.
int cmd_certify(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

/// Writes <stem>.design.json (a scenario file carrying the designed k and g)
/// and <stem>.design.manifest.json.
int cmd_design(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

/// errors.csv, boundary.csv, avg_error.csv and manifest.json in out_dir.
/// Snapshots default to 0.1, 0.5, 1, 2.5 (those <= t_end).
int cmd_simulate(const std::filesystem::path& config, const std::filesystem::path& out_dir,
                 const std::optional<std::vector<double>>& snapshots, std::ostream& out,
                 std::ostream& err);

int cmd_spectrum(const std::filesystem::path& config, std::ostream& out, std::ostream& err);

/// Ranges are "lo:hi:n" with n >= 2. Writes out_csv and <out stem>.manifest.json.
int cmd_sweep(const std::filesystem::path& config, const std::string& k_range,
              const std::string& g_range, const std::filesystem::path& out_csv, bool with_simulation,
              std::ostream& out, std::ostream& err);

struct Range {
  double lo = 0.0;
  double hi = 0.0;
  int count = 0;
  std::vector<double> values() const;
};

/// Parses "lo:hi:n"; nullopt when malformed or n < 2.
std::optional<Range> parse_range(const std::string& text);

}  // namespace pdesync
