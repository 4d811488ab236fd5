// pdesync: certify, design and simulate leader synchronization of coupled
// heat equations with integral boundary feedback.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "pdesync/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Leader synchronization certifier and simulator for networks of heat equations"};
  app.require_subcommand(1);

  std::string config;
  auto* certify = app.add_subcommand("certify", "check the matrix-inequality certificate");
  certify->add_option("config", config, "scenario JSON")->required();

  auto* design = app.add_subcommand("design", "synthesize boundary gain k and in-domain gain g");
  design->add_option("config", config, "scenario JSON")->required();

  std::string out_dir;
  std::string snapshots;
  auto* simulate = app.add_subcommand("simulate", "run the closed loop and write CSV series");
  simulate->add_option("config", config, "scenario JSON")->required();
  simulate->add_option("--out", out_dir, "output directory")->required();
  simulate->add_option("--snapshots", snapshots, "comma-separated times for avg_error.csv");

  auto* spectrum = app.add_subcommand("spectrum", "open-loop modes and closed-loop abscissa");
  spectrum->add_option("config", config, "scenario JSON")->required();

  std::string k_range, g_range, out_csv;
  bool with_sim = false;
  auto* sweep = app.add_subcommand("sweep", "feasibility map over a (k, g) grid");
  sweep->add_option("config", config, "scenario JSON")->required();
  sweep->add_option("--k", k_range, "lo:hi:n")->required();
  sweep->add_option("--g", g_range, "lo:hi:n")->required();
  sweep->add_option("--out", out_csv, "output CSV")->required();
  sweep->add_flag("--simulate", with_sim, "also fit the decay rate of each cell");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pdesync::kExitUsage;
  }

  if (*certify) return pdesync::cmd_certify(config, std::cout, std::cerr);
  if (*design) return pdesync::cmd_design(config, std::cout, std::cerr);
  if (*spectrum) return pdesync::cmd_spectrum(config, std::cout, std::cerr);
  if (*sweep) return pdesync::cmd_sweep(config, k_range, g_range, out_csv, with_sim, std::cout, std::cerr);

  std::optional<std::vector<double>> snaps;
  if (!snapshots.empty()) {
    snaps.emplace();
    std::istringstream in(snapshots);
    std::string item;
    while (std::getline(in, item, ',')) {
      try {
        std::size_t used = 0;
        snaps->push_back(std::stod(item, &used));
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        std::cerr << "error: bad snapshot time \"" << item << "\"\n";
        return pdesync::kExitUsage;
      }
    }
  }
  return pdesync::cmd_simulate(config, out_dir, snaps, std::cout, std::cerr);
}
