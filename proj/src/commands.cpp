#include "pdesync/commands.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>

#include "pdesync/gains.hpp"
#include "pdesync/scenario.hpp"

namespace pdesync {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path sibling(const fs::path& config, const std::string& suffix) {
  return config.parent_path() / (config.stem().string() + suffix);
}

std::string join_labels(const std::vector<int>& nodes) {
  std::string s = "{";
  for (std::size_t i = 0; i < nodes.size(); ++i) s += (i ? "," : "") + std::to_string(nodes[i] + 1);
  return s + "}";
}

std::string interval_text(const Interval& w) {
  return w.empty ? "empty" : "(" + format_double(w.lo) + ", " + format_double(w.hi) + ")";
}

void require_initial_data(const Scenario& sc) {
  if (sc.sim.initial.followers.empty())
    throw ConfigError("sim.initial_conditions: \"sectionV\" needs N = 5; give explicit fields");
}

json interval_json(const Interval& w) {
  if (w.empty) return {{"empty", true}};
  return {{"empty", false}, {"lo", w.lo}, {"hi", w.hi}};
}

// Runs `body`, mapping configuration problems to exit 2 and domain errors to 1.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitNegative;
  }
}

}  // namespace

std::vector<double> Range::values() const {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i)
    v[i] = (i == count - 1) ? hi : lo + (hi - lo) * static_cast<double>(i) / (count - 1);
  return v;
}

std::optional<Range> parse_range(const std::string& text) {
  std::istringstream in(text);
  Range r;
  char c1 = 0, c2 = 0;
  if (!(in >> r.lo >> c1 >> r.hi >> c2 >> r.count) || c1 != ':' || c2 != ':') return std::nullopt;
  if (!in.eof() && in.peek() != std::char_traits<char>::eof()) return std::nullopt;
  if (r.count < 2 || !(r.lo <= r.hi)) return std::nullopt;
  return r;
}

int cmd_certify(const fs::path& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load_scenario(config);
    const NetworkConfig net = sc.network();
    const Certificate cert = make_certificate(build_omega(net), sc.margin);

    out << "lambda_max(Omega) = " << format_double(cert.max_eig) << "\n";
    out << "feasible = " << (cert.feasible ? "yes" : "no") << "\n";
    out << "margin delta = " << format_double(cert.margin_delta) << "\n";

    json report = {{"max_eig", cert.max_eig},
                   {"feasible", cert.feasible},
                   {"margin_delta", cert.margin_delta},
                   {"margin", sc.margin},
                   {"dimension", cert.omega.dim()}};
    if (net.has_simplified_form()) {
      const double s = sym_eigenvalues(build_omega_s(net)).max();
      report["omega_s_max_eig"] = s;
      out << "lambda_max(Omega_s) = " << format_double(s) << "  (in-domain block g L)\n";
    }
    const fs::path report_path = sibling(config, ".certify.json");
    const fs::path manifest_path = sibling(config, ".certify.manifest.json");
    write_json(report_path, report);
    write_json(manifest_path, make_manifest("certify", sc, {report_path.filename().string()}));
    return cert.feasible ? kExitOk : kExitNegative;
  });
}

int cmd_design(const fs::path& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load_scenario(config);
    {
      std::ifstream raw(config);
      const json file = json::parse(raw, nullptr, false);
      if (file.is_object() && (file.contains("k") || file.contains("g")))
        err << "warning: k and g in the scenario are ignored by design\n";
    }

    GainDesign d;
    try {
      d = design(sc.graph, sc.alpha, sc.beta, kDefaultGBracket, sc.margin);
    } catch (const UncontrollableComponent& e) {
      err << "error: uncontrollable component " << join_labels([&] {
        std::vector<int> z;
        for (int i : e.component()) z.push_back(i - 1);
        return z;
      }()) << " has no leader link\n";
      return int{kExitNegative};
    }

    for (const auto& c : d.per_component)
      out << "component " << join_labels(c.nodes) << " N=" << c.n << " s=" << c.s
          << " k-window " << interval_text(c.k_window) << "\n";
    out << "k = " << format_double(d.k) << "\n";
    out << "g = " << format_double(d.g) << "\n";
    out << "lambda_max(Omega) = " << format_double(d.certificate.max_eig) << "\n";
    out << "margin delta = " << format_double(d.certificate.margin_delta) << "\n";

    json designed = sc.resolved;
    designed["k"] = d.k;
    designed["g"] = d.g;
    json comps = json::array();
    for (const auto& c : d.per_component) {
      std::vector<int> labels;
      for (int i : c.nodes) labels.push_back(i + 1);
      comps.push_back({{"nodes", labels}, {"n", c.n}, {"s", c.s}, {"k_window", interval_text(c.k_window)}});
    }
    designed["design"] = {{"k_window", interval_json(d.k_window)},
                          {"g_simplified", d.g_simplified},
                          {"max_eig", d.certificate.max_eig},
                          {"margin_delta", d.certificate.margin_delta},
                          {"components", comps}};
    const fs::path design_path = sibling(config, ".design.json");
    write_json(design_path, designed);
    write_json(sibling(config, ".design.manifest.json"),
               make_manifest("design", sc, {design_path.filename().string()}));
    return int{kExitOk};
  });
}

int cmd_simulate(const fs::path& config, const fs::path& out_dir,
                 const std::optional<std::vector<double>>& snapshots, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load_scenario(config);
    require_initial_data(sc);
    const Trajectory traj = simulate(sc.network(), sc.sim);
    const ErrorSeries es = sync_errors(traj);
    const int n = traj.agents();
    fs::create_directories(out_dir);

    std::string csv = "t";
    for (int i = 1; i <= n; ++i) csv += ",err_agent_" + std::to_string(i);
    csv += ",err_total,pairwise_max\n";
    for (std::size_t t = 0; t < es.times.size(); ++t) {
      csv += format_double(es.times[t]);
      for (int i = 0; i < n; ++i) csv += "," + format_double(es.per_agent_l2[i][t]);
      csv += "," + format_double(es.total_l2[t]) + "," + format_double(es.pairwise_max[t]) + "\n";
    }
    write_text(out_dir / "errors.csv", csv);

    csv = "t";
    for (int i = 1; i <= n; ++i) csv += ",z_" + std::to_string(i);
    csv += ",z_leader\n";
    for (std::size_t t = 0; t < traj.times.size(); ++t) {
      csv += format_double(traj.times[t]);
      for (int i = 0; i < n; ++i) csv += "," + format_double(traj.z[i][t].back());
      csv += "," + format_double(traj.z_leader[t].back()) + "\n";
    }
    write_text(out_dir / "boundary.csv", csv);

    std::vector<double> want = snapshots.value_or(std::vector<double>{0.1, 0.5, 1.0, 2.5});
    std::vector<std::size_t> picks;
    for (double s : want) {
      if (s < 0.0 || s > sc.sim.t_end + 1e-12) {
        err << "warning: snapshot t=" << format_double(s) << " outside [0, t_end], skipped\n";
        continue;
      }
      std::size_t best = 0;
      for (std::size_t t = 1; t < es.times.size(); ++t)
        if (std::abs(es.times[t] - s) < std::abs(es.times[best] - s)) best = t;
      picks.push_back(best);
    }
    csv = "x";
    for (std::size_t p : picks) csv += ",ebar_t_" + format_double(es.times[p]);
    csv += "\n";
    for (std::size_t x = 0; x < traj.grid.size(); ++x) {
      csv += format_double(traj.grid[x]);
      for (std::size_t p : picks) csv += "," + format_double(es.avg_error_field[p][x]);
      csv += "\n";
    }
    write_text(out_dir / "avg_error.csv", csv);

    write_json(out_dir / "manifest.json",
               make_manifest("simulate", sc, {"errors.csv", "boundary.csv", "avg_error.csv"}));

    out << "initial total error = " << format_double(es.total_l2.front()) << "\n";
    out << "final total error = " << format_double(es.total_l2.back()) << " at t="
        << format_double(es.times.back()) << "\n";
    return int{kExitOk};
  });
}

int cmd_spectrum(const fs::path& config, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Scenario sc = load_scenario(config);
    const NetworkConfig net = sc.network();
    out << "analytic open-loop modes (alpha - beta j^2 pi^2):";
    for (double m : analytic_open_loop_spectrum(sc.alpha, sc.beta, 5)) out << " " << format_double(m);
    out << "\n";
    const double closed = spectral_abscissa(net, sc.sim);
    out << "closed-loop spectral abscissa = " << format_double(closed) << "\n";
    return int{kExitOk};
  });
}

int cmd_sweep(const fs::path& config, const std::string& k_range, const std::string& g_range,
              const fs::path& out_csv, bool with_simulation, std::ostream& out, std::ostream& err) {
  const auto kr = parse_range(k_range);
  const auto gr = parse_range(g_range);
  if (!kr || !gr) {
    err << "error: ranges must look like lo:hi:n with lo <= hi and n >= 2\n";
    return kExitUsage;
  }
  return guarded(err, [&] {
    const Scenario sc = load_scenario(config);
    if (with_simulation) require_initial_data(sc);
    const NetworkConfig base = sc.network();
    const std::vector<double> ks = kr->values();
    const std::vector<double> gs = gr->values();

    struct Row {
      double max_eig = std::numeric_limits<double>::quiet_NaN();
      bool feasible = false;
      double decay = std::numeric_limits<double>::quiet_NaN();
      std::string failure;
    };
    std::vector<Row> rows(ks.size() * gs.size());
    const long cells = static_cast<long>(rows.size());

#pragma omp parallel for schedule(dynamic)
    for (long c = 0; c < cells; ++c) {
      Row& r = rows[c];
      const NetworkConfig net = base.with_gains(ks[c / gs.size()], gs[c % gs.size()]);
      try {
        const Certificate cert = make_certificate(build_omega(net), sc.margin);
        r.max_eig = cert.max_eig;
        r.feasible = cert.feasible;
        if (with_simulation) {
          const ErrorSeries es = sync_errors(simulate(net, sc.sim));
          r.decay = fit_decay_rate(es, {0.5, std::min(2.0, sc.sim.t_end)});
        }
      } catch (const std::exception& e) {
        r.failure = e.what();
      }
    }

    std::string csv = with_simulation ? "k,g,max_eig_omega,feasible,decay_rate\n"
                                      : "k,g,max_eig_omega,feasible\n";
    int ok = 0;
    for (long c = 0; c < cells; ++c) {
      const Row& r = rows[c];
      if (!r.failure.empty())
        err << "row " << c + 1 << " (k=" << format_double(ks[c / gs.size()])
            << ", g=" << format_double(gs[c % gs.size()]) << "): " << r.failure << "\n";
      if (!std::isnan(r.max_eig)) ++ok;
      csv += format_double(ks[c / gs.size()]) + "," + format_double(gs[c % gs.size()]) + "," +
             format_double(r.max_eig) + "," + (r.feasible ? "1" : "0");
      if (with_simulation) csv += "," + format_double(r.decay);
      csv += "\n";
    }
    write_text(out_csv, csv);
    write_json(sibling(out_csv, ".manifest.json"),
               make_manifest("sweep", sc, {out_csv.filename().string()},
                             {{"k_range", k_range}, {"g_range", g_range}, {"simulate", with_simulation}}));
    out << ok << " of " << cells << " cells evaluated\n";
    return ok > 0 ? int{kExitOk} : int{kExitNegative};
  });
}

}  // namespace pdesync
