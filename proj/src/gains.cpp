#include "pdesync/gains.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pdesync {

using std::numbers::pi;

Interval Interval::open(double lo, double hi) {
  if (!(lo < hi)) return none();
  return {lo, hi, false};
}

Interval k_window_full(double alpha) {
  const double disc = pi * pi - 4.0 * alpha;
  if (!(disc > 0.0)) return Interval::none();
  const double half = pi / 2.0 * std::sqrt(disc);
  const double trace_bound = alpha - pi * pi / 4.0;
  return Interval::open(std::max(pi * pi / 2.0 - half, trace_bound), pi * pi / 2.0 + half);
}

Interval k_window_partial(double alpha, int n, int s) {
  if (s < 1 || s > n)
    throw InvalidLeaderCount("k_window_partial: need 1 <= s <= n, got s=" + std::to_string(s) +
                             ", n=" + std::to_string(n));
  if (!(alpha < s * pi * pi / (4.0 * n))) return Interval::none();
  const double half = pi / 2.0 * std::sqrt(pi * pi - 4.0 * (static_cast<double>(n) / s) * alpha);
  return Interval::open(pi * pi / 2.0 - half, pi * pi / 2.0 + half);
}

std::pair<double, double> minimize_max_eig_over_g(const FollowerGraph& graph, double alpha,
                                                  double k, std::pair<double, double> bracket,
                                                  double tol) {
  auto [lo, hi] = bracket;
  if (!(lo < hi)) throw std::invalid_argument("search_g: bracket must satisfy lo < hi");
  auto f = [&](double g) { return sym_eigenvalues(build_omega_s(graph, alpha, k, g)).max(); };

  while (hi - lo > tol) {
    const double m1 = lo + (hi - lo) / 3.0;
    const double m2 = hi - (hi - lo) / 3.0;
    if (f(m1) <= f(m2))
      hi = m2;
    else
      lo = m1;
  }
  const double g = 0.5 * (lo + hi);
  return {g, f(g)};
}

GSearchResult search_g(const NetworkConfig& cfg, std::pair<double, double> bracket,
                       double margin) {
  if (!cfg.has_simplified_form())
    throw InvalidSimplification("search_g: needs beta = 1, P = I and common k");
  if (!is_connected(cfg.graph()))
    throw GraphNotConnected("search_g: in-domain graph must be connected");
  const auto [g, val] =
      minimize_max_eig_over_g(cfg.graph(), cfg.alpha(), cfg.common_k(), bracket);
  Certificate cert = make_certificate(build_omega_s(cfg.graph(), cfg.alpha(), cfg.common_k(), g), margin);
  if (!cert.feasible) throw InfeasibleInBracket(val, g);
  return {g, std::move(cert)};
}

GainDesign design(const FollowerGraph& graph, double alpha, double beta,
                  std::pair<double, double> bracket, double margin) {
  if (!(beta > 0.0)) throw std::invalid_argument("design: beta must be positive");
  const double alpha_scaled = alpha / beta;

  GainDesign out;
  for (const auto& comp : connected_components(graph)) {
    ComponentDesign cd;
    cd.nodes = comp;
    cd.n = static_cast<int>(comp.size());
    cd.s = static_cast<int>(std::count_if(comp.begin(), comp.end(),
                                          [&](int i) { return graph.is_leader(i); }));
    if (cd.s == 0) {
      std::vector<int> labels;
      for (int i : comp) labels.push_back(i + 1);
      throw UncontrollableComponent(std::move(labels));
    }
    cd.k_window = k_window_partial(alpha_scaled, cd.n, cd.s);
    if (cd.k_window.empty)
      throw EmptyWindow("design: alpha/beta=" + std::to_string(alpha_scaled) +
                        " leaves no admissible k for a component with N=" + std::to_string(cd.n) +
                        ", s=" + std::to_string(cd.s));
    out.per_component.push_back(std::move(cd));
  }

  const auto narrowest = std::min_element(
      out.per_component.begin(), out.per_component.end(),
      [](const ComponentDesign& a, const ComponentDesign& b) { return a.k_window.width() < b.k_window.width(); });
  out.k_window = narrowest->k_window;
  out.k = out.k_window.midpoint();

  const auto [gs, val] = minimize_max_eig_over_g(graph, alpha_scaled, out.k, bracket);
  out.g_simplified = gs;
  out.g = beta * gs / 2.0;
  out.certificate =
      make_certificate(build_omega(NetworkConfig::uniform(graph, alpha, beta, out.k, out.g)), margin);
  if (!out.certificate.feasible) throw InfeasibleInBracket(val, gs);
  return out;
}

}  // namespace pdesync
