#pragma once

// Gain synthesis: closed-form admissible windows for the boundary gain k and
// a convex scalar search for the in-domain gain g.

#include <utility>
#include <vector>

#include "pdesync/certify.hpp"

namespace pdesync {

/// Open interval (lo, hi).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;

  static Interval none() { return {}; }
  static Interval open(double lo, double hi);
  bool contains(double x) const { return !empty && lo < x && x < hi; }
  double width() const { return empty ? 0.0 : hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
};

/// Every follower linked to the leader: k > alpha - pi^2/4 intersected with
/// k^2 - pi^2 k + pi^2 alpha < 0. Empty when alpha >= pi^2/4.
Interval k_window_full(double alpha);

/// s of n followers linked: pi^2/2 -+ (pi/2) sqrt(pi^2 - 4 (n/s) alpha).
/// Empty when alpha >= s pi^2 / (4n). Throws InvalidLeaderCount unless
/// 1 <= s <= n.
Interval k_window_partial(double alpha, int n, int s);

struct GSearchResult {
  double g = 0.0;  // in the Omega_s convention (g L in the lower block)
  Certificate certificate;  // of Omega_s at g
};

inline constexpr std::pair<double, double> kDefaultGBracket{-1e4, 0.0};
inline constexpr double kGTolerance = 1e-6;

/// Minimizes lambda_max(Omega_s(g)) over the bracket by ternary search (the
/// function is convex since Omega_s is affine in g). Uses the config's
/// alpha and common k; its g is ignored. Requires the simplified form and a
/// connected in-domain graph (GraphNotConnected otherwise). Throws
/// InfeasibleInBracket when the minimum is not negative definite.
GSearchResult search_g(const NetworkConfig& cfg,
                       std::pair<double, double> bracket = kDefaultGBracket,
                       double margin = kFeasibilityMargin);

/// Same minimization without the connectivity precondition. Returns the
/// argmin and lambda_max there.
std::pair<double, double> minimize_max_eig_over_g(const FollowerGraph& graph, double alpha,
                                                  double k, std::pair<double, double> bracket,
                                                  double tol = kGTolerance);

struct ComponentDesign {
  std::vector<int> nodes;  // 0-based
  int s = 0;               // leader-linked followers in the component
  int n = 0;
  Interval k_window;
};

struct GainDesign {
  double k = 0.0;
  double g = 0.0;  // gain for the dynamics (and build_omega)
  double g_simplified = 0.0;  // the Omega_s multiplier found by the search
  Interval k_window;  // narrowest component window
  Certificate certificate;  // build_omega at the true beta
  std::vector<ComponentDesign> per_component;
};

/// Per component of the in-domain graph: require a leader link
/// (UncontrollableComponent) and a nonempty window for alpha/beta
/// (EmptyWindow). k is the midpoint of the narrowest window; g comes from
/// minimizing lambda_max(Omega_s) on the whole network and is rescaled to the
/// dynamics as g = beta * g_s / 2. The result is re-certified with
/// build_omega at the true beta.
GainDesign design(const FollowerGraph& graph, double alpha, double beta,
                  std::pair<double, double> bracket = kDefaultGBracket,
                  double margin = kFeasibilityMargin);

}  // namespace pdesync
