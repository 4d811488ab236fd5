#pragma once

// Matrix-inequality certificates for leader synchronization of the coupled
// heat equations
//
//   z_i' = beta z_i'' + alpha z_i + g_i sum_j l_ij z_j + f,
//   z_i'(1) = 0,   z_i'(0) = k_i m_i int_0^1 (z_i - z_l) dx,
//
// with the leader z_l obeying the same PDE under pure Neumann conditions.
// Negative definiteness of Omega (general P, K, G) or of its simplified form
// Omega_s (beta = 1, P = I, common k and g) certifies exponential decay of the
// errors e_i = z_i - z_l in L2.

#include <optional>
#include <span>

#include "pdesync/graph.hpp"
#include "pdesync/matrix.hpp"

namespace pdesync {

inline constexpr double kFeasibilityMargin = 1e-9;

class NetworkConfig {
 public:
  /// Per-agent gains; `k` entries of followers outside the leader set are
  /// carried but never used (K_bar = K M). `p` defaults to the identity.
  NetworkConfig(FollowerGraph graph, double alpha, double beta, Vector k, Vector g,
                std::optional<SymMatrix> p = std::nullopt);

  /// Common gains k and g for every agent.
  static NetworkConfig uniform(FollowerGraph graph, double alpha, double beta, double k, double g);

  const FollowerGraph& graph() const noexcept { return graph_; }
  int n() const noexcept { return graph_.n(); }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  const Vector& k() const noexcept { return k_; }
  const Vector& g() const noexcept { return g_; }
  const SymMatrix& p() const noexcept { return p_; }

  /// beta == 1, P == I, one k across the leader set and one g for everyone.
  bool has_simplified_form() const;
  /// Common boundary gain (first leader's k; 0 without leaders).
  double common_k() const;
  double common_g() const { return g_.front(); }

  NetworkConfig with_gains(double k, double g) const;

 private:
  FollowerGraph graph_;
  double alpha_;
  double beta_;
  Vector k_;
  Vector g_;
  SymMatrix p_;
};

struct Certificate {
  SymMatrix omega;
  double max_eig = 0.0;
  bool feasible = false;
  double margin_delta = 0.0;  // max(0, -max_eig)
};

/// Eigenvalue oracle plus Cholesky check; feasible when both say
/// max_eig < -margin.
Certificate make_certificate(SymMatrix omega, double margin = kFeasibilityMargin);

/// 2N x 2N Omega = [[-(beta pi^2/2) P, beta P Kbar], [beta (P Kbar)^T, D + D^T]]
/// with D = -beta P Kbar + alpha P + P G L.
SymMatrix build_omega(const NetworkConfig& cfg);

/// Omega_N1 = [[-(pi^2/2) I, k I], [k I, 2(alpha - k) I]].
SymMatrix build_omega_full(int n, double alpha, double k);

/// Omega_s = [[-(pi^2/2) I, k M], [k M, 2 alpha I - 2 k M + g L]].
/// Throws InvalidSimplification unless cfg.has_simplified_form().
///
/// Note the in-domain block carries g L, whereas build_omega yields 2 g L
/// (D + D^T doubles P G L). Hence build_omega(cfg with g) equals
/// build_omega_s(cfg with 2g).
SymMatrix build_omega_s(const NetworkConfig& cfg);
SymMatrix build_omega_s(const FollowerGraph& graph, double alpha, double k, double g);

/// Schur complement of the upper-left block of -Omega_s:
/// D = 2k M - 2 alpha I - g L - (2k^2/pi^2) M.
SymMatrix schur_complement_D(const NetworkConfig& cfg);

/// 1^T Q 1 with Q = 2 alpha I - 2k M + (2k^2/pi^2) M, i.e.
/// 2 alpha N - 2 k s + (2 k^2 / pi^2) s.
double kernel_form(int n, int s, double alpha, double k);

/// Whether some g makes Omega_s negative definite: Q restricted to ker U must
/// be negative, and ker U = span{1} for a connected in-domain graph.
/// Throws GraphNotConnected otherwise.
bool finsler_kernel_test(const NetworkConfig& cfg);

struct WirtingerResult {
  double lhs = 0.0;  // int (h')^2
  double rhs = 0.0;  // (pi^2/4) int h^2
};

/// Discrete check of int_0^1 (h')^2 >= (pi^2/4) int_0^1 h^2 for h(0) = 0.
/// Second-order differences (one-sided at the ends), trapezoid quadrature.
WirtingerResult wirtinger_check(std::span<const double> samples, double dx);

}  // namespace pdesync
