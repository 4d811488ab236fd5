#include "pdesync/certify.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace pdesync {

using std::numbers::pi;

NetworkConfig::NetworkConfig(FollowerGraph graph, double alpha, double beta, Vector k, Vector g,
                             std::optional<SymMatrix> p)
    : graph_(std::move(graph)),
      alpha_(alpha),
      beta_(beta),
      k_(std::move(k)),
      g_(std::move(g)),
      p_(p ? std::move(*p) : SymMatrix::identity(graph_.n())) {
  const auto n = static_cast<std::size_t>(graph_.n());
  if (!(beta_ > 0.0)) throw std::invalid_argument("NetworkConfig: beta must be positive");
  if (!std::isfinite(alpha_)) throw std::invalid_argument("NetworkConfig: alpha must be finite");
  if (k_.size() != n || g_.size() != n)
    throw DimensionMismatch("NetworkConfig: per-agent gain lists must have length N=" +
                            std::to_string(n));
  if (p_.dim() != n) throw DimensionMismatch("NetworkConfig: P must be N x N");
  if (!is_positive_definite(p_)) throw std::invalid_argument("NetworkConfig: P must be positive definite");
}

NetworkConfig NetworkConfig::uniform(FollowerGraph graph, double alpha, double beta, double k,
                                     double g) {
  const auto n = static_cast<std::size_t>(graph.n());
  return NetworkConfig(std::move(graph), alpha, beta, Vector(n, k), Vector(n, g));
}

bool NetworkConfig::has_simplified_form() const {
  if (beta_ != 1.0) return false;
  if (!(p_ == SymMatrix::identity(p_.dim()))) return false;
  const double k0 = common_k();
  for (int i : graph_.leader_set())
    if (k_[i] != k0) return false;
  return std::all_of(g_.begin(), g_.end(), [&](double v) { return v == g_.front(); });
}

double NetworkConfig::common_k() const {
  return graph_.leader_set().empty() ? 0.0 : k_[graph_.leader_set().front()];
}

NetworkConfig NetworkConfig::with_gains(double k, double g) const {
  const auto n = static_cast<std::size_t>(graph_.n());
  return NetworkConfig(graph_, alpha_, beta_, Vector(n, k), Vector(n, g), p_);
}

Certificate make_certificate(SymMatrix omega, double margin) {
  Certificate c;
  c.max_eig = sym_eigenvalues(omega).max();
  c.feasible = c.max_eig < -margin && is_negative_definite(omega, margin);
  c.margin_delta = std::max(0.0, -c.max_eig);
  c.omega = std::move(omega);
  return c;
}

SymMatrix build_omega(const NetworkConfig& cfg) {
  const std::size_t n = cfg.n();
  const Matrix& p = cfg.p().matrix();
  const Matrix l = to_real(laplacian(cfg.graph()));

  // P Kbar: column j scaled by k_j m_j.
  Matrix pk(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      pk(i, j) = cfg.graph().is_leader(static_cast<int>(j)) ? p(i, j) * cfg.k()[j] : 0.0;

  // P G L: P times rows of L scaled by g.
  Matrix gl(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) gl(i, j) = cfg.g()[i] * l(i, j);
  const Matrix pgl = p * gl;

  Matrix d = -cfg.beta() * pk + cfg.alpha() * p + pgl;
  const Matrix dsym = d + d.transpose();

  Matrix omega(2 * n, 2 * n);
  const double b = cfg.beta();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      omega(i, j) = -b * pi * pi / 2.0 * p(i, j);
      omega(i, n + j) = b * pk(i, j);
      omega(n + j, i) = b * pk(i, j);
      omega(n + i, n + j) = dsym(i, j);
    }
  return SymMatrix(omega);
}

SymMatrix build_omega_full(int n_agents, double alpha, double k) {
  if (n_agents < 1) throw std::invalid_argument("build_omega_full: n must be >= 1");
  const auto n = static_cast<std::size_t>(n_agents);
  Matrix omega(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    omega(i, i) = -pi * pi / 2.0;
    omega(i, n + i) = k;
    omega(n + i, i) = k;
    omega(n + i, n + i) = 2.0 * (alpha - k);
  }
  return SymMatrix(omega);
}

SymMatrix build_omega_s(const FollowerGraph& graph, double alpha, double k, double g) {
  const std::size_t n = graph.n();
  const IntMatrix l = laplacian(graph);
  Matrix omega(2 * n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = graph.is_leader(static_cast<int>(i)) ? 1.0 : 0.0;
    omega(i, i) = -pi * pi / 2.0;
    omega(i, n + i) = k * m;
    omega(n + i, i) = k * m;
    for (std::size_t j = 0; j < n; ++j) omega(n + i, n + j) = g * static_cast<double>(l(i, j));
    omega(n + i, n + i) += 2.0 * alpha - 2.0 * k * m;
  }
  return SymMatrix(omega);
}

namespace {

void require_simplified(const NetworkConfig& cfg, const char* who) {
  if (!cfg.has_simplified_form())
    throw InvalidSimplification(std::string(who) +
                                ": needs beta = 1, P = I and common k, g; use build_omega");
}

}  // namespace

SymMatrix build_omega_s(const NetworkConfig& cfg) {
  require_simplified(cfg, "build_omega_s");
  return build_omega_s(cfg.graph(), cfg.alpha(), cfg.common_k(), cfg.common_g());
}

SymMatrix schur_complement_D(const NetworkConfig& cfg) {
  require_simplified(cfg, "schur_complement_D");
  const std::size_t n = cfg.n();
  const double k = cfg.common_k();
  const double g = cfg.common_g();
  const IntMatrix l = laplacian(cfg.graph());
  Matrix d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double m = cfg.graph().is_leader(static_cast<int>(i)) ? 1.0 : 0.0;
    for (std::size_t j = 0; j < n; ++j) d(i, j) = -g * static_cast<double>(l(i, j));
    d(i, i) += 2.0 * k * m - 2.0 * cfg.alpha() - 2.0 * k * k / (pi * pi) * m;
  }
  return SymMatrix(d);
}

double kernel_form(int n, int s, double alpha, double k) {
  return 2.0 * alpha * n - 2.0 * k * s + 2.0 * k * k / (pi * pi) * s;
}

bool finsler_kernel_test(const NetworkConfig& cfg) {
  require_simplified(cfg, "finsler_kernel_test");
  if (!is_connected(cfg.graph()))
    throw GraphNotConnected("finsler_kernel_test: ker U is larger than span{1}");
  return kernel_form(cfg.n(), cfg.graph().leader_count(), cfg.alpha(), cfg.common_k()) < 0.0;
}

WirtingerResult wirtinger_check(std::span<const double> h, double dx) {
  if (h.size() < 8)
    throw GridTooCoarse("wirtinger_check: need at least 8 samples, got " + std::to_string(h.size()));
  if (!(dx > 0.0)) throw std::invalid_argument("wirtinger_check: dx must be positive");
  if (h.front() != 0.0) throw std::invalid_argument("wirtinger_check: samples[0] must be 0");

  const std::size_t n = h.size();
  Vector d(n);
  d[0] = (-3.0 * h[0] + 4.0 * h[1] - h[2]) / (2.0 * dx);
  d[n - 1] = (3.0 * h[n - 1] - 4.0 * h[n - 2] + h[n - 3]) / (2.0 * dx);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (h[i + 1] - h[i - 1]) / (2.0 * dx);

  auto trapz_sq = [dx](std::span<const double> v) {
    double s = 0.5 * (v.front() * v.front() + v.back() * v.back());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) s += v[i] * v[i];
    return s * dx;
  };
  return {trapz_sq(d), pi * pi / 4.0 * trapz_sq(h)};
}

}  // namespace pdesync
