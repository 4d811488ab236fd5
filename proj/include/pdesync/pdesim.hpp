#pragma once

// Method-of-lines simulator for the closed-loop network.
//
// Each agent (followers 1..N, then the leader) lives on the uniform grid
// x_j = j h, h = 1/(nx-1). Interior rows use second-order central
// differences; both boundary rows eliminate a ghost node through a central
// difference of the Neumann data:
//   x = 1:  z_{nx} = z_{nx-2}                             (zero flux)
//   x = 0:  z_{-1} = z_1 - 2h q_i,  q_i = k_i m_i w^T (z_i - z_l)
// where w are trapezoid weights, so the closed loop is one linear operator
// A_h. With these weights w^T A_h z_i reproduces d/dt of the trapezoid mean
// exactly, and the pure Neumann block conserves it.

#include <string>
#include <utility>
#include <vector>

#include "pdesync/certify.hpp"
#include "pdesync/matrix.hpp"

namespace pdesync {

enum class SourceKind { off, paper };      // paper: f = (1 + cos 2 pi x) sin(pi t)
enum class TimeScheme { crank_nicolson, backward_euler };

struct InitialData {
  std::vector<Vector> followers;  // one field of nx samples per follower
  Vector leader;
};

/// Initial fields of the five-agent example, sampled on nx points:
///   z1 = 0.5 + 2 cos(5 pi x) + cos(pi x), z2 = 1, z3 = 2 cos(5 pi x),
///   z4 = 1.5 - 2 cos(5 pi x),  z5 = 0.5 cos(7 pi x),
///   zl = 2 + cos(pi x) + 2 cos(7 x)   (7 pi x when leader_seven_pi).
InitialData section_v_initial_data(int nx, bool leader_seven_pi = false);

struct SimConfig {
  int nx = 101;
  double dt = 1e-3;
  double t_end = 2.5;
  SourceKind source = SourceKind::paper;
  TimeScheme scheme = TimeScheme::crank_nicolson;
  int output_stride = 10;
  InitialData initial;  // empty -> section_v_initial_data(nx)

  void validate(int n_followers) const;
};

Vector uniform_grid(int nx);
Vector trapezoid_weights(int nx);

struct DiscreteOperator {
  Matrix a;
  int nx = 0;
  int blocks = 0;           // agents stacked in `a`
  bool has_leader = false;  // last block is the leader
  double h = 0.0;
};

/// beta * (pure Neumann Laplacian) + alpha on one agent.
Matrix neumann_block(double alpha, double beta, int nx);

/// Full closed loop on (z_1..z_N, z_l), size (N+1) nx.
DiscreteOperator assemble_operator(const NetworkConfig& net, const SimConfig& sim);

/// Error subsystem on (e_1..e_N), size N nx. The leader drops out exactly.
DiscreteOperator assemble_error_operator(const NetworkConfig& net, const SimConfig& sim);

/// Propagator of one time step, y_{n+1} = step * y_n + source_gain(t_n) * source.
struct OneStep {
  Matrix step;
  Vector source;  // zero when the source is off
};

OneStep one_step_propagator(const DiscreteOperator& op, const SimConfig& sim);

struct Trajectory {
  std::vector<double> times;
  Vector grid;
  std::vector<std::vector<Vector>> z;  // [agent][time][x]
  std::vector<Vector> z_leader;        // [time][x]

  int agents() const { return static_cast<int>(z.size()); }
};

inline constexpr double kDivergenceBound = 1e12;

/// Samples every output_stride steps plus the final step. Throws Divergence.
Trajectory simulate(const NetworkConfig& net, const SimConfig& sim);

/// Trapezoid approximation of (int field^2)^{1/2}.
double l2_norm(std::span<const double> field, double dx);

struct ErrorSeries {
  std::vector<double> times;
  std::vector<std::vector<double>> per_agent_l2;  // [agent][time]
  std::vector<double> total_l2;
  std::vector<Vector> avg_error_field;  // [time][x], sum_i e_i
  std::vector<double> pairwise_max;
};

ErrorSeries sync_errors(const Trajectory& traj);

/// Least-squares slope of log(total_l2) on samples with t in [t0, t1].
/// Throws NonPositiveError if any sampled total is <= 0.
double fit_decay_rate(const ErrorSeries& series, std::pair<double, double> window);

/// log(rho)/dt for the one-step error propagator. The propagator is squared
/// until it spans at least `horizon` time units before power iteration, so
/// the dominant mode separates quickly. Throws NoConvergence.
double spectral_abscissa(const NetworkConfig& net, const SimConfig& sim, double horizon = 0.5);

/// {alpha - beta j^2 pi^2 : j = 0..n_modes-1}.
std::vector<double> analytic_open_loop_spectrum(double alpha, double beta, int n_modes);

}  // namespace pdesync
