#include "pdesync/pdesim.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "pdesync/kernels.hpp"

namespace pdesync {

using std::numbers::pi;

InitialData section_v_initial_data(int nx, bool leader_seven_pi) {
  const Vector x = uniform_grid(nx);
  InitialData d;
  d.followers.assign(5, Vector(x.size()));
  d.leader.resize(x.size());
  const double leader_freq = leader_seven_pi ? 7.0 * pi : 7.0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double c5 = std::cos(5.0 * pi * x[j]);
    d.followers[0][j] = 0.5 + 2.0 * c5 + std::cos(pi * x[j]);
    d.followers[1][j] = 1.0;
    d.followers[2][j] = 2.0 * c5;
    d.followers[3][j] = 1.5 - 2.0 * c5;
    d.followers[4][j] = 0.5 * std::cos(7.0 * pi * x[j]);
    d.leader[j] = 2.0 + std::cos(pi * x[j]) + 2.0 * std::cos(leader_freq * x[j]);
  }
  return d;
}

void SimConfig::validate(int n_followers) const {
  if (nx < 16) throw std::invalid_argument("SimConfig: nx must be >= 16");
  if (!(dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("SimConfig: t_end must be positive");
  if (output_stride < 1) throw std::invalid_argument("SimConfig: output_stride must be >= 1");
  if (initial.followers.empty() && initial.leader.empty()) return;
  if (static_cast<int>(initial.followers.size()) != n_followers)
    throw DimensionMismatch("SimConfig: expected " + std::to_string(n_followers) +
                            " follower initial fields");
  const auto n = static_cast<std::size_t>(nx);
  for (const Vector& f : initial.followers)
    if (f.size() != n) throw DimensionMismatch("SimConfig: initial field length differs from nx");
  if (initial.leader.size() != n)
    throw DimensionMismatch("SimConfig: leader initial field length differs from nx");
}

Vector uniform_grid(int nx) {
  Vector x(static_cast<std::size_t>(nx));
  for (int j = 0; j < nx; ++j) x[j] = static_cast<double>(j) / (nx - 1);
  return x;
}

Vector trapezoid_weights(int nx) {
  const double h = 1.0 / (nx - 1);
  Vector w(static_cast<std::size_t>(nx), h);
  w.front() = w.back() = h / 2.0;
  return w;
}

Matrix neumann_block(double alpha, double beta, int nx) {
  const double h = 1.0 / (nx - 1);
  const double c = beta / (h * h);
  Matrix a(nx, nx);
  for (int j = 0; j < nx; ++j) {
    a(j, j) = -2.0 * c + alpha;
    if (j == 0)
      a(0, 1) = 2.0 * c;
    else if (j == nx - 1)
      a(j, j - 1) = 2.0 * c;
    else {
      a(j, j - 1) = c;
      a(j, j + 1) = c;
    }
  }
  return a;
}

namespace {

DiscreteOperator assemble(const NetworkConfig& net, const SimConfig& sim, bool with_leader) {
  if (sim.nx < 16) throw std::invalid_argument("assemble_operator: nx must be >= 16");
  const int n_agents = net.n();
  const auto nx = static_cast<std::size_t>(sim.nx);

  DiscreteOperator op;
  op.nx = sim.nx;
  op.blocks = n_agents + (with_leader ? 1 : 0);
  op.has_leader = with_leader;
  op.h = 1.0 / (sim.nx - 1);
  op.a = Matrix(op.blocks * nx, op.blocks * nx);

  const Matrix block = neumann_block(net.alpha(), net.beta(), sim.nx);
  for (int b = 0; b < op.blocks; ++b) {
    const std::size_t o = b * nx;
    for (std::size_t r = 0; r < nx; ++r)
      for (std::size_t c = 0; c < nx; ++c) op.a(o + r, o + c) = block(r, c);
  }

  // Ghost elimination at x = 0 turns the integral feedback into a dense row.
  const Vector w = trapezoid_weights(sim.nx);
  const std::size_t leader_offset = n_agents * nx;
  for (int i : net.graph().leader_set()) {
    const double c = -2.0 * net.beta() / op.h * net.k()[i];
    const std::size_t row = i * nx;
    for (std::size_t j = 0; j < nx; ++j) {
      op.a(row, i * nx + j) += c * w[j];
      if (with_leader) op.a(row, leader_offset + j) -= c * w[j];
    }
  }

  const IntMatrix l = laplacian(net.graph());
  for (int i = 0; i < n_agents; ++i)
    for (int j = 0; j < n_agents; ++j) {
      if (l(i, j) == 0) continue;
      const double v = net.g()[i] * static_cast<double>(l(i, j));
      for (std::size_t x = 0; x < nx; ++x) op.a(i * nx + x, j * nx + x) += v;
    }
  return op;
}

double source_gain(const SimConfig& sim, double t) {
  if (sim.source == SourceKind::off) return 0.0;
  const double at = sim.scheme == TimeScheme::crank_nicolson ? t + 0.5 * sim.dt : t + sim.dt;
  return std::sin(pi * at);
}

}  // namespace

DiscreteOperator assemble_operator(const NetworkConfig& net, const SimConfig& sim) {
  return assemble(net, sim, true);
}

DiscreteOperator assemble_error_operator(const NetworkConfig& net, const SimConfig& sim) {
  return assemble(net, sim, false);
}

OneStep one_step_propagator(const DiscreteOperator& op, const SimConfig& sim) {
  const std::size_t n = op.a.rows();
  const double theta = sim.scheme == TimeScheme::crank_nicolson ? 0.5 : 1.0;

  Matrix implicit = Matrix::identity(n) - (theta * sim.dt) * op.a;
  Matrix explicit_part = Matrix::identity(n) + ((1.0 - theta) * sim.dt) * op.a;
  const LuFactorization lu(std::move(implicit));

  OneStep out;
  out.step = lu.solve(explicit_part);
  out.source.assign(n, 0.0);
  if (sim.source == SourceKind::paper && op.has_leader) {
    const Vector x = uniform_grid(op.nx);
    for (int b = 0; b < op.blocks; ++b)
      for (int j = 0; j < op.nx; ++j)
        out.source[b * op.nx + j] = sim.dt * (1.0 + std::cos(2.0 * pi * x[j]));
    lu.solve_in_place(out.source);
  }
  return out;
}

Trajectory simulate(const NetworkConfig& net, const SimConfig& sim) {
  sim.validate(net.n());
  const int n_agents = net.n();
  const auto nx = static_cast<std::size_t>(sim.nx);

  InitialData init = sim.initial;
  if (init.followers.empty() && init.leader.empty()) {
    if (n_agents != 5)
      throw DimensionMismatch("simulate: default initial data covers exactly 5 followers");
    init = section_v_initial_data(sim.nx);
  }

  const DiscreteOperator op = assemble_operator(net, sim);
  const OneStep prop = one_step_propagator(op, sim);

  Vector y(op.a.rows());
  for (int i = 0; i < n_agents; ++i)
    std::copy(init.followers[i].begin(), init.followers[i].end(), y.begin() + i * nx);
  std::copy(init.leader.begin(), init.leader.end(), y.begin() + n_agents * nx);

  Trajectory traj;
  traj.grid = uniform_grid(sim.nx);
  traj.z.resize(n_agents);
  auto record = [&](double t) {
    traj.times.push_back(t);
    for (int i = 0; i < n_agents; ++i)
      traj.z[i].emplace_back(y.begin() + i * nx, y.begin() + (i + 1) * nx);
    traj.z_leader.emplace_back(y.begin() + n_agents * nx, y.end());
  };
  record(0.0);

  const auto steps = static_cast<std::size_t>(std::llround(sim.t_end / sim.dt));
  Vector next(y.size());
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = static_cast<double>(s) * sim.dt;
    kernels::matvec_axpy(prop.step, y, source_gain(sim, t), prop.source, next);
    if (const long bad = kernels::find_blowup(next, kDivergenceBound); bad >= 0)
      throw Divergence(s + 1, static_cast<int>(bad / static_cast<long>(nx)) + 1, next[bad]);
    y.swap(next);
    if ((s + 1) % static_cast<std::size_t>(sim.output_stride) == 0 || s + 1 == steps)
      record(static_cast<double>(s + 1) * sim.dt);
  }
  return traj;
}

double l2_norm(std::span<const double> field, double dx) {
  if (field.empty()) return 0.0;
  if (field.size() == 1) return 0.0;
  double s = 0.5 * (field.front() * field.front() + field.back() * field.back());
  for (std::size_t i = 1; i + 1 < field.size(); ++i) s += field[i] * field[i];
  return std::sqrt(s * dx);
}

ErrorSeries sync_errors(const Trajectory& traj) {
  const int n_agents = traj.agents();
  const std::size_t nt = traj.times.size();
  const std::size_t nx = traj.grid.size();
  const double dx = traj.grid[1] - traj.grid[0];

  ErrorSeries es;
  es.times = traj.times;
  es.per_agent_l2.assign(n_agents, std::vector<double>(nt));
  es.total_l2.resize(nt);
  es.avg_error_field.assign(nt, Vector(nx, 0.0));
  es.pairwise_max.assign(nt, 0.0);

  Vector diff(nx);
  for (std::size_t t = 0; t < nt; ++t) {
    double sq = 0.0;
    for (int i = 0; i < n_agents; ++i) {
      for (std::size_t x = 0; x < nx; ++x) {
        diff[x] = traj.z[i][t][x] - traj.z_leader[t][x];
        es.avg_error_field[t][x] += diff[x];
      }
      const double e = l2_norm(diff, dx);
      es.per_agent_l2[i][t] = e;
      sq += e * e;
    }
    es.total_l2[t] = std::sqrt(sq);
    for (int i = 0; i < n_agents; ++i)
      for (int j = i + 1; j < n_agents; ++j) {
        for (std::size_t x = 0; x < nx; ++x) diff[x] = traj.z[i][t][x] - traj.z[j][t][x];
        es.pairwise_max[t] = std::max(es.pairwise_max[t], l2_norm(diff, dx));
      }
  }
  return es;
}

double fit_decay_rate(const ErrorSeries& series, std::pair<double, double> window) {
  std::vector<double> ts, ls;
  for (std::size_t i = 0; i < series.times.size(); ++i) {
    const double t = series.times[i];
    if (t < window.first || t > window.second) continue;
    if (!(series.total_l2[i] > 0.0))
      throw NonPositiveError("fit_decay_rate: total error is not positive at t=" + std::to_string(t));
    ts.push_back(t);
    ls.push_back(std::log(series.total_l2[i]));
  }
  if (ts.size() < 2) throw std::invalid_argument("fit_decay_rate: fewer than 2 samples in window");
  double tm = 0.0, lm = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    tm += ts[i];
    lm += ls[i];
  }
  tm /= static_cast<double>(ts.size());
  lm /= static_cast<double>(ts.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    num += (ts[i] - tm) * (ls[i] - lm);
    den += (ts[i] - tm) * (ts[i] - tm);
  }
  return num / den;
}

double spectral_abscissa(const NetworkConfig& net, const SimConfig& sim, double horizon) {
  SimConfig quiet = sim;
  quiet.source = SourceKind::off;
  const DiscreteOperator op = assemble_error_operator(net, quiet);
  Matrix prop = one_step_propagator(op, quiet).step;

  double span = sim.dt;
  while (span < horizon) {
    prop = kernels::matmul(prop, prop);
    span *= 2.0;
  }
  const PowerResult pr = power_dominant(prop, 5000, 1e-11);
  if (!pr.converged)
    throw NoConvergence("spectral_abscissa: power iteration did not settle (rho ~ " +
                        std::to_string(pr.rho) + ")");
  if (pr.rho == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(pr.rho) / span;
}

std::vector<double> analytic_open_loop_spectrum(double alpha, double beta, int n_modes) {
  if (n_modes < 1) throw std::invalid_argument("analytic_open_loop_spectrum: n_modes must be >= 1");
  std::vector<double> out;
  for (int j = 0; j < n_modes; ++j) out.push_back(alpha - beta * j * j * pi * pi);
  return out;
}

}  // namespace pdesync
