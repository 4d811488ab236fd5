#include <doctest.h>

#include <cmath>
#include <numbers>

#include "pdesync/gains.hpp"
#include "pdesync/pdesim.hpp"
#include "support.hpp"

using namespace pdesync;
using std::numbers::pi;

namespace {

double trapezoid_mean(std::span<const double> f) {
  const Vector w = trapezoid_weights(static_cast<int>(f.size()));
  double s = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) s += w[i] * f[i];
  return s;
}

Vector sample(int nx, auto fn) {
  const Vector x = uniform_grid(nx);
  Vector v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = fn(x[i]);
  return v;
}

SimConfig quiet_sim(int nx, double t_end) {
  SimConfig s;
  s.nx = nx;
  s.t_end = t_end;
  s.source = SourceKind::off;
  return s;
}

NetworkConfig section_v_net(double k = 3.0, double g = -2.0) {
  return NetworkConfig::uniform(example_network(), 0.0, 1.0, k, g);
}

// Random smooth field: a few cosine modes plus an offset.
Vector random_field(testing::Rng& rng, int nx) {
  const double c0 = testing::uniform_real(rng, -2, 2);
  const double c1 = testing::uniform_real(rng, -1, 1);
  const double c2 = testing::uniform_real(rng, -1, 1);
  return sample(nx, [&](double x) { return c0 + c1 * std::cos(pi * x) + c2 * std::cos(3 * pi * x); });
}

}  // namespace

TEST_CASE("grid and quadrature helpers") {
  const Vector x = uniform_grid(5);
  CHECK(x == Vector{0, 0.25, 0.5, 0.75, 1});
  const Vector w = trapezoid_weights(5);
  CHECK(w == Vector{0.125, 0.25, 0.25, 0.25, 0.125});
}

TEST_CASE("pure Neumann block annihilates constants") {
  for (int nx : {16, 101, 257}) {
    const Matrix a = neumann_block(0.0, 1.0, nx);
    const Vector ones(nx, 1.0);
    for (double v : a * ones) CHECK(v == 0.0);
    // Trapezoid weights are a left null vector.
    const Vector w = trapezoid_weights(nx);
    for (int c = 0; c < nx; ++c) {
      double s = 0.0;
      for (int r = 0; r < nx; ++r) s += w[r] * a(r, c);
      CHECK(std::abs(s) < 1e-9);
    }
  }
}

TEST_CASE("assemble_operator structure") {
  const SimConfig sim = quiet_sim(21, 1.0);
  const DiscreteOperator decoupled = assemble_operator(section_v_net(0.0, 0.0), sim);
  CHECK(decoupled.blocks == 6);
  CHECK(decoupled.has_leader);
  const Matrix block = neumann_block(0.0, 1.0, 21);
  for (std::size_t r = 0; r < decoupled.a.rows(); ++r)
    for (std::size_t c = 0; c < decoupled.a.cols(); ++c) {
      const bool same = r / 21 == c / 21;
      REQUIRE(decoupled.a(r, c) == (same ? block(r % 21, c % 21) : 0.0));
    }

  // Row sums of the closed loop vanish at alpha = 0: z_i = z_l = const is an equilibrium.
  const DiscreteOperator v = assemble_operator(section_v_net(), sim);
  for (std::size_t r = 0; r < v.a.rows(); ++r) {
    double s = 0.0;
    for (double e : v.a.row(r)) s += e;
    REQUIRE(std::abs(s) < 1e-9);
  }

  // Error operator equals the follower block of the full operator.
  const DiscreteOperator e = assemble_error_operator(section_v_net(), sim);
  CHECK(e.blocks == 5);
  CHECK_FALSE(e.has_leader);
  for (std::size_t r = 0; r < e.a.rows(); ++r)
    for (std::size_t c = 0; c < e.a.cols(); ++c) REQUIRE(e.a(r, c) == v.a(r, c));
}

TEST_CASE("simulate: the leader conserves its trapezoid mean") {
  const NetworkConfig net = NetworkConfig::uniform(build_graph(1, {}, {1}), 0.0, 1.0, 0.0, 0.0);
  SimConfig sim = quiet_sim(101, 2.0);
  const Vector leader = sample(101, [](double x) { return 2 + std::cos(pi * x) + 2 * std::cos(7 * x); });
  sim.initial = {{Vector(101, 0.0)}, leader};
  const Trajectory tr = simulate(net, sim);
  const double m0 = trapezoid_mean(tr.z_leader.front());
  for (const Vector& f : tr.z_leader) REQUIRE(std::abs(trapezoid_mean(f) - m0) < 1e-8);
}

TEST_CASE("simulate: discrete conservation of each error mean with couplings off") {
  SimConfig sim = quiet_sim(51, 1.0);
  const Trajectory tr = simulate(section_v_net(0.0, 0.0), sim);
  for (int i = 0; i < 5; ++i) {
    Vector e0(51);
    for (int x = 0; x < 51; ++x) e0[x] = tr.z[i][0][x] - tr.z_leader[0][x];
    const double m0 = trapezoid_mean(e0);
    for (std::size_t t = 0; t < tr.times.size(); ++t) {
      Vector e(51);
      for (int x = 0; x < 51; ++x) e[x] = tr.z[i][t][x] - tr.z_leader[t][x];
      REQUIRE(std::abs(trapezoid_mean(e) - m0) < 1e-8);
    }
  }
}

TEST_CASE("simulate: unstable reaction grows the mean error like exp(alpha t)") {
  const NetworkConfig net = NetworkConfig::uniform(build_graph(2, {{1, 2}}, {1}), 0.5, 1.0, 0.0, 0.0);
  SimConfig sim = quiet_sim(51, 3.0);
  sim.initial = {{sample(51, [](double x) { return 1.0 + std::cos(pi * x); }), Vector(51, -0.5)},
                 sample(51, [](double x) { return 0.2 * std::cos(2 * pi * x); })};
  const ErrorSeries es = sync_errors(simulate(net, sim));
  auto at = [&](double t) {
    for (std::size_t i = 0; i < es.times.size(); ++i)
      if (std::abs(es.times[i] - t) < 1e-9) return es.total_l2[i];
    FAIL("missing sample");
    return 0.0;
  };
  CHECK(at(3.0) / at(1.0) == doctest::Approx(std::exp(1.0)).epsilon(0.05));
  CHECK(at(2.0) / at(1.0) == doctest::Approx(std::exp(0.5)).epsilon(0.05));
}

TEST_CASE("simulate: sampling, source and Divergence") {
  SimConfig sim = quiet_sim(31, 0.105);
  sim.output_stride = 10;
  const Trajectory tr = simulate(section_v_net(), sim);
  REQUIRE(tr.times.size() == 12);
  CHECK(tr.times.back() == doctest::Approx(0.105));
  CHECK(tr.times[1] == doctest::Approx(0.01));

  SimConfig bad = quiet_sim(31, 2.0);
  const NetworkConfig blow = NetworkConfig::uniform(example_network(), 30.0, 1.0, 0.0, 0.0);
  try {
    simulate(blow, bad);
    FAIL("expected Divergence");
  } catch (const Divergence& d) {
    CHECK(d.step() > 0);
    CHECK(d.agent() >= 1);
    CHECK(d.agent() <= 6);
  }

  SimConfig wrong = quiet_sim(31, 1.0);
  CHECK_THROWS_AS(simulate(NetworkConfig::uniform(build_graph(2, {{1, 2}}, {1}), 0.0, 1.0, 1.0, 0.0), wrong),
                  DimensionMismatch);
  wrong.nx = 8;
  CHECK_THROWS_AS(simulate(section_v_net(), wrong), std::invalid_argument);

  // With the source on and identical states, the error stays exactly zero.
  SimConfig same = quiet_sim(31, 0.5);
  same.source = SourceKind::paper;
  const Vector f = sample(31, [](double x) { return std::cos(pi * x); });
  same.initial = {{f, f, f, f, f}, f};
  const ErrorSeries es = sync_errors(simulate(section_v_net(), same));
  for (double v : es.total_l2) CHECK(v < 1e-12);
  for (double v : es.pairwise_max) CHECK(v < 1e-12);
}

TEST_CASE("l2_norm") {
  CHECK(l2_norm(Vector(11, 1.0), 0.1) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(l2_norm(sample(201, [](double x) { return std::sin(pi * x); }), 1.0 / 200) ==
        doctest::Approx(std::sqrt(0.5)).epsilon(1e-4));
  CHECK(l2_norm(Vector(11, 0.0), 0.1) == 0.0);
}

TEST_CASE("sync_errors on the example") {
  SimConfig sim = quiet_sim(41, 0.5);
  sim.source = SourceKind::paper;
  const ErrorSeries es = sync_errors(simulate(section_v_net(), sim));
  for (std::size_t t = 0; t < es.times.size(); ++t) {
    double sq = 0.0;
    for (const auto& a : es.per_agent_l2) sq += a[t] * a[t];
    REQUIRE(std::abs(es.total_l2[t] * es.total_l2[t] - sq) <= 1e-12 * sq);
  }
  CHECK(es.avg_error_field.front().size() == 41);
}

TEST_CASE("fit_decay_rate") {
  ErrorSeries s;
  for (int i = 0; i <= 100; ++i) {
    s.times.push_back(i * 0.025);
    s.total_l2.push_back(std::exp(-2.0 * i * 0.025));
  }
  CHECK(fit_decay_rate(s, {0.5, 2.0}) == doctest::Approx(-2.0).epsilon(1e-6));

  ErrorSeries flat = s;
  std::fill(flat.total_l2.begin(), flat.total_l2.end(), 3.0);
  CHECK(std::abs(fit_decay_rate(flat, {0.0, 2.5})) < 1e-12);

  flat.total_l2[40] = 0.0;
  CHECK_THROWS_AS(fit_decay_rate(flat, {0.5, 2.0}), NonPositiveError);
  CHECK_NOTHROW(fit_decay_rate(flat, {1.1, 2.0}));
}

TEST_CASE("spectral_abscissa of the open loop matches the constant mode") {
  SimConfig sim = quiet_sim(41, 1.0);
  for (double alpha : {-1.0, 0.0, 0.5}) {
    const NetworkConfig net = NetworkConfig::uniform(example_network(), alpha, 1.0, 0.0, 0.0);
    const double got = spectral_abscissa(net, sim);
    const auto modes = analytic_open_loop_spectrum(alpha, 1.0, 5);
    const double top = *std::max_element(modes.begin(), modes.end());
    if (alpha == 0.0)
      CHECK(std::abs(got) < 1e-4);
    else
      CHECK(got == doctest::Approx(top).epsilon(0.02));
  }
  CHECK(spectral_abscissa(section_v_net(), sim) < 0.0);
}

TEST_CASE("analytic_open_loop_spectrum") {
  const auto s = analytic_open_loop_spectrum(0.0, 1.0, 4);
  REQUIRE(s.size() == 4);
  CHECK(s[0] == 0.0);
  CHECK(s[1] == doctest::Approx(-pi * pi));
  CHECK(s[2] == doctest::Approx(-4 * pi * pi));
  CHECK(analytic_open_loop_spectrum(1.0, 1.0, 1)[0] == 1.0);
  CHECK(analytic_open_loop_spectrum(0.0, 2.0, 2)[1] == doctest::Approx(-2 * pi * pi));
  CHECK_THROWS_AS(analytic_open_loop_spectrum(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("Backward Euler runs and agrees with Crank-Nicolson to first order") {
  SimConfig cn = quiet_sim(41, 0.5);
  SimConfig be = cn;
  be.scheme = TimeScheme::backward_euler;
  const ErrorSeries a = sync_errors(simulate(section_v_net(), cn));
  const ErrorSeries b = sync_errors(simulate(section_v_net(), be));
  CHECK(b.total_l2.back() == doctest::Approx(a.total_l2.back()).epsilon(0.01));
}

TEST_CASE("grid convergence on the example scenario is second order") {
  std::vector<double> finals;
  for (int nx : {51, 101, 201}) {
    SimConfig sim;
    sim.nx = nx;
    sim.output_stride = 100;
    finals.push_back(sync_errors(simulate(section_v_net(), sim)).total_l2.back());
  }
  const double order = std::log2(std::abs(finals[0] - finals[1]) / std::abs(finals[1] - finals[2]));
  MESSAGE("observed order " << order);
  CHECK(order >= 1.8);
}

TEST_CASE("property: feasible certificates imply decaying simulated errors") {
  testing::Rng rng(97);
  int feasible = 0;
  while (feasible < 20) {
    const int n = testing::uniform_int(rng, 1, 5);
    const FollowerGraph g = testing::random_connected_graph(rng, n);
    const NetworkConfig net = NetworkConfig::uniform(g, testing::uniform_real(rng, -1, 1), 1.0,
                                                     testing::uniform_real(rng, 0, 10),
                                                     testing::uniform_real(rng, -5, 0));
    const Certificate c = make_certificate(build_omega(net));
    if (!c.feasible || c.margin_delta <= 1e-3) continue;
    ++feasible;
    SimConfig sim = quiet_sim(41, 2.0);
    sim.source = SourceKind::paper;
    for (int i = 0; i < n; ++i) sim.initial.followers.push_back(random_field(rng, 41));
    sim.initial.leader = random_field(rng, 41);
    REQUIRE(fit_decay_rate(sync_errors(simulate(net, sim)), {0.5, 2.0}) < 0.0);
  }
}

TEST_CASE("property: without a kernel certificate and alpha >= 0 the mean error persists") {
  testing::Rng rng(101);
  int checked = 0;
  while (checked < 20) {
    const int n = testing::uniform_int(rng, 1, 5);
    const FollowerGraph g = testing::random_connected_graph(rng, n);
    const double alpha = testing::uniform_real(rng, 0, 1);
    const double k = testing::uniform_int(rng, 0, 1) == 0 ? 0.0 : testing::uniform_real(rng, 0.0, 0.2);
    if (kernel_form(n, g.leader_count(), alpha, k) < 0.0) continue;
    ++checked;
    const NetworkConfig net = NetworkConfig::uniform(g, alpha, 1.0, k, testing::uniform_real(rng, -5, 0));
    SimConfig sim = quiet_sim(41, 2.5);
    for (int i = 0; i < n; ++i) {
      Vector f = random_field(rng, 41);
      for (double& v : f) v += 1.0;  // nonzero mean offset to the leader
      sim.initial.followers.push_back(f);
    }
    sim.initial.leader = Vector(41, -1.0);
    const ErrorSeries es = sync_errors(simulate(net, sim));
    REQUIRE(es.total_l2.back() > 0.1 * es.total_l2.front());
  }
}
