#include <doctest.h>

#include "pdesync/graph.hpp"
#include "support.hpp"

using namespace pdesync;

TEST_CASE("build_graph accepts the example network and the single agent") {
  const FollowerGraph g = example_network();
  CHECK(g.n() == 5);
  CHECK(g.edges().size() == 4);
  CHECK(g.leader_set() == std::vector<int>{0, 1, 2});

  const FollowerGraph one = build_graph(1, {}, {1});
  CHECK(one.n() == 1);
  CHECK(one.edges().empty());
  CHECK(one.is_leader(0));
}

TEST_CASE("build_graph validation") {
  CHECK_THROWS_AS(build_graph(2, {{1, 2}, {1, 2}}, {}), DuplicateEdge);
  CHECK_THROWS_AS(build_graph(2, {{1, 2}, {2, 1}}, {}), DuplicateEdge);
  CHECK_THROWS_AS(build_graph(3, {{2, 2}}, {}), SelfLoop);
  CHECK_THROWS_AS(build_graph(3, {{1, 4}}, {}), IndexOutOfRange);
  CHECK_THROWS_AS(build_graph(3, {{0, 1}}, {}), IndexOutOfRange);
  CHECK_THROWS_AS(build_graph(3, {}, {4}), IndexOutOfRange);
  CHECK_THROWS_AS(build_graph(0, {}, {}), IndexOutOfRange);
}

TEST_CASE("laplacian of the example network") {
  const IntMatrix l = laplacian(example_network());
  const std::vector<long> degrees{1, 1, 2, 3, 1};
  for (int i = 0; i < 5; ++i) CHECK(l(i, i) == degrees[i]);
  const std::set<std::pair<int, int>> edges{{0, 2}, {1, 3}, {2, 3}, {3, 4}};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      if (i == j) continue;
      const bool adjacent = edges.count({std::min(i, j), std::max(i, j)}) > 0;
      CHECK(l(i, j) == (adjacent ? -1 : 0));
    }
}

TEST_CASE("laplacian small cases") {
  const IntMatrix path = laplacian(build_graph(2, {{1, 2}}, {}));
  CHECK(path(0, 0) == 1);
  CHECK(path(0, 1) == -1);
  CHECK(path(1, 0) == -1);
  CHECK(path(1, 1) == 1);

  const IntMatrix empty = laplacian(build_graph(4, {}, {1}));
  for (long v : empty.data()) CHECK(v == 0);
}

TEST_CASE("incidence orientation and shape") {
  const IntMatrix u = incidence(build_graph(2, {{2, 1}}, {}));
  REQUIRE(u.rows() == 1);
  CHECK(u(0, 0) == 1);
  CHECK(u(0, 1) == -1);

  const IntMatrix fig = incidence(example_network());
  CHECK(fig.rows() == 4);
  CHECK(fig.cols() == 5);
  CHECK(fig.transpose() * fig == laplacian(example_network()));

  const IntMatrix none = incidence(build_graph(3, {}, {}));
  CHECK(none.rows() == 0);
  CHECK(none.cols() == 3);
}

TEST_CASE("connected components and leader connectivity") {
  const auto fig = connected_components(example_network());
  REQUIRE(fig.size() == 1);
  CHECK(fig[0] == std::vector<int>{0, 1, 2, 3, 4});

  CHECK(connected_components(build_graph(3, {}, {})).size() == 3);

  const FollowerGraph pair = build_graph(3, {{1, 2}}, {1});
  const auto comps = connected_components(pair);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0] == std::vector<int>{0, 1});
  CHECK(comps[1] == std::vector<int>{2});
  CHECK_FALSE(is_leader_connected(pair));

  CHECK(is_leader_connected(example_network()));
  CHECK(is_leader_connected(build_graph(4, {}, {1, 2, 3, 4})));
}

TEST_CASE("leader mask") {
  const IntMatrix m = leader_mask(example_network());
  for (int i = 0; i < 5; ++i) CHECK(m(i, i) == (i < 3 ? 1 : 0));
  CHECK(leader_mask(build_graph(3, {{1, 2}}, {})) == IntMatrix(3, 3));
  CHECK(leader_mask(build_graph(3, {{1, 2}}, {1, 2, 3})) == IntMatrix::identity(3));
}

// U is integer here, so the identities hold exactly.
TEST_CASE("property: Laplacian and incidence identities on random graphs") {
  testing::Rng rng(101);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = testing::uniform_int(rng, 1, 12);
    const FollowerGraph g =
        build_graph(n, testing::random_edges(rng, n, testing::uniform_real(rng, 0.0, 0.6)), {});
    const IntMatrix l = laplacian(g);
    const IntMatrix u = incidence(g);
    for (int i = 0; i < n; ++i) {
      long row = 0;
      for (int j = 0; j < n; ++j) row += l(i, j);
      REQUIRE(row == 0);
    }
    REQUIRE(u.transpose() * u == l);
    for (std::size_t r = 0; r < u.rows(); ++r) {
      long sum = 0;
      for (int j = 0; j < n; ++j) sum += u(r, j);
      REQUIRE(sum == 0);  // U 1 = 0
    }
  }
}

TEST_CASE("property: kernel of U is span{1} for connected graphs") {
  testing::Rng rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = testing::uniform_int(rng, 2, 10);
    const FollowerGraph g = build_graph(n, testing::random_connected_edges(rng, n, 0.2), {1});
    const Matrix u = to_real(incidence(g));
    Vector x(n);
    double mean = 0.0;
    for (double& v : x) mean += (v = testing::uniform_real(rng, -1.0, 1.0));
    mean /= n;
    for (double& v : x) v -= mean;
    const Vector ux = u * x;
    REQUIRE(norm_inf(ux) > 1e-12);
  }
}

TEST_CASE("property: components agree with BFS and leader connectivity is definitional") {
  testing::Rng rng(303);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = testing::uniform_int(rng, 1, 12);
    std::vector<int> leaders;
    for (int i = 1; i <= n; ++i)
      if (testing::uniform_real(rng, 0, 1) < 0.3) leaders.push_back(i);
    const FollowerGraph g = build_graph(n, testing::random_edges(rng, n, 0.2), leaders);

    const auto comps = connected_components(g);
    const auto label = testing::bfs_labels(g);
    std::size_t covered = 0;
    bool every_has_leader = true;
    for (const auto& c : comps) {
      covered += c.size();
      for (int v : c) REQUIRE(label[v] == label[c.front()]);
      every_has_leader &= std::any_of(c.begin(), c.end(), [&](int v) { return g.is_leader(v); });
    }
    REQUIRE(covered == static_cast<std::size_t>(n));
    REQUIRE(comps.size() == static_cast<std::size_t>(*std::max_element(label.begin(), label.end()) + 1));
    REQUIRE(is_leader_connected(g) == every_has_leader);
  }
}

TEST_CASE("relabeling and induced subgraphs") {
  const FollowerGraph g = example_network();
  const FollowerGraph r = g.relabeled({4, 3, 2, 1, 0});
  CHECK(r.leader_set() == std::vector<int>{2, 3, 4});
  CHECK(r.edges().size() == 4);

  const FollowerGraph sub = induced_subgraph(g, {2, 3, 4});
  CHECK(sub.n() == 3);
  CHECK(sub.edges().size() == 2);
  CHECK(sub.leader_set() == std::vector<int>{0});
}
