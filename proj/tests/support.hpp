#pragma once

// Generators and independent oracles shared by the test binaries.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "pdesync/graph.hpp"
#include "pdesync/matrix.hpp"

namespace testing {

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Random spanning tree plus extra edges; 1-based pairs.
inline std::vector<std::pair<int, int>> random_connected_edges(Rng& rng, int n, double extra_p) {
  std::set<std::pair<int, int>> e;
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 1);
  std::shuffle(order.begin(), order.end(), rng);
  for (int i = 1; i < n; ++i) {
    const int a = order[i];
    const int b = order[uniform_int(rng, 0, i - 1)];
    e.insert({std::min(a, b), std::max(a, b)});
  }
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (uniform_real(rng, 0.0, 1.0) < extra_p) e.insert({a, b});
  return {e.begin(), e.end()};
}

inline std::vector<std::pair<int, int>> random_edges(Rng& rng, int n, double p) {
  std::vector<std::pair<int, int>> e;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      if (uniform_real(rng, 0.0, 1.0) < p) e.emplace_back(a, b);
  return e;
}

/// Nonempty random subset of {1..n}.
inline std::vector<int> random_leaders(Rng& rng, int n) {
  std::vector<int> l;
  while (l.empty())
    for (int i = 1; i <= n; ++i)
      if (uniform_real(rng, 0.0, 1.0) < 0.4) l.push_back(i);
  return l;
}

inline pdesync::FollowerGraph random_connected_graph(Rng& rng, int n) {
  return pdesync::build_graph(n, random_connected_edges(rng, n, 0.25), random_leaders(rng, n));
}

/// Breadth-first labeling on an adjacency list, independent of the
/// union-find used by the library. Returns component id per node (0-based).
inline std::vector<int> bfs_labels(const pdesync::FollowerGraph& g) {
  std::vector<std::vector<int>> adj(g.n());
  for (const auto& e : g.edges()) {
    adj[e.lo].push_back(e.hi);
    adj[e.hi].push_back(e.lo);
  }
  std::vector<int> label(g.n(), -1);
  int next = 0;
  for (int s = 0; s < g.n(); ++s) {
    if (label[s] >= 0) continue;
    std::queue<int> q;
    q.push(s);
    label[s] = next;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj[u])
        if (label[v] < 0) {
          label[v] = next;
          q.push(v);
        }
    }
    ++next;
  }
  return label;
}

inline pdesync::Matrix random_symmetric(Rng& rng, std::size_t n, double scale = 1.0) {
  pdesync::Matrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = uniform_real(rng, -scale, scale);
      a(i, j) = v;
      a(j, i) = v;
    }
  return a;
}

/// Eigenvalues of [[a, b], [b, c]] from the characteristic polynomial.
inline std::pair<double, double> eig2x2(double a, double b, double c) {
  const double tr = a + c;
  const double det = a * c - b * b;
  const double disc = std::sqrt(tr * tr - 4.0 * det);
  return {(tr - disc) / 2.0, (tr + disc) / 2.0};
}

}  // namespace testing
