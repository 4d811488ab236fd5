#include "pdesync/graph.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace pdesync {

FollowerGraph build_graph(int n, const std::vector<std::pair<int, int>>& edges,
                          const std::vector<int>& leader_set) {
  if (n < 1) throw IndexOutOfRange("graph needs at least one follower, got n=" + std::to_string(n));
  auto check = [n](int i) {
    if (i < 1 || i > n)
      throw IndexOutOfRange("index " + std::to_string(i) + " outside [1, " + std::to_string(n) + "]");
  };

  FollowerGraph g;
  g.n_ = n;
  std::set<Edge> seen;
  for (auto [a, b] : edges) {
    check(a);
    check(b);
    if (a == b) throw SelfLoop("self-loop at node " + std::to_string(a));
    Edge e{std::min(a, b) - 1, std::max(a, b) - 1};
    if (!seen.insert(e).second)
      throw DuplicateEdge("duplicate edge (" + std::to_string(e.lo + 1) + "," +
                          std::to_string(e.hi + 1) + ")");
  }
  g.edges_.assign(seen.begin(), seen.end());

  g.leader_flag_.assign(static_cast<std::size_t>(n), false);
  for (int i : leader_set) {
    check(i);
    g.leader_flag_[static_cast<std::size_t>(i - 1)] = true;
  }
  for (int i = 0; i < n; ++i)
    if (g.leader_flag_[static_cast<std::size_t>(i)]) g.leaders_.push_back(i);
  return g;
}

FollowerGraph example_network() {
  return build_graph(5, {{1, 3}, {2, 4}, {3, 4}, {4, 5}}, {1, 2, 3});
}

FollowerGraph FollowerGraph::relabeled(const std::vector<int>& perm) const {
  std::vector<std::pair<int, int>> e;
  for (const Edge& ed : edges_) e.emplace_back(perm.at(ed.lo) + 1, perm.at(ed.hi) + 1);
  std::vector<int> l;
  for (int i : leaders_) l.push_back(perm.at(i) + 1);
  return build_graph(n_, e, l);
}

IntMatrix laplacian(const FollowerGraph& g) {
  IntMatrix l(g.n(), g.n());
  for (const Edge& e : g.edges()) {
    l(e.lo, e.hi) = -1;
    l(e.hi, e.lo) = -1;
    ++l(e.lo, e.lo);
    ++l(e.hi, e.hi);
  }
  return l;
}

IntMatrix incidence(const FollowerGraph& g) {
  IntMatrix u(g.edges().size(), g.n());
  for (std::size_t r = 0; r < g.edges().size(); ++r) {
    u(r, g.edges()[r].lo) = 1;
    u(r, g.edges()[r].hi) = -1;
  }
  return u;
}

namespace {

struct DisjointSets {
  std::vector<int> parent;
  explicit DisjointSets(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

std::vector<std::vector<int>> connected_components(const FollowerGraph& g) {
  DisjointSets ds(g.n());
  for (const Edge& e : g.edges()) ds.unite(e.lo, e.hi);
  std::vector<std::vector<int>> comps;
  std::vector<int> slot(g.n(), -1);
  for (int i = 0; i < g.n(); ++i) {
    const int r = ds.find(i);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(comps.size());
      comps.emplace_back();
    }
    comps[slot[r]].push_back(i);
  }
  return comps;
}

bool is_connected(const FollowerGraph& g) { return connected_components(g).size() == 1; }

bool is_leader_connected(const FollowerGraph& g) {
  for (const auto& c : connected_components(g))
    if (std::none_of(c.begin(), c.end(), [&](int i) { return g.is_leader(i); })) return false;
  return true;
}

IntMatrix leader_mask(const FollowerGraph& g) {
  IntMatrix m(g.n(), g.n());
  for (int i : g.leader_set()) m(i, i) = 1;
  return m;
}

FollowerGraph induced_subgraph(const FollowerGraph& g, const std::vector<int>& nodes) {
  std::vector<int> local(g.n(), -1);
  for (std::size_t k = 0; k < nodes.size(); ++k) local.at(nodes[k]) = static_cast<int>(k);
  std::vector<std::pair<int, int>> e;
  for (const Edge& ed : g.edges())
    if (local[ed.lo] >= 0 && local[ed.hi] >= 0) e.emplace_back(local[ed.lo] + 1, local[ed.hi] + 1);
  std::vector<int> l;
  for (int i : nodes)
    if (g.is_leader(i)) l.push_back(local[i] + 1);
  return build_graph(static_cast<int>(nodes.size()), e, l);
}

}  // namespace pdesync
