#pragma once

// Follower network: undirected in-domain graph plus the set of followers that
// receive the leader's boundary feedback. Indices are 0-based internally; the
// file formats and error messages use 1-based labels.

#include <set>
#include <utility>
#include <vector>

#include "pdesync/matrix.hpp"

namespace pdesync {

struct Edge {
  int lo;  // lo < hi
  int hi;
  auto operator<=>(const Edge&) const = default;
};

class FollowerGraph {
 public:
  int n() const noexcept { return n_; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  const std::vector<int>& leader_set() const noexcept { return leaders_; }
  bool is_leader(int i) const { return leader_flag_.at(static_cast<std::size_t>(i)); }
  int leader_count() const noexcept { return static_cast<int>(leaders_.size()); }

  /// Same graph with follower i renamed perm[i].
  FollowerGraph relabeled(const std::vector<int>& perm) const;

 private:
  friend FollowerGraph build_graph(int, const std::vector<std::pair<int, int>>&,
                                   const std::vector<int>&);
  int n_ = 0;
  std::vector<Edge> edges_;  // sorted
  std::vector<int> leaders_;  // sorted, 0-based
  std::vector<bool> leader_flag_;
};

/// Validates 1-based input. Pairs are normalized so (j, i) and (i, j) are the
/// same edge. Throws IndexOutOfRange, DuplicateEdge, SelfLoop.
FollowerGraph build_graph(int n, const std::vector<std::pair<int, int>>& edges,
                          const std::vector<int>& leader_set);

/// The five-follower network with leaders {1, 2, 3} used throughout the
/// examples: edges 1-3, 2-4, 3-4, 4-5.
FollowerGraph example_network();

IntMatrix laplacian(const FollowerGraph& g);

/// |edges| x n oriented incidence; the lower endpoint gets +1.
IntMatrix incidence(const FollowerGraph& g);

/// Components of the in-domain graph (leader links ignored), each sorted,
/// ordered by smallest member.
std::vector<std::vector<int>> connected_components(const FollowerGraph& g);

bool is_connected(const FollowerGraph& g);

/// Every in-domain component holds at least one leader-linked follower.
bool is_leader_connected(const FollowerGraph& g);

/// Diagonal 0/1 matrix M with m_i = 1 for leader-linked followers.
IntMatrix leader_mask(const FollowerGraph& g);

/// Subgraph induced by `nodes` (0-based, sorted), relabeled 0..|nodes|-1.
FollowerGraph induced_subgraph(const FollowerGraph& g, const std::vector<int>& nodes);

}  // namespace pdesync
