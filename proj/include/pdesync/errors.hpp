#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdesync {

/// Base class for every domain error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// graph
class IndexOutOfRange : public Error { using Error::Error; };
class DuplicateEdge : public Error { using Error::Error; };
class SelfLoop : public Error { using Error::Error; };

// linear algebra
class NoConvergence : public Error { using Error::Error; };
class SingularMatrix : public Error { using Error::Error; };
class DimensionMismatch : public Error { using Error::Error; };

// certificates
class InvalidSimplification : public Error { using Error::Error; };
class GraphNotConnected : public Error { using Error::Error; };
class GridTooCoarse : public Error { using Error::Error; };

// gain synthesis
class InvalidLeaderCount : public Error { using Error::Error; };
class EmptyWindow : public Error { using Error::Error; };

class InfeasibleInBracket : public Error {
 public:
  InfeasibleInBracket(double min_max_eig, double argmin_g);
  double min_max_eig() const noexcept { return min_max_eig_; }
  double argmin_g() const noexcept { return argmin_g_; }

 private:
  double min_max_eig_;
  double argmin_g_;
};

class UncontrollableComponent : public Error {
 public:
  /// `component` holds 1-based follower indices.
  explicit UncontrollableComponent(std::vector<int> component);
  const std::vector<int>& component() const noexcept { return component_; }

 private:
  std::vector<int> component_;
};

// simulation
class Divergence : public Error {
 public:
  /// `agent` is 1-based; N+1 denotes the leader.
  Divergence(std::size_t step, int agent, double value);
  std::size_t step() const noexcept { return step_; }
  int agent() const noexcept { return agent_; }

 private:
  std::size_t step_;
  int agent_;
};

class NonPositiveError : public Error { using Error::Error; };

}  // namespace pdesync
