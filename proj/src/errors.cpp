#include "pdesync/errors.hpp"

#include <string>

namespace pdesync {

InfeasibleInBracket::InfeasibleInBracket(double min_max_eig, double argmin_g)
    : Error("no feasible g in bracket: min lambda_max " + std::to_string(min_max_eig) +
            " at g=" + std::to_string(argmin_g)),
      min_max_eig_(min_max_eig),
      argmin_g_(argmin_g) {}

namespace {

std::string list_labels(const std::vector<int>& c) {
  std::string s = "{";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + "}";
}

}  // namespace

UncontrollableComponent::UncontrollableComponent(std::vector<int> component)
    : Error("component " + list_labels(component) + " has no follower linked to the leader"),
      component_(std::move(component)) {}

Divergence::Divergence(std::size_t step, int agent, double value)
    : Error("divergence at step " + std::to_string(step) + " in agent " + std::to_string(agent) +
            " (value " + std::to_string(value) + ")"),
      step_(step),
      agent_(agent) {}

}  // namespace pdesync
