#include "gedt/policy.hpp"

#include <utility>

namespace gedt {

TreePolicy::TreePolicy(DecisionTree tree, std::string name) : tree_(std::move(tree)), name_(std::move(name)) {}

Stage TreePolicy::act(int /*day*/, const Observation& obs) { return act_greedy(tree_.leaf(tree_.traverse(obs))); }

std::unique_ptr<Policy> TreePolicy::clone() const { return std::make_unique<TreePolicy>(*this); }

}  // namespace gedt
