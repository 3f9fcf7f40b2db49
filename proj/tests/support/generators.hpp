#pragma once

#include "gedt/sim.hpp"
#include "gedt/tree.hpp"
#include "gedt/util.hpp"

#include <random>

namespace gedt::testing {

inline Condition random_condition(Rng& rng)
{
  Condition c;
  c.var = static_cast<Feature>(std::uniform_int_distribution<int>(0, kNumFeatures - 1)(rng));
  c.cmp = std::bernoulli_distribution(0.5)(rng) ? Comparator::lt : Comparator::gt;
  c.threshold = grammar_constant(c.var, std::uniform_int_distribution<int>(0, constant_count(c.var) - 1)(rng));
  return c;
}

inline std::array<double, kNumStages> random_q(Rng& rng)
{
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::array<double, kNumStages> q{};
  for (auto& v : q) {
    v = d(rng);
  }
  return q;
}

inline TreeBuilder::NodeRef random_subtree(TreeBuilder& b, Rng& rng, int depth_left, double split_p)
{
  if (depth_left == 0 || !std::bernoulli_distribution(split_p)(rng)) {
    return b.leaf(random_q(rng));
  }
  const Condition c = random_condition(rng);
  const auto t = random_subtree(b, rng, depth_left - 1, split_p);
  const auto f = random_subtree(b, rng, depth_left - 1, split_p);
  return b.split(c, t, f);
}

/// Grammar-valid tree with at least one condition.
inline DecisionTree random_tree(Rng& rng, int max_depth = 5, double split_p = 0.5)
{
  TreeBuilder b;
  const Condition c = random_condition(rng);
  const auto t = random_subtree(b, rng, max_depth - 1, split_p);
  const auto f = random_subtree(b, rng, max_depth - 1, split_p);
  const auto root = b.split(c, t, f);
  return std::move(b).build(root);
}

/// Tree with exactly `conditions` conditions along a right spine.
inline DecisionTree chain_tree(int conditions, Rng& rng)
{
  TreeBuilder b;
  auto node = b.leaf(random_q(rng));
  for (int i = 0; i < conditions; ++i) {
    node = b.split(random_condition(rng), b.leaf(random_q(rng)), node);
  }
  return std::move(b).build(node);
}

inline Observation random_observation(Rng& rng)
{
  std::uniform_real_distribution<double> d(0.0, 1.0);
  Observation o;
  for (auto& v : o.values) {
    v = d(rng);
  }
  o[Feature::h] = std::bernoulli_distribution(0.5)(rng) ? 1.0 : 0.0;
  o[Feature::l] = std::uniform_int_distribution<int>(0, 4)(rng) / 4.0;
  return o;
}

}  // namespace gedt::testing
