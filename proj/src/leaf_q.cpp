#include "gedt/leaf_q.hpp"

#include <algorithm>
#include <string>

namespace gedt {

void QConfig::validate() const
{
  auto require = [](bool ok, const char* what) {
    if (!ok) {
      throw ConfigError(std::string("invalid QConfig: ") + what);
    }
  };
  require(alpha > 0.0 && alpha <= 1.0, "alpha in (0,1]");
  require(epsilon >= 0.0 && epsilon <= 1.0, "epsilon in [0,1]");
  require(gamma >= 0.0 && gamma <= 1.0, "gamma in [0,1]");
  require(q_init_low <= q_init_high, "q_init_low <= q_init_high");
  require(train_episodes >= 1, "train_episodes >= 1");
}

Stage select_action(const Leaf& leaf, double epsilon, Rng& rng)
{
  if (std::uniform_real_distribution<double>(0.0, 1.0)(rng) < epsilon) {
    return Stage(std::uniform_int_distribution<int>(0, kNumStages - 1)(rng));
  }
  return act_greedy(leaf);
}

void q_update(Leaf& prev, Stage action, double reward, const Leaf* next, const QConfig& q)
{
  double bootstrap = 0.0;
  if (next != nullptr) {
    bootstrap = q.gamma * *std::max_element(next->q_values.begin(), next->q_values.end());
  }
  double& entry = prev.q_values[static_cast<std::size_t>(action.level())];
  entry += q.alpha * (reward + bootstrap - entry);
}

void init_q_values(DecisionTree& tree, const QConfig& q, Rng& rng)
{
  std::uniform_real_distribution<double> dist(q.q_init_low, q.q_init_high);
  for (auto& leaf : tree.leaves()) {
    for (auto& v : leaf.q_values) {
      v = q.q_init_low == q.q_init_high ? q.q_init_low : dist(rng);
    }
  }
}

TrainingStats run_training_episode(DecisionTree& tree, Simulator& sim, const QConfig& q, Rng& rng)
{
  TrainingStats stats;
  int prev_leaf = -1;
  Stage prev_action;
  double prev_reward = 0.0;

  while (!sim.done()) {
    const int leaf = tree.traverse(sim.observation());
    if (prev_leaf >= 0) {
      q_update(tree.leaf(prev_leaf), prev_action, prev_reward, &tree.leaf(leaf), q);
      ++stats.updates;
    }
    const Stage action = select_action(tree.leaf(leaf), q.epsilon, rng);
    const StepOutcome out = sim.step(action);
    stats.episode_return += out.reward;
    prev_leaf = leaf;
    prev_action = action;
    prev_reward = out.reward;
  }
  if (prev_leaf >= 0) {
    q_update(tree.leaf(prev_leaf), prev_action, prev_reward, nullptr, q);
    ++stats.updates;
  }
  return stats;
}

}  // namespace gedt
