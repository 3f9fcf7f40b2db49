#pragma once

#include "gedt/sim.hpp"
#include "gedt/tree.hpp"
#include "gedt/util.hpp"

namespace gedt {

struct QConfig {
  double alpha = 1e-3;
  double epsilon = 0.05;
  double q_init_low = -1.0;
  double q_init_high = 1.0;
  /// Not given for the original method; 0.99 suits 100-step episodes.
  double gamma = 0.99;
  int train_episodes = 10;

  void validate() const;
  bool operator==(const QConfig&) const = default;
};

/// Uniformly random stage with probability epsilon, greedy otherwise.
Stage select_action(const Leaf& leaf, double epsilon, Rng& rng);

/// One-step Q-learning on a leaf entry. `next == nullptr` marks a terminal
/// transition (no bootstrap).
void q_update(Leaf& prev, Stage action, double reward, const Leaf* next, const QConfig& q);

/// Fills every leaf with uniform draws from [q_init_low, q_init_high].
void init_q_values(DecisionTree& tree, const QConfig& q, Rng& rng);

struct TrainingStats {
  double episode_return = 0.0;
  int updates = 0;
};

/// Runs `sim` (already reset) to the end with epsilon-greedy actions,
/// updating the previous (leaf, action) entry after every day. Returns the
/// undiscounted return.
TrainingStats run_training_episode(DecisionTree& tree, Simulator& sim, const QConfig& q, Rng& rng);

}  // namespace gedt
