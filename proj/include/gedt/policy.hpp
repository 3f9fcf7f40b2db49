#pragma once

#include "gedt/sim.hpp"
#include "gedt/tree.hpp"

#include <memory>
#include <string>

namespace gedt {

/// A stage-choosing controller evaluated one episode at a time.
class Policy {
 public:
  virtual ~Policy() = default;

  /// Clears per-episode state.
  virtual void begin_episode() {}
  virtual Stage act(int day, const Observation& obs) = 0;
  [[nodiscard]] virtual std::string name() const = 0;
  /// Fresh instance for another worker thread.
  [[nodiscard]] virtual std::unique_ptr<Policy> clone() const = 0;
};

/// Greedy execution of a trained tree. Never updates Q-values.
class TreePolicy final : public Policy {
 public:
  explicit TreePolicy(DecisionTree tree, std::string name = "tree");

  Stage act(int day, const Observation& obs) override;
  [[nodiscard]] std::string name() const override { return name_; }
  [[nodiscard]] std::unique_ptr<Policy> clone() const override;
  [[nodiscard]] const DecisionTree& tree() const { return tree_; }

 private:
  DecisionTree tree_;
  std::string name_;
};

}  // namespace gedt
