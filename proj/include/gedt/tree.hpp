#pragma once

#include "gedt/sim.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace gedt {

enum class Comparator : std::uint8_t { lt, gt };

std::string_view comparator_name(Comparator c);

struct Condition {
  Feature var = Feature::i_g;
  Comparator cmp = Comparator::lt;
  double threshold = 0.0;

  [[nodiscard]] bool holds(const Observation& obs) const
  {
    const double v = obs[var];
    return cmp == Comparator::lt ? v < threshold : v > threshold;
  }
  bool operator==(const Condition&) const = default;
};

/// Number of grammar constants available for a feature: 10 (step 0.1) for the
/// count features, 2 (step 0.5) for l and h.
int constant_count(Feature f);
/// The k-th grammar constant for feature f, computed as k/10 or k/2 so that it
/// is bit-identical to the parsed decimal text.
double grammar_constant(Feature f, int k);
bool is_grammar_constant(Feature f, double threshold);

struct Leaf {
  int id = 0;
  std::array<double, kNumStages> q_values{};

  bool operator==(const Leaf&) const = default;
};

/// Argmax over q_values; ties go to the lowest stage.
Stage act_greedy(const Leaf& leaf);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at offset " + std::to_string(position)), position_(position)
  {
  }
  [[nodiscard]] std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Binary tree of threshold conditions with Q-value leaves, stored in
/// preorder. Node 0 is the root; leaf ids are assigned in preorder, so the
/// canonical text lists leaf#0, leaf#1, ... from left to right.
class DecisionTree {
 public:
  struct Node {
    Condition condition;
    std::int32_t on_true = -1;
    std::int32_t on_false = -1;
    std::int32_t leaf = -1;

    [[nodiscard]] bool is_leaf() const { return leaf >= 0; }
    bool operator==(const Node&) const = default;
  };

  /// A tree made of one leaf and no conditions.
  DecisionTree();

  /// Index of the leaf reached by obs.
  [[nodiscard]] int traverse(const Observation& obs) const;

  [[nodiscard]] std::span<const Node> nodes() const { return nodes_; }
  [[nodiscard]] std::span<const Leaf> leaves() const { return leaves_; }
  [[nodiscard]] std::span<Leaf> leaves() { return leaves_; }
  [[nodiscard]] const Leaf& leaf(int id) const { return leaves_.at(static_cast<std::size_t>(id)); }
  [[nodiscard]] Leaf& leaf(int id) { return leaves_.at(static_cast<std::size_t>(id)); }

  [[nodiscard]] std::size_t condition_count() const { return nodes_.size() - leaves_.size(); }
  [[nodiscard]] std::size_t depth() const;

  bool operator==(const DecisionTree&) const = default;

 private:
  friend class TreeBuilder;
  std::vector<Node> nodes_;
  std::vector<Leaf> leaves_;
};

/// Assembles a tree bottom-up; build() relinearizes it into preorder.
///
///   TreeBuilder b;
///   auto root = b.split({Feature::l, Comparator::gt, 0.5}, b.leaf(), b.leaf());
///   DecisionTree t = std::move(b).build(root);
class TreeBuilder {
 public:
  using NodeRef = std::size_t;

  NodeRef leaf(const std::array<double, kNumStages>& q_values = {});
  NodeRef split(const Condition& condition, NodeRef on_true, NodeRef on_false);
  DecisionTree build(NodeRef root) &&;

 private:
  struct Pending {
    std::optional<Condition> condition;
    NodeRef on_true = 0;
    NodeRef on_false = 0;
    std::array<double, kNumStages> q_values{};
  };
  std::vector<Pending> pending_;
};

/// `if <var> <lt|gt> <const> then <subtree|leaf#k> else <subtree|leaf#k>`.
std::string to_text(const DecisionTree& tree);
/// Same layout with bare `leaf` tokens, as emitted by the grammar.
std::string to_grammar_text(const DecisionTree& tree);
/// Accepts both `leaf` and `leaf#k`; explicit ids must match preorder.
DecisionTree from_text(std::string_view text);

/// Nested-record serialization including Q-values.
nlohmann::json to_json(const DecisionTree& tree);
DecisionTree tree_from_json(const nlohmann::json& j);

/// The best tree reported for the original study:
/// n_d > 0.9 ? (i_g > 0.0 ? Stage 3 : Stage 0) : Stage 2, with leaves fixed.
DecisionTree best_reported_tree();

}  // namespace gedt
