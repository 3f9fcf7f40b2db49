#include "gedt/tree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <utility>

namespace gedt {

std::string_view comparator_name(Comparator c) { return c == Comparator::lt ? "lt" : "gt"; }

int constant_count(Feature f) { return feature_index(f) < 10 ? 10 : 2; }

double grammar_constant(Feature f, int k)
{
  if (k < 0 || k >= constant_count(f)) {
    throw std::out_of_range("grammar constant index out of range");
  }
  return constant_count(f) == 10 ? k / 10.0 : k / 2.0;
}

bool is_grammar_constant(Feature f, double threshold)
{
  for (int k = 0; k < constant_count(f); ++k) {
    if (grammar_constant(f, k) == threshold) {
      return true;
    }
  }
  return false;
}

Stage act_greedy(const Leaf& leaf)
{
  const auto best = std::max_element(leaf.q_values.begin(), leaf.q_values.end());
  return Stage(static_cast<int>(best - leaf.q_values.begin()));
}

DecisionTree::DecisionTree()
{
  Node root;
  root.leaf = 0;
  nodes_.push_back(root);
  leaves_.push_back(Leaf{});
}

int DecisionTree::traverse(const Observation& obs) const
{
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const Node& n = nodes_[i];
    i = static_cast<std::size_t>(n.condition.holds(obs) ? n.on_true : n.on_false);
  }
  return nodes_[i].leaf;
}

std::size_t DecisionTree::depth() const
{
  std::function<std::size_t(std::size_t)> rec = [&](std::size_t i) -> std::size_t {
    const Node& n = nodes_[i];
    if (n.is_leaf()) {
      return 0;
    }
    return 1 + std::max(rec(static_cast<std::size_t>(n.on_true)), rec(static_cast<std::size_t>(n.on_false)));
  };
  return rec(0);
}

TreeBuilder::NodeRef TreeBuilder::leaf(const std::array<double, kNumStages>& q_values)
{
  Pending p;
  p.q_values = q_values;
  pending_.push_back(p);
  return pending_.size() - 1;
}

TreeBuilder::NodeRef TreeBuilder::split(const Condition& condition, NodeRef on_true, NodeRef on_false)
{
  if (on_true >= pending_.size() || on_false >= pending_.size()) {
    throw std::out_of_range("TreeBuilder::split: unknown child");
  }
  pending_.push_back(Pending{.condition = condition, .on_true = on_true, .on_false = on_false});
  return pending_.size() - 1;
}

DecisionTree TreeBuilder::build(NodeRef root) &&
{
  if (root >= pending_.size()) {
    throw std::out_of_range("TreeBuilder::build: unknown root");
  }
  DecisionTree t;
  t.nodes_.clear();
  t.leaves_.clear();
  std::function<std::int32_t(NodeRef)> emit = [&](NodeRef ref) -> std::int32_t {
    const Pending& p = pending_[ref];
    const auto index = static_cast<std::int32_t>(t.nodes_.size());
    t.nodes_.emplace_back();
    if (!p.condition) {
      const auto id = static_cast<std::int32_t>(t.leaves_.size());
      t.nodes_[static_cast<std::size_t>(index)].leaf = id;
      t.leaves_.push_back(Leaf{id, p.q_values});
      return index;
    }
    const std::int32_t on_true = emit(p.on_true);
    const std::int32_t on_false = emit(p.on_false);
    auto& n = t.nodes_[static_cast<std::size_t>(index)];
    n.condition = *p.condition;
    n.on_true = on_true;
    n.on_false = on_false;
    return index;
  };
  emit(root);
  return t;
}

namespace {

void append_text(const DecisionTree& tree, std::size_t i, bool with_ids, std::string& out)
{
  const auto& n = tree.nodes()[i];
  if (n.is_leaf()) {
    out += "leaf";
    if (with_ids) {
      out += '#';
      out += std::to_string(n.leaf);
    }
    return;
  }
  out += "if ";
  out += feature_name(n.condition.var);
  out += ' ';
  out += comparator_name(n.condition.cmp);
  out += ' ';
  out += format_double(n.condition.threshold);
  out += " then ";
  append_text(tree, static_cast<std::size_t>(n.on_true), with_ids, out);
  out += " else ";
  append_text(tree, static_cast<std::size_t>(n.on_false), with_ids, out);
}

class TextParser {
 public:
  explicit TextParser(std::string_view text) : text_(text) {}

  DecisionTree parse()
  {
    const auto root = parse_node();
    skip_space();
    if (pos_ != text_.size()) {
      throw ParseError("unexpected trailing input", pos_);
    }
    return std::move(builder_).build(root);
  }

 private:
  void skip_space()
  {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' ||
                                   text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  std::string_view next_token()
  {
    skip_space();
    token_start_ = pos_;
    while (pos_ < text_.size() && text_[pos_] != ' ' && text_[pos_] != '\t' && text_[pos_] != '\n' &&
           text_[pos_] != '\r') {
      ++pos_;
    }
    return text_.substr(token_start_, pos_ - token_start_);
  }

  void expect(std::string_view word)
  {
    const auto tok = next_token();
    if (tok != word) {
      throw ParseError("expected '" + std::string(word) + "' but found '" + std::string(tok) + "'",
                       token_start_);
    }
  }

  TreeBuilder::NodeRef parse_node()
  {
    const auto tok = next_token();
    if (tok.empty()) {
      throw ParseError("unexpected end of input", token_start_);
    }
    if (tok == "leaf" || tok.starts_with("leaf#")) {
      if (tok.size() > 4) {
        int id = -1;
        const auto digits = tok.substr(5);
        auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id);
        if (ec != std::errc() || p != digits.data() + digits.size() || digits.empty()) {
          throw ParseError("malformed leaf id '" + std::string(tok) + "'", token_start_);
        }
        if (id != leaf_count_) {
          throw ParseError("leaf id " + std::to_string(id) + " out of preorder (expected " +
                               std::to_string(leaf_count_) + ")",
                           token_start_);
        }
      }
      ++leaf_count_;
      return builder_.leaf();
    }
    if (tok != "if") {
      throw ParseError("expected 'if' or 'leaf' but found '" + std::string(tok) + "'", token_start_);
    }

    Condition c;
    const auto var_tok = next_token();
    const auto var = feature_from_name(var_tok);
    if (!var) {
      throw ParseError("unknown variable '" + std::string(var_tok) + "'", token_start_);
    }
    c.var = *var;

    const auto cmp_tok = next_token();
    if (cmp_tok == "lt") {
      c.cmp = Comparator::lt;
    } else if (cmp_tok == "gt") {
      c.cmp = Comparator::gt;
    } else {
      throw ParseError("expected 'lt' or 'gt' but found '" + std::string(cmp_tok) + "'", token_start_);
    }

    const auto num_tok = next_token();
    double value = 0.0;
    auto [p, ec] = std::from_chars(num_tok.data(), num_tok.data() + num_tok.size(), value);
    if (num_tok.empty() || ec != std::errc() || p != num_tok.data() + num_tok.size()) {
      throw ParseError("malformed constant '" + std::string(num_tok) + "'", token_start_);
    }
    if (!is_grammar_constant(c.var, value)) {
      throw ParseError("constant " + std::string(num_tok) + " is not in the constant set of " +
                           std::string(var_tok),
                       token_start_);
    }
    c.threshold = value;

    expect("then");
    const auto on_true = parse_node();
    expect("else");
    const auto on_false = parse_node();
    return builder_.split(c, on_true, on_false);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t token_start_ = 0;
  int leaf_count_ = 0;
  TreeBuilder builder_;
};

nlohmann::json node_to_json(const DecisionTree& tree, std::size_t i)
{
  const auto& n = tree.nodes()[i];
  if (n.is_leaf()) {
    const auto& leaf = tree.leaf(n.leaf);
    return {{"leaf", leaf.id}, {"q_values", leaf.q_values}};
  }
  return {{"var", feature_name(n.condition.var)},
          {"cmp", comparator_name(n.condition.cmp)},
          {"threshold", n.condition.threshold},
          {"then", node_to_json(tree, static_cast<std::size_t>(n.on_true))},
          {"else", node_to_json(tree, static_cast<std::size_t>(n.on_false))}};
}

TreeBuilder::NodeRef node_from_json(const nlohmann::json& j, TreeBuilder& b)
{
  if (j.contains("leaf")) {
    std::array<double, kNumStages> q{};
    if (j.contains("q_values")) {
      q = j.at("q_values").get<std::array<double, kNumStages>>();
    }
    return b.leaf(q);
  }
  Condition c;
  const auto name = j.at("var").get<std::string>();
  const auto var = feature_from_name(name);
  if (!var) {
    throw std::invalid_argument("unknown variable '" + name + "' in tree record");
  }
  c.var = *var;
  const auto cmp = j.at("cmp").get<std::string>();
  if (cmp != "lt" && cmp != "gt") {
    throw std::invalid_argument("unknown comparator '" + cmp + "' in tree record");
  }
  c.cmp = cmp == "lt" ? Comparator::lt : Comparator::gt;
  c.threshold = j.at("threshold").get<double>();
  if (!is_grammar_constant(c.var, c.threshold)) {
    throw std::invalid_argument("threshold outside the constant set of " + name);
  }
  const auto on_true = node_from_json(j.at("then"), b);
  const auto on_false = node_from_json(j.at("else"), b);
  return b.split(c, on_true, on_false);
}

}  // namespace

std::string to_text(const DecisionTree& tree)
{
  std::string out;
  append_text(tree, 0, true, out);
  return out;
}

std::string to_grammar_text(const DecisionTree& tree)
{
  std::string out;
  append_text(tree, 0, false, out);
  return out;
}

DecisionTree from_text(std::string_view text) { return TextParser(text).parse(); }

nlohmann::json to_json(const DecisionTree& tree) { return node_to_json(tree, 0); }

DecisionTree tree_from_json(const nlohmann::json& j)
{
  TreeBuilder b;
  const auto root = node_from_json(j, b);
  return std::move(b).build(root);
}

DecisionTree best_reported_tree()
{
  auto one_hot = [](int stage) {
    std::array<double, kNumStages> q{};
    q[static_cast<std::size_t>(stage)] = 1.0;
    return q;
  };
  TreeBuilder b;
  const auto inner = b.split({Feature::i_g, Comparator::gt, 0.0}, b.leaf(one_hot(3)), b.leaf(one_hot(0)));
  const auto root = b.split({Feature::n_d, Comparator::gt, 0.9}, inner, b.leaf(one_hot(2)));
  return std::move(b).build(root);
}

}  // namespace gedt
