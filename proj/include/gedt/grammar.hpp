#pragma once

#include "gedt/tree.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gedt {

inline constexpr int kDefaultMaxGene = 4000;

struct Genotype {
  std::vector<std::int32_t> genes;

  bool operator==(const Genotype&) const = default;
};

struct Symbol {
  enum class Kind : std::uint8_t {
    terminal,
    nonterminal,
    /// const_{input_var}: resolved to the constant rule of the most recently
    /// expanded input variable.
    variable_constant,
  };
  Kind kind = Kind::terminal;
  std::string text;

  bool operator==(const Symbol&) const = default;
};

struct Rule {
  std::string name;
  std::vector<std::vector<Symbol>> productions;
  /// Single-production templates (the condition rule) are inlined without
  /// reading a gene.
  bool consumes_gene = true;
};

class Grammar {
 public:
  /// The decision-tree grammar:
  ///   dt        -> <if>
  ///   if        -> if <condition> then <action> else <action>
  ///   condition -> <input_var> <comp_op> <const_{input_var}>
  ///   action    -> leaf | <if>
  ///   comp_op   -> lt | gt
  ///   input_var -> i_g | r_g | ... | h        (observation order)
  ///   const_count  -> 0.0 | 0.1 | ... | 0.9   (features 0..9)
  ///   const_binary -> 0.0 | 0.5               (l and h)
  static Grammar decision_tree();

  [[nodiscard]] const std::string& start() const { return start_; }
  [[nodiscard]] const std::vector<Rule>& rules() const { return rules_; }
  [[nodiscard]] const Rule& rule(const std::string& name) const;
  /// Name of the constant rule bound to the input_var production `var_index`.
  [[nodiscard]] const std::string& constant_rule_for(int var_index) const;

 private:
  std::string start_;
  std::vector<Rule> rules_;
  std::vector<std::string> constant_rule_by_var_;
};

struct MappingResult {
  /// Empty when non-terminals remain after the wrap budget.
  std::optional<DecisionTree> tree;
  /// Terminal string of the derivation (partial when invalid).
  std::string phenotype;
  std::size_t genes_consumed = 0;
  int wraps = 0;

  [[nodiscard]] bool valid() const { return tree.has_value(); }
};

/// Leftmost derivation: each gene picks production (gene mod k) for the first
/// non-terminal. Exhausted genes wrap to the start at most `max_wraps` times.
MappingResult map_genotype(const Genotype& genotype, const Grammar& grammar, int max_wraps = 4);

}  // namespace gedt
