#include "gedt/grammar.hpp"

#include <stdexcept>

namespace gedt {

namespace {

Symbol t(std::string text) { return {Symbol::Kind::terminal, std::move(text)}; }
Symbol nt(std::string text) { return {Symbol::Kind::nonterminal, std::move(text)}; }

}  // namespace

Grammar Grammar::decision_tree()
{
  Grammar g;
  g.start_ = "dt";
  g.rules_.push_back({"dt", {{nt("if")}}});
  g.rules_.push_back({"if", {{t("if"), nt("condition"), t("then"), nt("action"), t("else"), nt("action")}}});
  g.rules_.push_back({"condition",
                      {{nt("input_var"), nt("comp_op"), Symbol{Symbol::Kind::variable_constant, "const"}}},
                      false});
  g.rules_.push_back({"action", {{t("leaf")}, {nt("if")}}});
  g.rules_.push_back({"comp_op", {{t("lt")}, {t("gt")}}});

  Rule input_var{"input_var", {}};
  for (int i = 0; i < kNumFeatures; ++i) {
    const auto f = static_cast<Feature>(i);
    input_var.productions.push_back({t(std::string(feature_name(f)))});
    g.constant_rule_by_var_.push_back(constant_count(f) == 10 ? "const_count" : "const_binary");
  }
  g.rules_.push_back(std::move(input_var));

  Rule fine{"const_count", {}};
  for (int k = 0; k < 10; ++k) {
    fine.productions.push_back({t(format_double(grammar_constant(Feature::i_g, k)))});
  }
  g.rules_.push_back(std::move(fine));

  Rule coarse{"const_binary", {}};
  for (int k = 0; k < 2; ++k) {
    coarse.productions.push_back({t(format_double(grammar_constant(Feature::h, k)))});
  }
  g.rules_.push_back(std::move(coarse));
  return g;
}

const Rule& Grammar::rule(const std::string& name) const
{
  for (const auto& r : rules_) {
    if (r.name == name) {
      return r;
    }
  }
  throw std::out_of_range("grammar has no rule '" + name + "'");
}

const std::string& Grammar::constant_rule_for(int var_index) const
{
  return constant_rule_by_var_.at(static_cast<std::size_t>(var_index));
}

MappingResult map_genotype(const Genotype& genotype, const Grammar& grammar, int max_wraps)
{
  MappingResult result;
  if (genotype.genes.empty()) {
    return result;
  }

  const Rule& input_var = grammar.rule("input_var");
  std::size_t cursor = 0;
  int last_var = 0;
  bool exhausted = false;

  auto next_gene = [&]() -> std::optional<std::int32_t> {
    if (cursor == genotype.genes.size()) {
      if (result.wraps == max_wraps) {
        return std::nullopt;
      }
      ++result.wraps;
      cursor = 0;
    }
    ++result.genes_consumed;
    return genotype.genes[cursor++];
  };

  // A stack of pending symbols, top = leftmost, gives the leftmost derivation.
  std::vector<const Symbol*> stack;
  Symbol start = nt(grammar.start());
  stack.push_back(&start);

  while (!stack.empty()) {
    const Symbol* sym = stack.back();
    stack.pop_back();
    if (sym->kind == Symbol::Kind::terminal) {
      if (!result.phenotype.empty()) {
        result.phenotype += ' ';
      }
      result.phenotype += sym->text;
      continue;
    }

    const Rule& rule = sym->kind == Symbol::Kind::variable_constant
                           ? grammar.rule(grammar.constant_rule_for(last_var))
                           : grammar.rule(sym->text);
    std::size_t choice = 0;
    if (rule.consumes_gene) {
      const auto gene = next_gene();
      if (!gene) {
        exhausted = true;
        break;
      }
      choice = static_cast<std::size_t>(*gene) % rule.productions.size();
    }
    if (&rule == &input_var) {
      last_var = static_cast<int>(choice);
    }
    const auto& production = rule.productions[choice];
    for (auto it = production.rbegin(); it != production.rend(); ++it) {
      stack.push_back(&*it);
    }
  }

  if (exhausted) {
    return result;
  }
  result.tree = from_text(result.phenotype);
  return result;
}

}  // namespace gedt
