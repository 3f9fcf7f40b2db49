#pragma once

#include "gedt/grammar.hpp"
#include "gedt/util.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gedt {

/// Fitness assigned to genotypes whose decoding runs out of wraps.
inline constexpr double kInvalidFitness = -1e6;

struct EvolutionConfig {
  int population_size = 45;
  int generations = 50;
  int tournament_size = 2;
  /// Probability that an offspring goes through mutation at all.
  double mutation_probability = 1.0;
  /// Per-gene resampling rate.
  double mutation_rate = 0.1;
  int genotype_length = 100;
  /// Genes are drawn from [0, max_gene].
  int max_gene = kDefaultMaxGene;
  int max_wraps = 4;
  std::uint64_t master_seed = 0;
  /// Fitness evaluation threads; 0 = hardware concurrency.
  unsigned workers = 0;

  void validate() const;
  bool operator==(const EvolutionConfig&) const = default;
};

struct Individual {
  Genotype genotype;
  /// Decoded (and, after evaluation, trained) tree. Empty for invalid decodes.
  std::optional<DecisionTree> tree;
  std::optional<double> fitness;
  int generation = 0;
  int slot = 0;
  /// Seed handed to the fitness function; enough to replay the evaluation.
  std::uint64_t eval_seed = 0;
};

/// Maps an individual to its fitness. May mutate `ind.tree` (leaf training).
/// Must be safe to call concurrently on distinct individuals.
using FitnessFn = std::function<double(Individual& ind, std::uint64_t seed)>;

/// Index of the winner among `drawn`: highest fitness, ties to the earliest draw.
std::size_t tournament_winner(std::span<const double> fitness, std::span<const std::size_t> drawn);

/// Draws `size` indices uniformly with replacement and returns the winner.
std::size_t tournament_select(std::span<const double> fitness, int size, Rng& rng);

/// Resamples each gene uniformly in [0, max_gene] with probability `rate`.
Genotype uniform_mutation(const Genotype& g, double rate, int max_gene, Rng& rng);

Genotype random_genotype(int length, int max_gene, Rng& rng);

struct GenerationRecord {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
  int replacements = 0;
  int invalid = 0;
  /// Best individual in the population after this generation.
  Genotype champion_genotype;
  std::string champion_tree;
  std::uint64_t champion_eval_seed = 0;
};

struct EvolutionLog {
  std::vector<GenerationRecord> generations;
  std::size_t evaluations = 0;
};

struct EvolutionResult {
  Individual best;
  EvolutionLog log;
  std::vector<Individual> final_population;
};

/// Steady-state GE loop: generation 0 is random and fully evaluated, then
/// each generation selects a parent per slot, mutates it, evaluates every
/// offspring (in parallel) and finally lets each offspring replace its
/// parent if strictly fitter. Returns the all-time best.
EvolutionResult evolve(const EvolutionConfig& config, const Grammar& grammar, const FitnessFn& fitness_fn);

/// Error raised when a fitness evaluation throws, tagged with its position.
class EvaluationError : public std::runtime_error {
 public:
  EvaluationError(int generation, int slot, const std::string& what)
      : std::runtime_error("fitness evaluation failed at generation " + std::to_string(generation) + ", slot " +
                           std::to_string(slot) + ": " + what),
        generation_(generation),
        slot_(slot)
  {
  }
  [[nodiscard]] int generation() const { return generation_; }
  [[nodiscard]] int slot() const { return slot_; }

 private:
  int generation_;
  int slot_;
};

}  // namespace gedt
