#include "gedt/evolution.hpp"

#include "gedt/sim.hpp"

#include <algorithm>
#include <exception>
#include <numeric>

namespace gedt {

void EvolutionConfig::validate() const
{
  auto require = [](bool ok, const char* what) {
    if (!ok) {
      throw ConfigError(std::string("invalid EvolutionConfig: ") + what);
    }
  };
  require(population_size >= 1, "population_size >= 1");
  require(generations >= 0, "generations >= 0");
  require(tournament_size >= 1, "tournament_size >= 1");
  require(mutation_probability >= 0.0 && mutation_probability <= 1.0, "mutation_probability in [0,1]");
  require(mutation_rate >= 0.0 && mutation_rate <= 1.0, "mutation_rate in [0,1]");
  require(genotype_length >= 1, "genotype_length >= 1");
  require(max_gene >= 1, "M >= 1");
  require(max_wraps >= 0, "max_wraps >= 0");
}

std::size_t tournament_winner(std::span<const double> fitness, std::span<const std::size_t> drawn)
{
  if (drawn.empty()) {
    throw std::invalid_argument("tournament_winner: no contestants");
  }
  std::size_t best = drawn.front();
  for (const std::size_t i : drawn.subspan(1)) {
    if (fitness[i] > fitness[best]) {
      best = i;
    }
  }
  return best;
}

std::size_t tournament_select(std::span<const double> fitness, int size, Rng& rng)
{
  if (fitness.empty()) {
    throw std::invalid_argument("tournament_select: empty population");
  }
  std::uniform_int_distribution<std::size_t> pick(0, fitness.size() - 1);
  std::vector<std::size_t> drawn(static_cast<std::size_t>(size));
  for (auto& d : drawn) {
    d = pick(rng);
  }
  return tournament_winner(fitness, drawn);
}

Genotype uniform_mutation(const Genotype& g, double rate, int max_gene, Rng& rng)
{
  Genotype out = g;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::int32_t> gene(0, max_gene);
  for (auto& v : out.genes) {
    if (coin(rng) < rate) {
      v = gene(rng);
    }
  }
  return out;
}

Genotype random_genotype(int length, int max_gene, Rng& rng)
{
  std::uniform_int_distribution<std::int32_t> gene(0, max_gene);
  Genotype g;
  g.genes.resize(static_cast<std::size_t>(length));
  for (auto& v : g.genes) {
    v = gene(rng);
  }
  return g;
}

namespace {

void evaluate_all(std::vector<Individual>& batch, const EvolutionConfig& config, const Grammar& grammar,
                  const FitnessFn& fitness_fn)
{
  parallel_for(batch.size(), config.workers, [&](std::size_t i) {
    Individual& ind = batch[i];
    MappingResult mapped = map_genotype(ind.genotype, grammar, config.max_wraps);
    ind.tree = std::move(mapped.tree);
    if (!ind.tree) {
      ind.fitness = kInvalidFitness;
      return;
    }
    try {
      ind.fitness = fitness_fn(ind, ind.eval_seed);
    } catch (const std::exception& e) {
      throw EvaluationError(ind.generation, ind.slot, e.what());
    }
  });
}

GenerationRecord summarize(int generation, const std::vector<Individual>& population)
{
  GenerationRecord rec;
  rec.generation = generation;
  std::size_t best = 0;
  double sum = 0.0;
  for (std::size_t i = 0; i < population.size(); ++i) {
    const double f = *population[i].fitness;
    sum += f;
    if (f > *population[best].fitness) {
      best = i;
    }
    if (!population[i].tree) {
      ++rec.invalid;
    }
  }
  rec.best_fitness = *population[best].fitness;
  rec.mean_fitness = sum / static_cast<double>(population.size());
  rec.champion_genotype = population[best].genotype;
  rec.champion_tree = population[best].tree ? to_text(*population[best].tree) : std::string("<invalid>");
  rec.champion_eval_seed = population[best].eval_seed;
  return rec;
}

}  // namespace

EvolutionResult evolve(const EvolutionConfig& config, const Grammar& grammar, const FitnessFn& fitness_fn)
{
  config.validate();
  const auto pop = static_cast<std::size_t>(config.population_size);

  EvolutionResult result;
  std::vector<Individual>& population = result.final_population;
  population.resize(pop);

  Rng init_rng(derive_seed(config.master_seed, {kTagInit}));
  for (std::size_t s = 0; s < pop; ++s) {
    Individual& ind = population[s];
    ind.genotype = random_genotype(config.genotype_length, config.max_gene, init_rng);
    ind.generation = 0;
    ind.slot = static_cast<int>(s);
    ind.eval_seed = derive_seed(config.master_seed, {kTagEvaluation, 0, s});
  }
  evaluate_all(population, config, grammar, fitness_fn);
  result.log.evaluations += pop;

  auto better = [](const Individual& a, const Individual& b) { return *a.fitness > *b.fitness; };
  result.best = *std::min_element(population.begin(), population.end(), better);
  result.log.generations.push_back(summarize(0, population));

  std::vector<double> fitness(pop);
  std::vector<std::size_t> parents(pop);
  std::vector<Individual> offspring(pop);

  for (int gen = 1; gen <= config.generations; ++gen) {
    for (std::size_t s = 0; s < pop; ++s) {
      fitness[s] = *population[s].fitness;
    }

    Rng rng(derive_seed(config.master_seed, {kTagSelection, static_cast<std::uint64_t>(gen)}));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t s = 0; s < pop; ++s) {
      parents[s] = tournament_select(fitness, config.tournament_size, rng);
      Individual& child = offspring[s];
      child = Individual{};
      child.genotype = population[parents[s]].genotype;
      if (coin(rng) < config.mutation_probability) {
        child.genotype = uniform_mutation(child.genotype, config.mutation_rate, config.max_gene, rng);
      }
      child.generation = gen;
      child.slot = static_cast<int>(s);
      child.eval_seed = derive_seed(config.master_seed, {kTagEvaluation, static_cast<std::uint64_t>(gen), s});
    }

    evaluate_all(offspring, config, grammar, fitness_fn);
    result.log.evaluations += pop;

    int replacements = 0;
    for (std::size_t s = 0; s < pop; ++s) {
      Individual& occupant = population[parents[s]];
      if (*offspring[s].fitness > *occupant.fitness) {
        occupant = std::move(offspring[s]);
        ++replacements;
      }
    }

    for (const auto& ind : population) {
      if (*ind.fitness > *result.best.fitness) {
        result.best = ind;
      }
    }
    GenerationRecord rec = summarize(gen, population);
    rec.replacements = replacements;
    result.log.generations.push_back(std::move(rec));
  }
  return result;
}

}  // namespace gedt
