#include "gedt/experiment.hpp"

#include "gedt/baselines.hpp"
#include "gedt/leaf_q.hpp"

#include <fstream>
#include <stdexcept>

namespace gedt {

EpisodeResult run_test_episode(Policy& policy, const SimConfig& sim, std::uint64_t episode_seed)
{
  Simulator s(sim);
  s.reset(episode_seed);
  policy.begin_episode();
  EpisodeResult result;
  result.series.reserve(static_cast<std::size_t>(sim.episode_length));
  while (!s.done()) {
    DayRecord rec;
    rec.observation = s.observation();
    rec.stage = policy.act(s.state().day, rec.observation);
    const StepOutcome out = s.step(rec.stage);
    result.episode_return += out.reward;
    rec.day = out.true_state_snapshot.day;
    rec.reward = out.reward;
    rec.cumulative_reward = result.episode_return;
    rec.state = out.true_state_snapshot;
    result.series.push_back(rec);
  }
  return result;
}

void write_trajectory_csv(std::ostream& out, const EpisodeResult& episode)
{
  out << "day,stage,reward,cumulative_reward,infected,critical,dead,recovered,never_infected,cumulative_infected";
  for (int f = 0; f < kNumFeatures; ++f) {
    out << ",obs_" << feature_name(static_cast<Feature>(f));
  }
  out << '\n';
  for (const auto& r : episode.series) {
    out << r.day << ',' << r.stage.level() << ',' << format_double(r.reward) << ','
        << format_double(r.cumulative_reward) << ',' << r.state.infected << ',' << r.state.critical << ','
        << r.state.dead << ',' << r.state.recovered << ',' << r.state.never_infected() << ','
        << r.state.cumulative_infected;
    for (const double v : r.observation.values) {
      out << ',' << format_double(v);
    }
    out << '\n';
  }
}

double fitness_of(Individual& individual, const SimConfig& sim, const QConfig& q, std::uint64_t seed)
{
  if (!individual.tree) {
    return kInvalidFitness;
  }
  DecisionTree& tree = *individual.tree;
  Rng init_rng(derive_seed(seed, {kTagQInit}));
  init_q_values(tree, q, init_rng);

  Rng policy_rng(derive_seed(seed, {kTagPolicy}));
  Simulator s(sim);
  double total = 0.0;
  for (int e = 0; e < q.train_episodes; ++e) {
    s.reset(derive_seed(seed, {kTagEpisode, static_cast<std::uint64_t>(e)}));
    total += run_training_episode(tree, s, q, policy_rng).episode_return;
  }
  return total / q.train_episodes;
}

FitnessFn make_fitness_fn(const SimConfig& sim, const QConfig& q)
{
  return [sim, q](Individual& ind, std::uint64_t seed) { return fitness_of(ind, sim, q, seed); };
}

std::unique_ptr<Policy> make_policy(const std::string& name, const SimConfig& sim, const ScheduleParams& schedule)
{
  if (name == "fixture") {
    return std::make_unique<TreePolicy>(best_reported_tree(), "fixture");
  }
  const auto kind = baseline_from_name(name);
  if (!kind) {
    throw std::invalid_argument("unknown policy '" + name + "'");
  }
  return std::make_unique<BaselinePolicy>(*kind, sim.population_size, schedule);
}

std::vector<std::uint64_t> test_seeds(std::uint64_t master_seed, int episodes)
{
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(episodes));
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    seeds[i] = derive_seed(master_seed, {kTagTest, i});
  }
  return seeds;
}

const PolicySummary& ComparisonReport::policy(const std::string& name) const
{
  return policies.at(index_of(name));
}

std::size_t ComparisonReport::index_of(const std::string& name) const
{
  for (std::size_t i = 0; i < policies.size(); ++i) {
    if (policies[i].name == name) {
      return i;
    }
  }
  throw std::out_of_range("no policy named '" + name + "' in report");
}

namespace {

double panel_value(std::size_t panel, const DayRecord& r)
{
  switch (panel) {
    case 0: return r.cumulative_reward;
    case 1: return r.state.critical;
    case 2: return r.state.dead;
    case 3: return r.state.infected;
    case 4: return r.state.never_infected();
    default: return r.state.recovered;
  }
}

std::ofstream open_out(const std::filesystem::path& path)
{
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write '" + path.string() + "'");
  }
  return out;
}

}  // namespace

ComparisonReport compare(const std::vector<std::unique_ptr<Policy>>& policies, const SimConfig& sim,
                         const std::vector<std::uint64_t>& seeds, unsigned workers)
{
  if (policies.empty()) {
    throw std::invalid_argument("compare: no policies");
  }
  const std::size_t n_pol = policies.size();
  const std::size_t n_ep = seeds.size();
  std::vector<EpisodeResult> results(n_pol * n_ep);
  parallel_for(results.size(), workers, [&](std::size_t task) {
    const std::size_t p = task / n_ep;
    const std::size_t e = task % n_ep;
    auto policy = policies[p]->clone();
    results[task] = run_test_episode(*policy, sim, seeds[e]);
  });

  ComparisonReport report;
  report.seeds = seeds;
  const auto days = static_cast<std::size_t>(sim.episode_length);
  for (std::size_t p = 0; p < n_pol; ++p) {
    PolicySummary s;
    s.name = policies[p]->name();
    for (auto& panel : s.panels) {
      panel.assign(days, 0.0);
    }
    for (std::size_t e = 0; e < n_ep; ++e) {
      const EpisodeResult& r = results[p * n_ep + e];
      s.returns.push_back(r.episode_return);
      s.cumulative_infected.push_back(r.series.back().state.cumulative_infected);
      for (std::size_t d = 0; d < days; ++d) {
        for (std::size_t k = 0; k < s.panels.size(); ++k) {
          s.panels[k][d] += panel_value(k, r.series[d]);
        }
      }
    }
    for (auto& panel : s.panels) {
      for (auto& v : panel) {
        v /= static_cast<double>(n_ep);
      }
    }
    s.mean_return = mean(s.returns);
    s.std_return = stddev(s.returns);
    report.policies.push_back(std::move(s));
  }

  report.rank_sum.assign(n_pol, std::vector<TestResult>(n_pol));
  report.signed_rank.assign(n_pol, std::vector<TestResult>(n_pol));
  for (std::size_t a = 0; a < n_pol; ++a) {
    for (std::size_t b = 0; b < n_pol; ++b) {
      const auto& xa = report.policies[a].returns;
      const auto& xb = report.policies[b].returns;
      report.rank_sum[a][b] = xa.size() >= 5 ? wilcoxon_rank_sum(xa, xb) : rank_sum_exact(xa, xb);
      report.signed_rank[a][b] = wilcoxon_signed_rank(xa, xb);
    }
  }
  return report;
}

void write_report(const ComparisonReport& report, const std::filesystem::path& dir)
{
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < kPanelNames.size(); ++k) {
    auto out = open_out(dir / (std::string(kPanelNames[k]) + ".csv"));
    out << "day";
    for (const auto& p : report.policies) {
      out << ',' << p.name;
    }
    out << '\n';
    const std::size_t days = report.policies.front().panels[k].size();
    for (std::size_t d = 0; d < days; ++d) {
      out << d + 1;
      for (const auto& p : report.policies) {
        out << ',' << format_double(p.panels[k][d]);
      }
      out << '\n';
    }
  }

  auto episodes = open_out(dir / "episodes.csv");
  episodes << "policy,episode,seed,return,cumulative_infected\n";
  for (const auto& p : report.policies) {
    for (std::size_t e = 0; e < p.returns.size(); ++e) {
      episodes << p.name << ',' << e << ',' << report.seeds[e] << ',' << format_double(p.returns[e]) << ','
               << format_double(p.cumulative_infected[e]) << '\n';
    }
  }

  auto sig = open_out(dir / "significance.csv");
  sig << "policy_a,policy_b,mean_a,mean_b,rank_sum_p,rank_sum_method,signed_rank_p,signed_rank_method,significant\n";
  for (std::size_t a = 0; a < report.policies.size(); ++a) {
    for (std::size_t b = 0; b < report.policies.size(); ++b) {
      if (a == b) {
        continue;
      }
      const auto& rs = report.rank_sum[a][b];
      const auto& sr = report.signed_rank[a][b];
      sig << report.policies[a].name << ',' << report.policies[b].name << ','
          << format_double(report.policies[a].mean_return) << ',' << format_double(report.policies[b].mean_return)
          << ',' << format_double(rs.p) << ',' << rs.method << ',' << format_double(sr.p) << ',' << sr.method << ','
          << (rs.p < report.alpha ? "true" : "false") << '\n';
    }
  }
}

nlohmann::json generation_to_json(const GenerationRecord& rec)
{
  return {{"generation", rec.generation},
          {"best_fitness", rec.best_fitness},
          {"mean_fitness", rec.mean_fitness},
          {"replacements", rec.replacements},
          {"invalid", rec.invalid},
          {"champion_tree", rec.champion_tree},
          {"champion_eval_seed", rec.champion_eval_seed},
          {"champion_genotype", rec.champion_genotype.genes}};
}

RunSummary run_single_evolution(const ExperimentConfig& config, int run, const std::filesystem::path& dir)
{
  config.validate();
  EvolutionConfig evo = config.evolution;
  evo.master_seed = derive_seed(config.master_seed, {kTagRun, static_cast<std::uint64_t>(run)});

  const EvolutionResult result = evolve(evo, Grammar::decision_tree(), make_fitness_fn(config.sim, config.q));
  const Individual& best = result.best;

  RunSummary summary;
  summary.run = run;
  summary.seed = evo.master_seed;
  summary.train_mean_return = *best.fitness;
  if (best.tree) {
    summary.champion = *best.tree;
  }
  summary.interpretability = metric(summary.champion);

  const auto seeds = test_seeds(config.master_seed, config.test_episodes);
  TreePolicy policy(summary.champion, "champion");
  for (const auto seed : seeds) {
    summary.test_returns.push_back(run_test_episode(policy, config.sim, seed).episode_return);
  }
  summary.test_mean_return = mean(summary.test_returns);
  summary.test_std_return = stddev(summary.test_returns);

  if (!dir.empty()) {
    std::filesystem::create_directories(dir);
    auto log = open_out(dir / "evolution.jsonl");
    for (const auto& rec : result.log.generations) {
      log << generation_to_json(rec).dump() << '\n';
    }

    const auto& m = summary.interpretability;
    nlohmann::json champion = {
        {"run", run},
        {"run_seed", evo.master_seed},
        {"generation", best.generation},
        {"slot", best.slot},
        {"eval_seed", best.eval_seed},
        {"genotype", best.genotype.genes},
        {"tree", to_text(summary.champion)},
        {"tree_record", to_json(summary.champion)},
        {"train_fitness", summary.train_mean_return},
        {"evaluations", result.log.evaluations},
        {"interpretability", {{"ell", m.ell}, {"n_o", m.n_o}, {"n_nao", m.n_nao}, {"n_naoc", m.n_naoc}, {"M", m.M}}},
        {"test_seeds", seeds},
        {"test_returns", summary.test_returns},
        {"test_mean_return", summary.test_mean_return},
        {"test_std_return", summary.test_std_return},
        {"config", config_to_json(config)},
    };
    open_out(dir / "champion.json") << champion.dump(2) << '\n';
  }
  return summary;
}

std::vector<RunSummary> run_evolution_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                                 const std::function<void(const RunSummary&)>& on_run)
{
  std::filesystem::create_directories(out_dir);
  std::vector<RunSummary> runs;
  for (int r = 0; r < config.num_runs; ++r) {
    runs.push_back(run_single_evolution(config, r, out_dir / ("run_" + std::to_string(r))));
    if (on_run) {
      on_run(runs.back());
    }
  }
  auto out = open_out(out_dir / "summary.csv");
  out << "seed,train_mean_return,test_mean_return,test_std_return,M\n";
  for (const auto& r : runs) {
    out << r.run << ',' << format_double(r.train_mean_return) << ',' << format_double(r.test_mean_return) << ','
        << format_double(r.test_std_return) << ',' << format_double(r.interpretability.M) << '\n';
  }
  return runs;
}

}  // namespace gedt
