#include "gedt/config.hpp"
#include "gedt/experiment.hpp"
#include "gedt/interpretability.hpp"
#include "gedt/tree.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace gedt;

namespace {

ExperimentConfig load_or_default(const std::string& path)
{
  return path.empty() ? ExperimentConfig{} : load_config(path);
}

// `spec` is "fixture", a JSON file (tree record or champion.json), a text file,
// or tree text.
DecisionTree load_tree(const std::string& spec)
{
  if (spec == "fixture") {
    return best_reported_tree();
  }
  if (fs::is_regular_file(spec)) {
    std::ifstream in(spec);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string body = buf.str();
    if (fs::path(spec).extension() == ".json") {
      const auto j = nlohmann::json::parse(body);
      return tree_from_json(j.contains("tree_record") ? j.at("tree_record") : j);
    }
    return from_text(body);
  }
  return from_text(spec);
}

void print_tree(const DecisionTree& tree)
{
  std::cout << "tree: " << to_text(tree) << '\n';
  for (const auto& leaf : tree.leaves()) {
    std::cout << "leaf#" << leaf.id << ": stage " << act_greedy(leaf).level() << "  q=[";
    for (std::size_t a = 0; a < leaf.q_values.size(); ++a) {
      std::cout << (a ? ", " : "") << format_double(leaf.q_values[a]);
    }
    std::cout << "]\n";
  }
  const auto m = metric(tree);
  std::cout << "conditions: " << tree.condition_count() << "  depth: " << tree.depth() << '\n'
            << "interpretability: ell=" << m.ell << " n_o=" << m.n_o << " n_nao=" << m.n_nao
            << " n_naoc=" << m.n_naoc << " M=" << format_double(m.M) << '\n';
}

}  // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Evolve and evaluate decision-tree lockdown policies"};
  app.require_subcommand(1);

  std::string config_path;
  std::uint64_t seed = 0;
  bool seed_given = false;

  auto* evolve_cmd = app.add_subcommand("evolve", "Run grammatical evolution with leaf Q-learning");
  std::string out_dir;
  int runs = 0;
  unsigned workers = 0;
  bool workers_given = false;
  evolve_cmd->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  evolve_cmd->add_option("--seed", seed, "Master seed (overrides config)")->each([&](const std::string&) {
    seed_given = true;
  });
  evolve_cmd->add_option("--out", out_dir, "Output directory (overrides config)");
  evolve_cmd->add_option("--runs", runs, "Number of independent runs (overrides config)")->check(CLI::PositiveNumber);
  evolve_cmd->add_option("--workers", workers, "Fitness threads, 0 = all cores")->each([&](const std::string&) {
    workers_given = true;
  });

  auto* eval_cmd = app.add_subcommand("eval", "Test a tree greedily");
  std::string tree_spec;
  int episodes = 10;
  bool train = false;
  std::string trajectory_csv;
  eval_cmd->add_option("--tree", tree_spec, "Tree file, tree text, or 'fixture'")->required();
  eval_cmd->add_option("--episodes", episodes, "Test episodes")->check(CLI::PositiveNumber);
  eval_cmd->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  eval_cmd->add_option("--seed", seed, "Master seed (overrides config)")->each([&](const std::string&) {
    seed_given = true;
  });
  eval_cmd->add_flag("--train", train, "Initialize and train leaf Q-values before testing");
  eval_cmd->add_option("--trajectory-csv", trajectory_csv, "Write the first test episode's daily series");

  auto* compare_cmd = app.add_subcommand("compare", "Compare policies on common random numbers");
  std::vector<std::string> policy_names;
  compare_cmd->add_option("--policies", policy_names, "Policy names (baselines or 'fixture')")->delimiter(',');
  compare_cmd->add_option("--episodes", episodes, "Episodes per policy")->check(CLI::PositiveNumber);
  compare_cmd->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  compare_cmd->add_option("--seed", seed, "Master seed (overrides config)")->each([&](const std::string&) {
    seed_given = true;
  });
  compare_cmd->add_option("--out", out_dir, "Directory for panel CSVs and significance matrix");

  auto* inspect_cmd = app.add_subcommand("inspect", "Print a tree, its greedy leaves and interpretability");
  inspect_cmd->add_option("--tree", tree_spec, "Tree file, tree text, or 'fixture'")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*inspect_cmd) {
      print_tree(load_tree(tree_spec));
      return 0;
    }

    ExperimentConfig config = load_or_default(config_path);
    if (seed_given) {
      config.master_seed = seed;
    }

    if (*evolve_cmd) {
      if (runs > 0) {
        config.num_runs = runs;
      }
      if (workers_given) {
        config.evolution.workers = workers;
      }
      const fs::path out = out_dir.empty() ? fs::path(config.output_dir) : fs::path(out_dir);
      std::cout << "run,train_mean_return,test_mean_return,test_std_return,M,tree\n";
      run_evolution_experiment(config, out, [](const RunSummary& r) {
        std::cout << r.run << ',' << format_double(r.train_mean_return) << ',' << format_double(r.test_mean_return)
                  << ',' << format_double(r.test_std_return) << ',' << format_double(r.interpretability.M) << ','
                  << to_text(r.champion) << std::endl;
      });
      std::cout << "results written to " << out.string() << '\n';
      return 0;
    }

    if (*eval_cmd) {
      Individual ind;
      ind.tree = load_tree(tree_spec);
      if (train) {
        const double f = fitness_of(ind, config.sim, config.q, derive_seed(config.master_seed, {kTagEvaluation}));
        std::cout << "train mean return: " << format_double(f) << '\n';
      }
      TreePolicy policy(*ind.tree);
      std::vector<double> returns;
      const auto seeds = test_seeds(config.master_seed, episodes);
      for (std::size_t e = 0; e < seeds.size(); ++e) {
        const auto result = run_test_episode(policy, config.sim, seeds[e]);
        returns.push_back(result.episode_return);
        if (e == 0 && !trajectory_csv.empty()) {
          std::ofstream csv(trajectory_csv);
          write_trajectory_csv(csv, result);
        }
      }
      print_tree(*ind.tree);
      std::cout << "test mean return: " << format_double(mean(returns)) << " +- " << format_double(stddev(returns))
                << " over " << returns.size() << " episodes\n";
      return 0;
    }

    if (*compare_cmd) {
      if (policy_names.empty()) {
        policy_names = config.policies;
      }
      std::vector<std::unique_ptr<Policy>> policies;
      for (const auto& name : policy_names) {
        policies.push_back(make_policy(name, config.sim, config.schedule));
      }
      const auto report = compare(policies, config.sim, test_seeds(config.master_seed, episodes));
      std::cout << "policy,mean_return,std_return,mean_cumulative_infected\n";
      for (const auto& p : report.policies) {
        std::cout << p.name << ',' << format_double(p.mean_return) << ',' << format_double(p.std_return) << ','
                  << format_double(mean(p.cumulative_infected)) << '\n';
      }
      if (!out_dir.empty()) {
        write_report(report, out_dir);
        std::cout << "report written to " << out_dir << '\n';
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
