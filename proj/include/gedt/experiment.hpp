#pragma once

#include "gedt/config.hpp"
#include "gedt/evolution.hpp"
#include "gedt/interpretability.hpp"
#include "gedt/policy.hpp"
#include "gedt/stats.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace gedt {

struct DayRecord {
  int day = 0;
  Stage stage;
  double reward = 0.0;
  double cumulative_reward = 0.0;
  /// True state after the day's transitions.
  SimState state;
  /// What the policy saw when it chose `stage`.
  Observation observation;
};

struct EpisodeResult {
  double episode_return = 0.0;
  std::vector<DayRecord> series;
};

/// One greedy episode (no learning). `policy.begin_episode()` is called first.
EpisodeResult run_test_episode(Policy& policy, const SimConfig& sim, std::uint64_t episode_seed);

/// Header plus one row per day.
void write_trajectory_csv(std::ostream& out, const EpisodeResult& episode);

/// Initializes leaf Q-values, then trains the individual's tree for
/// q.train_episodes sequential episodes. Returns the mean training return,
/// or kInvalidFitness when the individual has no tree.
double fitness_of(Individual& individual, const SimConfig& sim, const QConfig& q, std::uint64_t seed);

FitnessFn make_fitness_fn(const SimConfig& sim, const QConfig& q);

/// "fixture" or a baseline name.
std::unique_ptr<Policy> make_policy(const std::string& name, const SimConfig& sim, const ScheduleParams& schedule);

/// Test-episode seeds shared by every policy under comparison.
std::vector<std::uint64_t> test_seeds(std::uint64_t master_seed, int episodes);

inline constexpr std::array<const char*, 6> kPanelNames{"cumulative_reward", "critical", "dead",
                                                        "infected", "never_infected", "recovered"};

struct PolicySummary {
  std::string name;
  std::vector<double> returns;
  std::vector<double> cumulative_infected;
  double mean_return = 0.0;
  double std_return = 0.0;
  /// panels[p][d]: mean over episodes of panel p on day d+1.
  std::array<std::vector<double>, kPanelNames.size()> panels;
};

struct ComparisonReport {
  std::vector<std::uint64_t> seeds;
  std::vector<PolicySummary> policies;
  /// Rank-sum p-values, policies x policies.
  std::vector<std::vector<TestResult>> rank_sum;
  /// Signed-rank p-values on the common-random-number pairs.
  std::vector<std::vector<TestResult>> signed_rank;
  double alpha = 0.05;

  [[nodiscard]] const PolicySummary& policy(const std::string& name) const;
  [[nodiscard]] std::size_t index_of(const std::string& name) const;
};

/// Runs every policy on the same episode seeds. Policies are cloned per task.
ComparisonReport compare(const std::vector<std::unique_ptr<Policy>>& policies, const SimConfig& sim,
                         const std::vector<std::uint64_t>& seeds, unsigned workers = 0);

/// Panel CSVs (one per panel), episodes.csv and significance.csv.
void write_report(const ComparisonReport& report, const std::filesystem::path& dir);

struct RunSummary {
  int run = 0;
  std::uint64_t seed = 0;
  double train_mean_return = 0.0;
  double test_mean_return = 0.0;
  double test_std_return = 0.0;
  InterpretabilityReport interpretability;
  DecisionTree champion;
  std::vector<double> test_returns;
};

/// One evolution run plus greedy testing of its champion. Writes
/// evolution.jsonl and champion.json into `dir` when it is non-empty.
RunSummary run_single_evolution(const ExperimentConfig& config, int run, const std::filesystem::path& dir);

/// All config.num_runs runs, each under out_dir/run_<k>, plus summary.csv.
std::vector<RunSummary> run_evolution_experiment(const ExperimentConfig& config, const std::filesystem::path& out_dir,
                                                 const std::function<void(const RunSummary&)>& on_run = {});

nlohmann::json generation_to_json(const GenerationRecord& rec);

}  // namespace gedt
