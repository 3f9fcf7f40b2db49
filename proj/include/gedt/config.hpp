#pragma once

#include "gedt/baselines.hpp"
#include "gedt/evolution.hpp"
#include "gedt/leaf_q.hpp"
#include "gedt/sim.hpp"

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace gedt {

struct ExperimentConfig {
  SimConfig sim;
  EvolutionConfig evolution;
  QConfig q;
  ScheduleParams schedule;
  int num_runs = 10;
  int test_episodes = 10;
  std::uint64_t master_seed = 0;
  std::string output_dir = "results";
  /// Policies for `compare`: baseline names or "fixture".
  std::vector<std::string> policies{"fixture", "S0", "S1", "S2", "S3", "S4",
                                    "S0-4-0", "S0-4-0FI", "S0-4-0GI", "ITA", "SWE"};

  void validate() const;
};

/// Sections "sim", "evolution", "q_learning", "schedule", "experiment". Every
/// key is optional; unknown keys are rejected with ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& c);
ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace gedt
