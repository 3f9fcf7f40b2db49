#include "gedt/config.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>

using namespace gedt;

TEST_CASE("empty document gives defaults")
{
  const auto c = config_from_json(nlohmann::json::object());
  CHECK(c.sim == SimConfig{});
  CHECK(c.evolution == EvolutionConfig{});
  CHECK(c.q == QConfig{});
  CHECK(c.num_runs == 10);
  CHECK(c.test_episodes == 10);
}

TEST_CASE("parameters are read under their published names")
{
  const auto j = nlohmann::json::parse(R"({
    "evolution": {"population_size": 16, "generations": 10, "M": 100, "mutation_rate": 0.2, "tournament_size": 3},
    "q_learning": {"alpha": 0.01, "epsilon": 0.1, "train_episodes": 3},
    "sim": {"hospital_capacity": 20, "stage_transmission_multiplier": [1, 0.8, 0.6, 0.4, 0.2]},
    "schedule": {"ita_ramp_days": 7},
    "experiment": {"num_runs": 2, "master_seed": 9, "policies": ["S0", "fixture"]}
  })");
  const auto c = config_from_json(j);
  CHECK(c.evolution.population_size == 16);
  CHECK(c.evolution.generations == 10);
  CHECK(c.evolution.max_gene == 100);
  CHECK(c.evolution.mutation_rate == 0.2);
  CHECK(c.evolution.tournament_size == 3);
  CHECK(c.q.alpha == 0.01);
  CHECK(c.q.epsilon == 0.1);
  CHECK(c.q.train_episodes == 3);
  CHECK(c.sim.hospital_capacity == 20);
  CHECK(c.sim.stage_transmission_multiplier[4] == 0.2);
  CHECK(c.schedule.ita_ramp_days == 7);
  CHECK(c.num_runs == 2);
  CHECK(c.master_seed == 9u);
  CHECK(c.policies == std::vector<std::string>{"S0", "fixture"});
}

TEST_CASE("round trip through json")
{
  auto c = config_from_json(nlohmann::json::object());
  c.sim.base_daily_infection_rate = 0.45;
  c.q.gamma = 0.9;
  c.evolution.max_wraps = 2;
  const auto back = config_from_json(config_to_json(c));
  CHECK(back.sim == c.sim);
  CHECK(back.q == c.q);
  CHECK(back.evolution == c.evolution);
  CHECK(back.schedule == c.schedule);
}

TEST_CASE("unknown keys and bad values are rejected")
{
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"simulation": {}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"sim": {"beta": 0.3}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"q_learning": {"alpha": "fast"}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"q_learning": {"alpha": 2.0}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"experiment": {"num_runs": 0}})")), ConfigError);
  CHECK_THROWS_AS(config_from_json(nlohmann::json::parse(R"({"experiment": {"policies": ["S9"]}})")), ConfigError);
}

TEST_CASE("load_config reads files and reports missing ones")
{
  const auto path = std::filesystem::temp_directory_path() / "gedt_config_test.json";
  {
    std::ofstream out(path);
    out << R"({"experiment": {"test_episodes": 4}})";
  }
  CHECK(load_config(path).test_episodes == 4);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_config(path), ConfigError);
}
