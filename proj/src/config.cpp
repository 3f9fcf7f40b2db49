#include "gedt/config.hpp"

#include <fstream>
#include <set>

namespace gedt {

namespace {

void reject_unknown(const nlohmann::json& section, const std::string& name, const std::set<std::string>& known)
{
  if (!section.is_object()) {
    throw ConfigError("config section '" + name + "' must be an object");
  }
  for (const auto& [key, value] : section.items()) {
    if (!known.contains(key)) {
      throw ConfigError("unknown key '" + name + "." + key + "'");
    }
  }
}

template <typename T>
void read(const nlohmann::json& section, const std::string& section_name, const char* key, T& out)
{
  if (!section.contains(key)) {
    return;
  }
  try {
    out = section.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("bad value for '" + section_name + "." + key + "': " + e.what());
  }
}

const nlohmann::json& section_of(const nlohmann::json& j, const char* name)
{
  static const nlohmann::json empty = nlohmann::json::object();
  return j.contains(name) ? j.at(name) : empty;
}

}  // namespace

void ExperimentConfig::validate() const
{
  sim.validate();
  evolution.validate();
  q.validate();
  if (num_runs < 1) {
    throw ConfigError("invalid ExperimentConfig: num_runs >= 1");
  }
  if (test_episodes < 1) {
    throw ConfigError("invalid ExperimentConfig: test_episodes >= 1");
  }
  for (const auto& p : policies) {
    if (p != "fixture" && !baseline_from_name(p)) {
      throw ConfigError("invalid ExperimentConfig: unknown policy '" + p + "'");
    }
  }
}

ExperimentConfig config_from_json(const nlohmann::json& j)
{
  reject_unknown(j, "<root>", {"sim", "evolution", "q_learning", "schedule", "experiment"});
  ExperimentConfig c;

  const auto& s = section_of(j, "sim");
  reject_unknown(s, "sim",
                 {"population_size", "initial_infected", "hospital_capacity", "episode_length",
                  "stage_transmission_multiplier", "base_daily_infection_rate", "p_critical", "p_death",
                  "p_death_saturated", "mean_infectious_days", "mean_critical_days", "detection_probability",
                  "seed"});
  read(s, "sim", "population_size", c.sim.population_size);
  read(s, "sim", "initial_infected", c.sim.initial_infected);
  read(s, "sim", "hospital_capacity", c.sim.hospital_capacity);
  read(s, "sim", "episode_length", c.sim.episode_length);
  read(s, "sim", "stage_transmission_multiplier", c.sim.stage_transmission_multiplier);
  read(s, "sim", "base_daily_infection_rate", c.sim.base_daily_infection_rate);
  read(s, "sim", "p_critical", c.sim.p_critical);
  read(s, "sim", "p_death", c.sim.p_death);
  read(s, "sim", "p_death_saturated", c.sim.p_death_saturated);
  read(s, "sim", "mean_infectious_days", c.sim.mean_infectious_days);
  read(s, "sim", "mean_critical_days", c.sim.mean_critical_days);
  read(s, "sim", "detection_probability", c.sim.detection_probability);
  read(s, "sim", "seed", c.sim.seed);

  const auto& e = section_of(j, "evolution");
  reject_unknown(e, "evolution",
                 {"population_size", "generations", "tournament_size", "mutation_probability", "mutation_rate",
                  "genotype_length", "M", "max_wraps", "workers"});
  read(e, "evolution", "population_size", c.evolution.population_size);
  read(e, "evolution", "generations", c.evolution.generations);
  read(e, "evolution", "tournament_size", c.evolution.tournament_size);
  read(e, "evolution", "mutation_probability", c.evolution.mutation_probability);
  read(e, "evolution", "mutation_rate", c.evolution.mutation_rate);
  read(e, "evolution", "genotype_length", c.evolution.genotype_length);
  read(e, "evolution", "M", c.evolution.max_gene);
  read(e, "evolution", "max_wraps", c.evolution.max_wraps);
  read(e, "evolution", "workers", c.evolution.workers);

  const auto& q = section_of(j, "q_learning");
  reject_unknown(q, "q_learning", {"alpha", "epsilon", "gamma", "q_init_low", "q_init_high", "train_episodes"});
  read(q, "q_learning", "alpha", c.q.alpha);
  read(q, "q_learning", "epsilon", c.q.epsilon);
  read(q, "q_learning", "gamma", c.q.gamma);
  read(q, "q_learning", "q_init_low", c.q.q_init_low);
  read(q, "q_learning", "q_init_high", c.q.q_init_high);
  read(q, "q_learning", "train_episodes", c.q.train_episodes);

  const auto& sc = section_of(j, "schedule");
  reject_unknown(sc, "schedule",
                 {"trigger_infected", "lockdown_days", "fi_step_days", "gi_step_days", "ita_ramp_days",
                  "ita_hold_days", "ita_step_down_days", "ita_floor_stage", "swe_open_days"});
  read(sc, "schedule", "trigger_infected", c.schedule.trigger_infected);
  read(sc, "schedule", "lockdown_days", c.schedule.lockdown_days);
  read(sc, "schedule", "fi_step_days", c.schedule.fi_step_days);
  read(sc, "schedule", "gi_step_days", c.schedule.gi_step_days);
  read(sc, "schedule", "ita_ramp_days", c.schedule.ita_ramp_days);
  read(sc, "schedule", "ita_hold_days", c.schedule.ita_hold_days);
  read(sc, "schedule", "ita_step_down_days", c.schedule.ita_step_down_days);
  read(sc, "schedule", "ita_floor_stage", c.schedule.ita_floor_stage);
  read(sc, "schedule", "swe_open_days", c.schedule.swe_open_days);

  const auto& x = section_of(j, "experiment");
  reject_unknown(x, "experiment", {"num_runs", "test_episodes", "master_seed", "output_dir", "policies"});
  read(x, "experiment", "num_runs", c.num_runs);
  read(x, "experiment", "test_episodes", c.test_episodes);
  read(x, "experiment", "master_seed", c.master_seed);
  read(x, "experiment", "output_dir", c.output_dir);
  read(x, "experiment", "policies", c.policies);

  c.validate();
  return c;
}

nlohmann::json config_to_json(const ExperimentConfig& c)
{
  return {
      {"sim",
       {{"population_size", c.sim.population_size},
        {"initial_infected", c.sim.initial_infected},
        {"hospital_capacity", c.sim.hospital_capacity},
        {"episode_length", c.sim.episode_length},
        {"stage_transmission_multiplier", c.sim.stage_transmission_multiplier},
        {"base_daily_infection_rate", c.sim.base_daily_infection_rate},
        {"p_critical", c.sim.p_critical},
        {"p_death", c.sim.p_death},
        {"p_death_saturated", c.sim.p_death_saturated},
        {"mean_infectious_days", c.sim.mean_infectious_days},
        {"mean_critical_days", c.sim.mean_critical_days},
        {"detection_probability", c.sim.detection_probability},
        {"seed", c.sim.seed}}},
      {"evolution",
       {{"population_size", c.evolution.population_size},
        {"generations", c.evolution.generations},
        {"tournament_size", c.evolution.tournament_size},
        {"mutation_probability", c.evolution.mutation_probability},
        {"mutation_rate", c.evolution.mutation_rate},
        {"genotype_length", c.evolution.genotype_length},
        {"M", c.evolution.max_gene},
        {"max_wraps", c.evolution.max_wraps},
        {"workers", c.evolution.workers}}},
      {"q_learning",
       {{"alpha", c.q.alpha},
        {"epsilon", c.q.epsilon},
        {"gamma", c.q.gamma},
        {"q_init_low", c.q.q_init_low},
        {"q_init_high", c.q.q_init_high},
        {"train_episodes", c.q.train_episodes}}},
      {"schedule",
       {{"trigger_infected", c.schedule.trigger_infected},
        {"lockdown_days", c.schedule.lockdown_days},
        {"fi_step_days", c.schedule.fi_step_days},
        {"gi_step_days", c.schedule.gi_step_days},
        {"ita_ramp_days", c.schedule.ita_ramp_days},
        {"ita_hold_days", c.schedule.ita_hold_days},
        {"ita_step_down_days", c.schedule.ita_step_down_days},
        {"ita_floor_stage", c.schedule.ita_floor_stage},
        {"swe_open_days", c.schedule.swe_open_days}}},
      {"experiment",
       {{"num_runs", c.num_runs},
        {"test_episodes", c.test_episodes},
        {"master_seed", c.master_seed},
        {"output_dir", c.output_dir},
        {"policies", c.policies}}},
  };
}

ExperimentConfig load_config(const std::filesystem::path& path)
{
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path.string() + "'");
  }
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path.string() + "' is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

}  // namespace gedt
