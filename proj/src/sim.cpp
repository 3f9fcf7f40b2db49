#include "gedt/sim.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace gedt {

namespace {

constexpr std::array<std::string_view, kNumFeatures> kFeatureNames{
    "i_g", "r_g", "c_g", "d_g", "n_g", "i_d", "r_d", "c_d", "d_d", "n_d", "l", "h"};

int draw_binomial(Rng& rng, int n, double p)
{
  if (n <= 0 || p <= 0.0) {
    return 0;
  }
  if (p >= 1.0) {
    return n;
  }
  return std::binomial_distribution<int>(n, p)(rng);
}

void require(bool ok, const char* what)
{
  if (!ok) {
    throw ConfigError(std::string("invalid SimConfig: ") + what);
  }
}

bool is_probability(double p) { return p >= 0.0 && p <= 1.0; }

}  // namespace

std::string_view feature_name(Feature f) { return kFeatureNames[static_cast<std::size_t>(f)]; }

std::optional<Feature> feature_from_name(std::string_view name)
{
  for (std::size_t i = 0; i < kFeatureNames.size(); ++i) {
    if (kFeatureNames[i] == name) {
      return static_cast<Feature>(i);
    }
  }
  return std::nullopt;
}

void SimConfig::validate() const
{
  require(population_size >= 1, "population_size >= 1");
  require(initial_infected >= 0 && initial_infected <= population_size,
          "0 <= initial_infected <= population_size");
  require(hospital_capacity >= 1, "hospital_capacity >= 1");
  require(episode_length >= 1, "episode_length >= 1");
  for (std::size_t s = 0; s < stage_transmission_multiplier.size(); ++s) {
    require(is_probability(stage_transmission_multiplier[s]), "stage_transmission_multiplier in [0,1]");
    if (s > 0) {
      require(stage_transmission_multiplier[s] <= stage_transmission_multiplier[s - 1],
              "stage_transmission_multiplier non-increasing in stage index");
    }
  }
  require(std::isfinite(base_daily_infection_rate) && base_daily_infection_rate >= 0.0,
          "base_daily_infection_rate >= 0");
  require(is_probability(p_critical), "p_critical in [0,1]");
  require(is_probability(p_death), "p_death in [0,1]");
  require(is_probability(p_death_saturated), "p_death_saturated in [0,1]");
  require(p_death_saturated >= p_death, "p_death_saturated >= p_death");
  require(mean_infectious_days >= 1.0, "mean_infectious_days >= 1");
  require(mean_critical_days >= 1.0, "mean_critical_days >= 1");
  require(detection_probability > 0.0 && detection_probability <= 1.0, "detection_probability in (0,1]");
}

double reward_of(double critical_true, int capacity, int level)
{
  const double c = static_cast<double>(capacity);
  const double overload = std::max((critical_true - c) / c, 0.0);
  return -0.4 * overload - 0.1 * std::pow(static_cast<double>(level), 1.5) / std::pow(5.0, 1.5);
}

Observation observe(const SimState& state, const SimConfig& config, Rng& rng)
{
  const double n = static_cast<double>(config.population_size);
  const double p = config.detection_probability;
  auto thin = [&](int count) { return draw_binomial(rng, count, p); };

  Observation obs;
  const int known_infected = thin(state.cumulative_infected);
  obs[Feature::i_g] = known_infected / n;
  obs[Feature::r_g] = thin(state.cumulative_recovered) / n;
  obs[Feature::c_g] = thin(state.cumulative_critical) / n;
  obs[Feature::d_g] = state.cumulative_dead / n;
  // Never-infected is what the testing summary cannot rule out.
  obs[Feature::n_g] = (config.population_size - known_infected) / n;
  obs[Feature::i_d] = thin(state.daily_infected) / n;
  obs[Feature::r_d] = thin(state.daily_recovered) / n;
  obs[Feature::c_d] = thin(state.critical) / n;
  obs[Feature::d_d] = state.daily_dead / n;
  obs[Feature::n_d] = obs[Feature::n_g];
  obs[Feature::l] = state.current_stage.level() / 4.0;
  obs[Feature::h] = state.critical > config.hospital_capacity ? 1.0 : 0.0;
  return obs;
}

ResetResult reset(const SimConfig& config, std::uint64_t episode_seed, Rng* rng)
{
  config.validate();
  Rng local;
  Rng& r = rng != nullptr ? *rng : local;
  r.seed(derive_seed(config.seed, {kTagEpisode, episode_seed}));

  ResetResult out;
  SimState& s = out.state;
  s.infected = config.initial_infected;
  s.susceptible = config.population_size - config.initial_infected;
  s.cumulative_infected = config.initial_infected;
  out.observation = observe(s, config, r);
  return out;
}

StepOutcome step(const SimConfig& config, const SimState& state, Stage action, Rng& rng)
{
  if (state.day >= config.episode_length) {
    throw ContractViolation("step() called after the episode finished (day " +
                            std::to_string(state.day) + ")");
  }

  SimState next = state;
  next.current_stage = action;

  const double n = static_cast<double>(config.population_size);
  const double multiplier = config.stage_transmission_multiplier[static_cast<std::size_t>(action.level())];
  const double p_infect = 1.0 - std::exp(-config.base_daily_infection_rate * multiplier * state.infected / n);
  const bool saturated = state.critical > config.hospital_capacity;

  const int new_infected = draw_binomial(rng, state.susceptible, p_infect);
  const int to_critical = draw_binomial(rng, state.infected, config.p_critical);
  const int infected_recovered =
      draw_binomial(rng, state.infected - to_critical, 1.0 / config.mean_infectious_days);
  const int deaths =
      draw_binomial(rng, state.critical, saturated ? config.p_death_saturated : config.p_death);
  const int critical_recovered =
      draw_binomial(rng, state.critical - deaths, 1.0 / config.mean_critical_days);

  next.susceptible -= new_infected;
  next.infected += new_infected - to_critical - infected_recovered;
  next.critical += to_critical - deaths - critical_recovered;
  next.dead += deaths;
  next.recovered += infected_recovered + critical_recovered;

  next.cumulative_infected += new_infected;
  next.cumulative_critical += to_critical;
  next.cumulative_dead += deaths;
  next.cumulative_recovered += infected_recovered + critical_recovered;
  next.daily_infected = new_infected;
  next.daily_recovered = infected_recovered + critical_recovered;
  next.daily_dead = deaths;
  next.day = state.day + 1;

  StepOutcome out;
  out.reward = reward_of(next.critical, config.hospital_capacity, action.level());
  out.done = next.day == config.episode_length;
  out.observation = observe(next, config, rng);
  out.true_state_snapshot = std::move(next);
  return out;
}

Simulator::Simulator(SimConfig config) : config_(std::move(config)) { config_.validate(); }

const Observation& Simulator::reset(std::uint64_t episode_seed)
{
  auto r = gedt::reset(config_, episode_seed, &rng_);
  state_ = r.state;
  observation_ = r.observation;
  ready_ = true;
  return observation_;
}

StepOutcome Simulator::step(Stage action)
{
  if (!ready_) {
    throw ContractViolation("Simulator::step() before reset()");
  }
  StepOutcome out = gedt::step(config_, state_, action, rng_);
  state_ = out.true_state_snapshot;
  observation_ = out.observation;
  return out;
}

}  // namespace gedt
