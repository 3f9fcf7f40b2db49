#pragma once

#include "gedt/util.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gedt {

inline constexpr int kNumStages = 5;
inline constexpr int kNumFeatures = 12;

/// Restriction level 0 (no restrictions) .. 4 (offices and retail closed).
class Stage {
 public:
  constexpr Stage() = default;
  constexpr explicit Stage(int level) : level_(level)
  {
    if (level < 0 || level >= kNumStages) {
      throw std::out_of_range("stage level must be in 0..4, got " + std::to_string(level));
    }
  }

  [[nodiscard]] constexpr int level() const { return level_; }
  constexpr auto operator<=>(const Stage&) const = default;

 private:
  int level_ = 0;
};

/// Observation features in their fixed order. Indices are part of the tree
/// text format and the grammar's input_var rule.
enum class Feature : std::uint8_t { i_g, r_g, c_g, d_g, n_g, i_d, r_d, c_d, d_d, n_d, l, h };

std::string_view feature_name(Feature f);
std::optional<Feature> feature_from_name(std::string_view name);

constexpr int feature_index(Feature f) { return static_cast<int>(f); }

struct Observation {
  std::array<double, kNumFeatures> values{};

  double operator[](Feature f) const { return values[static_cast<std::size_t>(f)]; }
  double& operator[](Feature f) { return values[static_cast<std::size_t>(f)]; }
  bool operator==(const Observation&) const = default;
};

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct SimConfig {
  int population_size = 1000;
  int initial_infected = 2;
  int hospital_capacity = 10;
  int episode_length = 100;
  std::array<double, kNumStages> stage_transmission_multiplier{1.0, 0.7, 0.45, 0.25, 0.1};
  double base_daily_infection_rate = 0.6;
  double p_critical = 0.02;
  double p_death = 0.05;
  double p_death_saturated = 0.15;
  double mean_infectious_days = 10.0;
  double mean_critical_days = 8.0;
  double detection_probability = 0.2;
  std::uint64_t seed = 0;

  /// Throws ConfigError naming the first violated invariant.
  void validate() const;
  bool operator==(const SimConfig&) const = default;
};

/// True (un-noised) population state. Policies never see this directly.
struct SimState {
  int day = 0;
  int susceptible = 0;
  int infected = 0;
  int critical = 0;
  int dead = 0;
  int recovered = 0;
  int cumulative_infected = 0;
  int cumulative_critical = 0;
  int cumulative_dead = 0;
  int cumulative_recovered = 0;
  Stage current_stage{};
  int daily_infected = 0;
  int daily_recovered = 0;
  int daily_dead = 0;

  [[nodiscard]] int total() const { return susceptible + infected + critical + dead + recovered; }
  /// People who have never contracted the virus.
  [[nodiscard]] int never_infected() const { return susceptible; }
  bool operator==(const SimState&) const = default;
};

struct StepOutcome {
  Observation observation;
  double reward = 0.0;
  bool done = false;
  SimState true_state_snapshot;
};

/// -0.4 * max((c_d - C) / C, 0) - 0.1 * l^1.5 / 5^1.5
double reward_of(double critical_true, int capacity, int level);

/// Day-0 state for `config`. The episode stream is seeded from
/// (config.seed, episode_seed); if `rng` is given it is reseeded and left
/// positioned for the rest of the episode.
struct ResetResult {
  SimState state;
  Observation observation;
};
ResetResult reset(const SimConfig& config, std::uint64_t episode_seed, Rng* rng = nullptr);

Observation observe(const SimState& state, const SimConfig& config, Rng& rng);

/// Advances one day. Throws ContractViolation once the episode is over.
StepOutcome step(const SimConfig& config, const SimState& state, Stage action, Rng& rng);

/// Owning wrapper: one config, one state, one RNG stream.
class Simulator {
 public:
  explicit Simulator(SimConfig config);

  const Observation& reset(std::uint64_t episode_seed);
  StepOutcome step(Stage action);

  [[nodiscard]] const SimConfig& config() const { return config_; }
  [[nodiscard]] const SimState& state() const { return state_; }
  [[nodiscard]] const Observation& observation() const { return observation_; }
  [[nodiscard]] bool done() const { return state_.day >= config_.episode_length; }

 private:
  SimConfig config_;
  SimState state_;
  Observation observation_;
  Rng rng_;
  bool ready_ = false;
};

}  // namespace gedt
