#pragma once

#include "gedt/policy.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gedt {

enum class BaselineKind : std::uint8_t { S0, S1, S2, S3, S4, S040, S040FI, S040GI, ITA, SWE };

/// "S0".."S4", "S0-4-0", "S0-4-0FI", "S0-4-0GI", "ITA", "SWE".
std::string_view baseline_name(BaselineKind kind);
std::optional<BaselineKind> baseline_from_name(std::string_view name);
std::vector<BaselineKind> all_baselines();

struct ScheduleParams {
  /// Lockdown fires once observed cumulative infected reaches this many people.
  int trigger_infected = 10;
  int lockdown_days = 30;
  int fi_step_days = 5;
  int gi_step_days = 10;
  int ita_ramp_days = 5;
  int ita_hold_days = 30;
  int ita_step_down_days = 10;
  int ita_floor_stage = 2;
  int swe_open_days = 3;

  bool operator==(const ScheduleParams&) const = default;
};

class BaselinePolicy final : public Policy {
 public:
  /// `population_size` converts the observed fraction i_g back to people.
  BaselinePolicy(BaselineKind kind, int population_size, ScheduleParams params = {});

  void begin_episode() override { trigger_day_.reset(); }
  Stage act(int day, const Observation& obs) override;
  [[nodiscard]] std::string name() const override { return std::string(baseline_name(kind_)); }
  [[nodiscard]] std::unique_ptr<Policy> clone() const override;

  [[nodiscard]] BaselineKind kind() const { return kind_; }
  [[nodiscard]] std::optional<int> trigger_day() const { return trigger_day_; }

 private:
  BaselineKind kind_;
  int population_size_;
  ScheduleParams params_;
  std::optional<int> trigger_day_;
};

/// Stage of a triggered schedule `since` days after the trigger.
Stage scheduled_stage(BaselineKind kind, int since, const ScheduleParams& params);

}  // namespace gedt
