#include "gedt/baselines.hpp"

#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace gedt {

namespace {

constexpr std::array<std::pair<BaselineKind, std::string_view>, 10> kNames{{
    {BaselineKind::S0, "S0"},
    {BaselineKind::S1, "S1"},
    {BaselineKind::S2, "S2"},
    {BaselineKind::S3, "S3"},
    {BaselineKind::S4, "S4"},
    {BaselineKind::S040, "S0-4-0"},
    {BaselineKind::S040FI, "S0-4-0FI"},
    {BaselineKind::S040GI, "S0-4-0GI"},
    {BaselineKind::ITA, "ITA"},
    {BaselineKind::SWE, "SWE"},
}};

bool is_triggered(BaselineKind k)
{
  return k == BaselineKind::S040 || k == BaselineKind::S040FI || k == BaselineKind::S040GI ||
         k == BaselineKind::ITA;
}

// Lockdown at 4, then one stage down every `step` days to 0.
Stage step_down(int since, int lockdown, int step)
{
  if (since < lockdown) {
    return Stage(4);
  }
  return Stage(std::max(0, 3 - (since - lockdown) / step));
}

}  // namespace

std::string_view baseline_name(BaselineKind kind)
{
  for (const auto& [k, n] : kNames) {
    if (k == kind) {
      return n;
    }
  }
  throw std::out_of_range("unknown baseline kind");
}

std::optional<BaselineKind> baseline_from_name(std::string_view name)
{
  for (const auto& [k, n] : kNames) {
    if (n == name) {
      return k;
    }
  }
  return std::nullopt;
}

std::vector<BaselineKind> all_baselines()
{
  std::vector<BaselineKind> out;
  for (const auto& entry : kNames) {
    out.push_back(entry.first);
  }
  return out;
}

Stage scheduled_stage(BaselineKind kind, int since, const ScheduleParams& p)
{
  switch (kind) {
    case BaselineKind::S040:
      return since < p.lockdown_days ? Stage(4) : Stage(0);
    case BaselineKind::S040FI:
      return step_down(since, p.lockdown_days, p.fi_step_days);
    case BaselineKind::S040GI:
      return step_down(since, p.lockdown_days, p.gi_step_days);
    case BaselineKind::ITA: {
      // Stages 1, 2, 3 for ita_ramp_days each, then 4 for ita_hold_days.
      const int ramp = 3 * p.ita_ramp_days;
      if (since < ramp) {
        return Stage(1 + since / p.ita_ramp_days);
      }
      const int hold_end = ramp + p.ita_hold_days;
      if (since < hold_end) {
        return Stage(4);
      }
      return Stage(std::max(p.ita_floor_stage, 3 - (since - hold_end) / p.ita_step_down_days));
    }
    default:
      throw std::invalid_argument("scheduled_stage: not a triggered baseline");
  }
}

BaselinePolicy::BaselinePolicy(BaselineKind kind, int population_size, ScheduleParams params)
    : kind_(kind), population_size_(population_size), params_(params)
{
  if (population_size <= 0) {
    throw ConfigError("BaselinePolicy: population_size must be positive");
  }
}

Stage BaselinePolicy::act(int day, const Observation& obs)
{
  switch (kind_) {
    case BaselineKind::S0:
    case BaselineKind::S1:
    case BaselineKind::S2:
    case BaselineKind::S3:
    case BaselineKind::S4:
      return Stage(static_cast<int>(kind_) - static_cast<int>(BaselineKind::S0));
    case BaselineKind::SWE:
      return day < params_.swe_open_days ? Stage(0) : Stage(1);
    default:
      break;
  }
  if (is_triggered(kind_) && !trigger_day_) {
    const long observed = std::lround(obs[Feature::i_g] * population_size_);
    if (observed >= params_.trigger_infected) {
      trigger_day_ = day;
    }
  }
  if (!trigger_day_) {
    return Stage(0);
  }
  return scheduled_stage(kind_, day - *trigger_day_, params_);
}

std::unique_ptr<Policy> BaselinePolicy::clone() const
{
  auto copy = std::make_unique<BaselinePolicy>(*this);
  copy->begin_episode();
  return copy;
}

}  // namespace gedt
