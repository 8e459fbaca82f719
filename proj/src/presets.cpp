#include <array>

#include "gdpwage/simulator.hpp"

namespace gdpwage {
namespace {

// Shape of the wage structure relative to its floor, shared by all presets.
constexpr std::array<double, 10> kMultiples = {1.0, 1.25, 1.5, 2.0, 2.5,
                                               3.0, 4.0,  5.0, 7.0, 10.0};
constexpr std::array<double, 10> kMasses = {8, 9, 10, 12, 11, 10, 12, 10, 10, 8};

WageDistribution shaped_distribution(double floor) {
  std::vector<WageBin> bins;
  for (std::size_t i = 0; i < kMultiples.size(); ++i) {
    bins.push_back({floor * kMultiples[i], kMasses[i]});
  }
  return WageDistribution(std::move(bins));
}

ScenarioConfig us_economy() {
  ScenarioConfig c;
  const double floor = 7.25;
  c.initial.gdp_per_capita = 65120.0;
  c.initial.dist = shaped_distribution(floor);
  c.initial.hours_per_capita = 1050.0;
  c.initial.price_level = 1.0;
  c.initial.high_productivity_share = 0.30;
  c.initial.low_unit = {2.0, floor, 5.0};
  c.initial.high_unit = {0.5, 30.0, 12.0};
  c.passthrough_alpha = 0.75;
  return c;
}

}  // namespace

std::vector<std::string> preset_names() {
  return {"hungary", "us-baseline", "us-fixed-nominal", "gdpc-two-thirds"};
}

ScenarioConfig hungary_scenario() {
  ScenarioConfig c;
  // HUF; floor is the 2000 monthly minimum over a 2,080-hour year and
  // per-capita GDP is set so the floor starts at 0.406 of it.
  const double monthly_min = 25500.0;
  const double floor = monthly_min * 12.0 / kHoursPerYear;
  c.initial.gdp_per_capita = monthly_min * 12.0 / 0.406;
  c.initial.dist = shaped_distribution(floor);
  c.initial.hours_per_capita = 750.0;
  c.initial.high_productivity_share = 0.30;
  c.initial.low_unit = {2.0, floor, 100.0};
  c.initial.high_unit = {0.5, 1400.0, 300.0};
  c.rule = rule::Manual{{PolicyAction{PolicyAction::Kind::Ratio, 0.556},
                         PolicyAction{PolicyAction::Kind::Ratio, 0.606}}};
  c.real_growth_rate = 0.04;
  c.inflation_rate = 0.0;
  c.passthrough_alpha = 0.75;
  c.steps = 2;
  return c;
}

std::optional<ScenarioConfig> preset(const std::string& name) {
  if (name == "hungary") return hungary_scenario();
  if (name == "us-baseline") {
    auto c = us_economy();
    c.rule = rule::CpiIndexed{};
    c.real_growth_rate = 0.02;
    c.inflation_rate = 0.02;
    c.steps = 30;
    return c;
  }
  if (name == "us-fixed-nominal") {
    auto c = us_economy();
    c.rule = rule::FixedNominal{};
    c.real_growth_rate = 0.02;
    c.inflation_rate = 0.0;
    c.steps = 30;
    return c;
  }
  if (name == "gdpc-two-thirds") {
    auto c = us_economy();
    c.rule = rule::GdpcIndexed{2.0 / 3.0};
    c.real_growth_rate = 0.02;
    c.inflation_rate = 0.02;
    c.steps = 100;
    return c;
  }
  return std::nullopt;
}

}  // namespace gdpwage
