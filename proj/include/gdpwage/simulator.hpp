#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "gdpwage/core_model.hpp"

namespace gdpwage {

/// Upward step in the high-productivity share for each year spent on the
/// high-cheaper side of the horizon.
inline constexpr double kProductivityShareStep = 0.01;

struct EconomyState {
  int t = 0;
  double gdp_per_capita = 1.0;
  WageDistribution dist{{{1.0, 1.0}}};
  double hours_per_capita = 1.0;
  double price_level = 1.0;
  double high_productivity_share = 0.0;
  double gini_proxy = 0.0;
  double labor_share = 0.0;
  // Horizon calibration. The low unit's wage follows the floor; the high
  // unit sheds labor hours at the real growth rate and its wage follows
  // nominal per-capita GDP.
  TransformUnit low_unit;
  TransformUnit high_unit;
};

/// A single regulatory decision for the next year's floor.
struct PolicyAction {
  enum class Kind { Ratio, Floor };
  Kind kind = Kind::Ratio;
  double value = 0.0;

  friend bool operator==(const PolicyAction&, const PolicyAction&) = default;
};

namespace rule {
struct FixedNominal {};
struct CpiIndexed {};
struct KaitzIndexed {
  Ratio target = 0.5;
};
struct GdpcIndexed {
  Ratio target = 2.0 / 3.0;
};
struct GdpcRamp {
  Ratio target = 2.0 / 3.0;
  Ratio annual_increment = 0.025;
};
/// Floors supplied from outside; schedule[t] drives step t -> t + 1 and an
/// empty slot holds the nominal floor.
struct Manual {
  std::vector<std::optional<PolicyAction>> schedule;
};
}  // namespace rule

using PolicyRule = std::variant<rule::FixedNominal, rule::CpiIndexed, rule::KaitzIndexed,
                                rule::GdpcIndexed, rule::GdpcRamp, rule::Manual>;

std::string rule_name(const PolicyRule& rule);

struct ScenarioConfig {
  EconomyState initial;
  PolicyRule rule = rule::FixedNominal{};
  double real_growth_rate = 0.02;
  double inflation_rate = 0.0;
  CompressionParams compression;
  CompensationBreakdown breakdown;
  double passthrough_alpha = 0.75;
  int steps = 1;
  std::uint64_t seed = 0;  // reserved; the engine is deterministic

  /// Throws DomainError naming the first invalid field.
  void validate() const;
};

struct StepRecord {
  int t = 0;
  double nominal_min = 0.0;
  Ratio w_min = 0.0;
  Ratio w_mean = 0.0;
  double labor_share = 0.0;
  double price_level = 1.0;
  double high_productivity_share = 0.0;
  double gini_proxy = 0.0;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

/// Raised when a step fails; carries the 1-based index of the failing step.
class SimulationError : public std::runtime_error {
 public:
  SimulationError(int step, const std::string& reason);
  int step() const noexcept { return step_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  int step_;
  std::string reason_;
};

struct StepResult {
  EconomyState state;
  StepRecord record;
};

/// Next year's nominal hourly floor. `action`, when present, overrides the rule.
double policy_floor(const PolicyRule& rule, const EconomyState& state, double next_gdppc,
                    double next_price, const std::optional<PolicyAction>& action = {});

/// Fills in the derived fields (gini proxy, labor share) of a starting state.
EconomyState prepare_initial(EconomyState state, const CompensationBreakdown& breakdown);

/// Record describing a state without advancing it.
StepRecord snapshot(const EconomyState& state);

/// Advances one year. Market wages first keep pace with nominal per-capita
/// GDP; the policy floor then compresses the distribution (floor outpaces
/// growth) or lets it sag (floor lags growth). Nominal wages never fall.
/// `action` overrides the configured rule for this step only.
StepResult step(const EconomyState& state, const ScenarioConfig& config,
                const std::optional<PolicyAction>& action = {});

/// Runs `config.steps` years from the prepared initial state.
std::vector<StepRecord> run(const ScenarioConfig& config);

/// Stationary mean-wage ratio with the floor pinned at `target_wmin` of
/// per-capita GDP. Iterates the simulator's floor map in ratio units, where
/// market growth is neutral and only the floor move reshapes the distribution.
Ratio fixed_point_wmean(Ratio target_wmin, const CompressionParams& compression,
                        const WageDistribution& dist0, double gdppc0,
                        int max_iterations = 10'000, double tolerance = 1e-13);

std::vector<std::string> preset_names();

/// Bundled scenarios: "hungary", "us-baseline", "us-fixed-nominal", "gdpc-two-thirds".
std::optional<ScenarioConfig> preset(const std::string& name);

ScenarioConfig hungary_scenario();

}  // namespace gdpwage
