#include "gdpwage/simulator.hpp"

#include <algorithm>
#include <cmath>

#include "gdpwage/errors.hpp"

namespace gdpwage {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_target(Ratio target, const char* name) {
  if (!std::isfinite(target) || target <= 0.0 || target > 1.2) {
    throw DomainError(std::string(name) + " must lie in (0, 1.2], got " +
                      std::to_string(target));
  }
}

double action_floor(const PolicyAction& action, double next_gdppc) {
  if (!std::isfinite(action.value) || action.value <= 0.0) {
    throw DomainError("policy action value must be positive");
  }
  return action.kind == PolicyAction::Kind::Ratio
             ? action.value * (next_gdppc / kHoursPerYear)
             : action.value;
}

}  // namespace

SimulationError::SimulationError(int step, const std::string& reason)
    : std::runtime_error("step " + std::to_string(step) + ": " + reason),
      step_(step),
      reason_(reason) {}

std::string rule_name(const PolicyRule& rule) {
  return std::visit(overloaded{
                        [](const rule::FixedNominal&) { return "fixed_nominal"; },
                        [](const rule::CpiIndexed&) { return "cpi_indexed"; },
                        [](const rule::KaitzIndexed&) { return "kaitz_indexed"; },
                        [](const rule::GdpcIndexed&) { return "gdpc_indexed"; },
                        [](const rule::GdpcRamp&) { return "gdpc_ramp"; },
                        [](const rule::Manual&) { return "manual"; },
                    },
                    rule);
}

void ScenarioConfig::validate() const {
  const auto finite = [](double v, const char* name) {
    if (!std::isfinite(v)) throw DomainError(std::string(name) + " must be finite");
  };
  finite(real_growth_rate, "real_growth_rate");
  finite(inflation_rate, "inflation_rate");
  if (real_growth_rate <= -1.0 || inflation_rate <= -1.0) {
    throw DomainError("growth and inflation rates must exceed -1");
  }
  if (!(passthrough_alpha >= 0.0 && passthrough_alpha <= 1.0)) {
    throw DomainError("passthrough_alpha must lie in [0, 1]");
  }
  if (steps < 1) throw DomainError("steps must be at least 1");
  breakdown.validate();
  if (!(compression.ceiling_ratio > 0.0) || !std::isfinite(compression.ceiling_ratio)) {
    throw DomainError("compression.ceiling_ratio must be positive");
  }
  const auto& s = initial;
  if (!(s.gdp_per_capita > 0.0) || !std::isfinite(s.gdp_per_capita)) {
    throw DomainError("initial.gdp_per_capita must be positive");
  }
  if (!(s.hours_per_capita > 0.0) || !std::isfinite(s.hours_per_capita)) {
    throw DomainError("initial.hours_per_capita must be positive");
  }
  if (!(s.price_level > 0.0) || !std::isfinite(s.price_level)) {
    throw DomainError("initial.price_level must be positive");
  }
  if (!(s.high_productivity_share >= 0.0 && s.high_productivity_share <= 1.0)) {
    throw DomainError("initial.high_productivity_share must lie in [0, 1]");
  }
  s.low_unit.validate();
  s.high_unit.validate();
  if (!(s.dist.minimum_wage() > 0.0)) {
    throw DomainError("initial distribution minimum wage must be positive");
  }
  std::visit(overloaded{
                 [](const rule::FixedNominal&) {},
                 [](const rule::CpiIndexed&) {},
                 [](const rule::KaitzIndexed& r) { require_target(r.target, "rule.target"); },
                 [](const rule::GdpcIndexed& r) { require_target(r.target, "rule.target"); },
                 [](const rule::GdpcRamp& r) {
                   require_target(r.target, "rule.target");
                   if (!(r.annual_increment > 0.0) || !std::isfinite(r.annual_increment)) {
                     throw DomainError("rule.annual_increment must be positive");
                   }
                 },
                 [](const rule::Manual& r) {
                   for (const auto& a : r.schedule) {
                     if (a && !(a->value > 0.0 && std::isfinite(a->value))) {
                       throw DomainError("rule.schedule values must be positive");
                     }
                   }
                 },
             },
             rule);
}

double policy_floor(const PolicyRule& rule, const EconomyState& state, double next_gdppc,
                    double next_price, const std::optional<PolicyAction>& action) {
  if (action) return action_floor(*action, next_gdppc);
  const double current = state.dist.minimum_wage();
  return std::visit(
      overloaded{
          [&](const rule::FixedNominal&) { return current; },
          [&](const rule::CpiIndexed&) { return current * (next_price / state.price_level); },
          [&](const rule::KaitzIndexed& r) { return r.target * median_wage(state.dist); },
          [&](const rule::GdpcIndexed& r) { return r.target * (next_gdppc / kHoursPerYear); },
          [&](const rule::GdpcRamp& r) {
            const Ratio now = current * kHoursPerYear / state.gdp_per_capita;
            return std::min(now + r.annual_increment, r.target) * (next_gdppc / kHoursPerYear);
          },
          [&](const rule::Manual& r) {
            const auto idx = static_cast<std::size_t>(state.t);
            if (idx < r.schedule.size() && r.schedule[idx]) {
              return action_floor(*r.schedule[idx], next_gdppc);
            }
            return current;
          },
      },
      rule);
}

EconomyState prepare_initial(EconomyState state, const CompensationBreakdown& breakdown) {
  state.gini_proxy = gini(state.dist);
  const double hourly_comp = mean_wage(state.dist) / breakdown.wage_share;
  state.labor_share =
      labor_share(hourly_comp / state.gdp_per_capita, state.hours_per_capita);
  state.low_unit.hourly_wage = state.dist.minimum_wage();
  return state;
}

StepRecord snapshot(const EconomyState& state) {
  StepRecord r;
  r.t = state.t;
  r.nominal_min = state.dist.minimum_wage();
  const double hourly_gdppc = state.gdp_per_capita / kHoursPerYear;
  r.w_min = r.nominal_min / hourly_gdppc;
  r.w_mean = mean_wage(state.dist) / hourly_gdppc;
  r.labor_share = state.labor_share;
  r.price_level = state.price_level;
  r.high_productivity_share = state.high_productivity_share;
  r.gini_proxy = state.gini_proxy;
  return r;
}

StepResult step(const EconomyState& state, const ScenarioConfig& config,
                const std::optional<PolicyAction>& action) {
  const double real_factor = 1.0 + config.real_growth_rate;
  const double price_factor = 1.0 + config.inflation_rate;
  const double nominal_factor = real_factor * price_factor;

  // (1) exogenous growth; market wages keep their share of per-capita GDP
  EconomyState next = state;
  next.t = state.t + 1;
  next.gdp_per_capita = state.gdp_per_capita * nominal_factor;
  const double base_price = state.price_level * price_factor;
  const WageDistribution grown = scale_wages(state.dist, nominal_factor);

  // (2) policy floor
  const double current = state.dist.minimum_wage();
  const double floor =
      policy_floor(config.rule, state, next.gdp_per_capita, base_price, action);
  if (!std::isfinite(floor) || floor < current) {
    throw DomainError("policy floor " + std::to_string(floor) +
                      " is below the current nominal minimum " + std::to_string(current));
  }

  // (3) compression when the floor outpaces growth, sag when it lags
  next.dist = shift_floor(grown, floor, config.compression, next.gdp_per_capita);
  const double mean_grown = mean_wage(grown);
  const double mean_after = mean_wage(next.dist);
  const double wage_share = config.breakdown.wage_share;
  const double bill_change = (mean_after - mean_grown) * state.hours_per_capita / wage_share;

  // (4) pass-through: alpha of a compensation increase goes to prices and
  // the rest to the labor share; a sag is absorbed entirely by the labor share
  const double raise = std::max(bill_change, 0.0);
  next.price_level =
      base_price * (1.0 + config.passthrough_alpha * raise / next.gdp_per_capita);
  const double carried_share = labor_share(mean_grown / wage_share / next.gdp_per_capita,
                                           state.hours_per_capita);
  next.labor_share =
      carried_share +
      (bill_change - config.passthrough_alpha * raise) / next.gdp_per_capita;

  // (5) horizon crossing
  next.low_unit.hourly_wage = next.dist.minimum_wage();
  next.high_unit.labor_hours_per_unit = state.high_unit.labor_hours_per_unit / real_factor;
  next.high_unit.hourly_wage = state.high_unit.hourly_wage * nominal_factor;
  if (horizon_side(next.low_unit, next.high_unit) == HorizonSide::HighCheaper) {
    next.high_productivity_share =
        std::min(1.0, state.high_productivity_share + kProductivityShareStep);
  }

  // (6) hours per capita carried unchanged, (7) inequality
  next.gini_proxy = gini(next.dist);
  return {next, snapshot(next)};
}

std::vector<StepRecord> run(const ScenarioConfig& config) {
  config.validate();
  EconomyState state = prepare_initial(config.initial, config.breakdown);
  std::vector<StepRecord> records;
  records.reserve(static_cast<std::size_t>(config.steps));
  for (int i = 1; i <= config.steps; ++i) {
    try {
      auto result = step(state, config);
      state = std::move(result.state);
      records.push_back(result.record);
    } catch (const DomainError& e) {
      throw SimulationError(i, e.what());
    }
  }
  return records;
}

Ratio fixed_point_wmean(Ratio target_wmin, const CompressionParams& compression,
                        const WageDistribution& dist0, double gdppc0, int max_iterations,
                        double tolerance) {
  if (!(gdppc0 > 0.0)) throw DomainError("gdppc0 must be positive");
  if (!(target_wmin > 0.0) || !(target_wmin < compression.ceiling_ratio)) {
    throw DomainError("target must lie strictly between 0 and the compression ceiling");
  }
  // In ratio units per-capita GDP is pinned at one work year.
  WageDistribution dist = scale_wages(dist0, kHoursPerYear / gdppc0);
  double previous = mean_wage(dist);
  for (int i = 0; i < max_iterations; ++i) {
    dist = shift_floor(dist, target_wmin, compression, kHoursPerYear);
    const double current = mean_wage(dist);
    if (std::abs(current - previous) < tolerance) return current;
    previous = current;
  }
  throw DomainError("fixed_point_wmean did not converge in " +
                    std::to_string(max_iterations) + " iterations");
}

}  // namespace gdpwage
