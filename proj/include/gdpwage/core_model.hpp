#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gdpwage {

/// Full-time work year used to move between hourly and annual figures.
inline constexpr double kHoursPerYear = 2080.0;

/// Dimensionless quotient: a wage or compensation measure divided by per-capita GDP.
using Ratio = double;

/// National accounts needed to evaluate the labor share two ways.
///
/// `t_mean` is mean hourly total compensation divided by annual per-capita
/// GDP (units 1/hour); `population` is the whole resident population.
struct LaborShareAccount {
  double t_mean = 0.0;
  double hours_per_capita = 0.0;
  double population = 0.0;
  double gdp = 0.0;
  double total_compensation = 0.0;

  /// Builds an account from totals, deriving t_mean as
  /// (total_compensation / total hours) / (gdp / population).
  static LaborShareAccount from_totals(double total_compensation, double gdp,
                                       double population, double hours_per_capita);

  void validate() const;

  /// Share of output going to labor; above 1 is implausible but still valid.
  bool exceeds_output() const;
};

struct CompensationBreakdown {
  double wage_share = 0.70;
  double health_insurance_share = 0.075;
  double social_insurance_share = 0.085;
  double other_share = 0.14;

  void validate() const;
};

/// Cost of turning one unit of inputs into one unit of output with one kind of labor.
struct TransformUnit {
  double labor_hours_per_unit = 1.0;
  double hourly_wage = 0.0;
  double non_labor_cost_per_unit = 0.0;

  void validate() const;
};

enum class HorizonSide { LowCheaper, HighCheaper, Equilibrium };

std::string to_string(HorizonSide side);

struct WageBin {
  double wage = 0.0;  // currency per hour
  double mass = 0.0;  // employment-hours weight

  friend bool operator==(const WageBin&, const WageBin&) = default;
};

/// Binned wage structure, ordered by strictly increasing wage.
class WageDistribution {
 public:
  explicit WageDistribution(std::vector<WageBin> bins);

  std::span<const WageBin> bins() const noexcept { return bins_; }
  std::size_t size() const noexcept { return bins_.size(); }

  /// Wage of the first bin carrying positive mass.
  double minimum_wage() const;
  double total_mass() const;

  friend bool operator==(const WageDistribution&, const WageDistribution&) = default;

 private:
  std::vector<WageBin> bins_;
};

enum class CompressionKernel { Linear };

struct CompressionParams {
  Ratio ceiling_ratio = 1.0;  // annualized ceiling wage / per-capita GDP
  CompressionKernel kernel = CompressionKernel::Linear;
};

Ratio labor_share(double t_mean, double hours_per_capita);

/// Relative gap between T_mean x hours and total_compensation / gdp.
double verify_identity(const LaborShareAccount& account);

Ratio t_mean_from_wage(Ratio w_mean, const CompensationBreakdown& breakdown);

Ratio ratio_nominal(double nominal_wage, double nominal_gdppc);

/// (nominal / nominal, real / real); equal up to rounding for any deflator > 0.
std::pair<Ratio, Ratio> deflator_invariance(double nominal_wage, double nominal_gdppc,
                                            double deflator);

double decompose_gdppc(double labor_productivity, double avg_hours_per_worker,
                       double employment_ratio);

double transform_cost(const TransformUnit& unit);

HorizonSide horizon_side(const TransformUnit& low, const TransformUnit& high,
                         double tol = 0.0);

/// Low-productivity hourly wage at which both units cost the same. Negative
/// means the high-productivity unit is cheaper at every non-negative wage.
double crossing_wage(const TransformUnit& low, const TransformUnit& high);

/// Ceiling of the compression kernel as an hourly wage.
double hourly_ceiling(const CompressionParams& params, double gdppc);

/// Raises the wage floor to `new_min` and propagates the raise up the
/// distribution: each bin moves by (new_min - old_min) * k(w), where
/// k(w) = clamp((c - w) / (c - old_min), 0, 1) and c is the hourly ceiling.
/// Masses are untouched.
WageDistribution compress(const WageDistribution& dist, double new_min,
                          const CompressionParams& params, double gdppc);

/// Negative compression: lowers the floor to `new_min` through the same
/// kernel, so the bottom falls furthest and wages at the ceiling hold.
/// Used in ratio terms, when market wages have grown and the floor has not.
WageDistribution sag(const WageDistribution& dist, double new_min,
                     const CompressionParams& params, double gdppc);

/// Moves the floor to `new_min` by compress or sag, whichever applies.
WageDistribution shift_floor(const WageDistribution& dist, double new_min,
                             const CompressionParams& params, double gdppc);

/// Multiplies every bin wage by `factor` (> 0).
WageDistribution scale_wages(const WageDistribution& dist, double factor);

double mean_wage(const WageDistribution& dist);

/// Mass-weighted median; ties resolve to the lower bin.
double median_wage(const WageDistribution& dist);

/// Mass-weighted Gini coefficient of bin wages.
double gini(const WageDistribution& dist);

}  // namespace gdpwage
