#include "gdpwage/core_model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gdpwage/errors.hpp"

namespace gdpwage {
namespace {

void require_positive(double v, const char* name) {
  if (!std::isfinite(v) || v <= 0.0) {
    throw DomainError(std::string(name) + " must be positive and finite, got " +
                      std::to_string(v));
  }
}

void require_non_negative(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0) {
    throw DomainError(std::string(name) + " must be non-negative and finite, got " +
                      std::to_string(v));
  }
}

void require_fraction(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
    throw DomainError(std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
  }
}

}  // namespace

LaborShareAccount LaborShareAccount::from_totals(double total_compensation, double gdp,
                                                 double population,
                                                 double hours_per_capita) {
  LaborShareAccount a;
  a.total_compensation = total_compensation;
  a.gdp = gdp;
  a.population = population;
  a.hours_per_capita = hours_per_capita;
  const double hourly_comp = total_compensation / (hours_per_capita * population);
  const double gdppc = gdp / population;
  a.t_mean = hourly_comp / gdppc;
  a.validate();
  return a;
}

void LaborShareAccount::validate() const {
  require_positive(t_mean, "t_mean");
  require_positive(hours_per_capita, "hours_per_capita");
  require_positive(population, "population");
  require_positive(gdp, "gdp");
  require_positive(total_compensation, "total_compensation");
}

bool LaborShareAccount::exceeds_output() const { return total_compensation > gdp; }

void CompensationBreakdown::validate() const {
  require_fraction(wage_share, "wage_share");
  require_fraction(health_insurance_share, "health_insurance_share");
  require_fraction(social_insurance_share, "social_insurance_share");
  require_fraction(other_share, "other_share");
  const double sum =
      wage_share + health_insurance_share + social_insurance_share + other_share;
  if (std::abs(sum - 1.0) > 1e-9) {
    throw DomainError("compensation shares must sum to 1, got " + std::to_string(sum));
  }
}

void TransformUnit::validate() const {
  require_positive(labor_hours_per_unit, "labor_hours_per_unit");
  require_non_negative(hourly_wage, "hourly_wage");
  require_non_negative(non_labor_cost_per_unit, "non_labor_cost_per_unit");
}

std::string to_string(HorizonSide side) {
  switch (side) {
    case HorizonSide::LowCheaper: return "low-cheaper";
    case HorizonSide::HighCheaper: return "high-cheaper";
    case HorizonSide::Equilibrium: return "equilibrium";
  }
  return "unknown";
}

WageDistribution::WageDistribution(std::vector<WageBin> bins) : bins_(std::move(bins)) {
  if (bins_.empty()) throw DomainError("wage distribution has no bins");
  double total = 0.0;
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    const auto& b = bins_[i];
    require_non_negative(b.wage, "bin wage");
    require_non_negative(b.mass, "bin mass");
    if (i > 0 && !(b.wage > bins_[i - 1].wage)) {
      throw DomainError("bin wages must be strictly increasing (bin " + std::to_string(i) +
                        ")");
    }
    total += b.mass;
  }
  if (!(total > 0.0)) throw DomainError("wage distribution has zero total mass");
}

double WageDistribution::minimum_wage() const {
  for (const auto& b : bins_) {
    if (b.mass > 0.0) return b.wage;
  }
  throw DomainError("wage distribution has zero total mass");
}

double WageDistribution::total_mass() const {
  double total = 0.0;
  for (const auto& b : bins_) total += b.mass;
  return total;
}

Ratio labor_share(double t_mean, double hours_per_capita) {
  require_positive(t_mean, "t_mean");
  require_positive(hours_per_capita, "hours_per_capita");
  return t_mean * hours_per_capita;
}

double verify_identity(const LaborShareAccount& account) {
  account.validate();
  const double total_hours = account.hours_per_capita * account.population;
  const double via_t_mean = account.t_mean * total_hours / account.population;
  const double via_totals = account.total_compensation / account.gdp;
  return std::abs(via_t_mean - via_totals) / via_totals;
}

Ratio t_mean_from_wage(Ratio w_mean, const CompensationBreakdown& breakdown) {
  breakdown.validate();
  require_positive(w_mean, "w_mean");
  if (breakdown.wage_share == 0.0) throw DomainError("wage_share is zero");
  return w_mean / breakdown.wage_share;
}

Ratio ratio_nominal(double nominal_wage, double nominal_gdppc) {
  require_non_negative(nominal_wage, "nominal_wage");
  require_positive(nominal_gdppc, "nominal_gdppc");
  return nominal_wage / nominal_gdppc;
}

std::pair<Ratio, Ratio> deflator_invariance(double nominal_wage, double nominal_gdppc,
                                            double deflator) {
  require_positive(deflator, "deflator");
  const Ratio nominal = ratio_nominal(nominal_wage, nominal_gdppc);
  const Ratio real = ratio_nominal(nominal_wage / deflator, nominal_gdppc / deflator);
  return {nominal, real};
}

double decompose_gdppc(double labor_productivity, double avg_hours_per_worker,
                       double employment_ratio) {
  require_non_negative(labor_productivity, "labor_productivity");
  require_non_negative(avg_hours_per_worker, "avg_hours_per_worker");
  require_non_negative(employment_ratio, "employment_ratio");
  return labor_productivity * avg_hours_per_worker * employment_ratio;
}

double transform_cost(const TransformUnit& unit) {
  unit.validate();
  return unit.labor_hours_per_unit * unit.hourly_wage + unit.non_labor_cost_per_unit;
}

HorizonSide horizon_side(const TransformUnit& low, const TransformUnit& high, double tol) {
  require_non_negative(tol, "tol");
  const double low_cost = transform_cost(low);
  const double high_cost = transform_cost(high);
  if (low_cost < high_cost - tol) return HorizonSide::LowCheaper;
  if (high_cost < low_cost - tol) return HorizonSide::HighCheaper;
  return HorizonSide::Equilibrium;
}

double crossing_wage(const TransformUnit& low, const TransformUnit& high) {
  require_positive(low.labor_hours_per_unit, "low.labor_hours_per_unit");
  return (transform_cost(high) - low.non_labor_cost_per_unit) / low.labor_hours_per_unit;
}

double hourly_ceiling(const CompressionParams& params, double gdppc) {
  require_positive(params.ceiling_ratio, "ceiling_ratio");
  require_positive(gdppc, "gdppc");
  return params.ceiling_ratio * gdppc / kHoursPerYear;
}

WageDistribution compress(const WageDistribution& dist, double new_min,
                          const CompressionParams& params, double gdppc) {
  const double old_min = dist.minimum_wage();
  const double ceiling = hourly_ceiling(params, gdppc);
  if (!std::isfinite(new_min) || new_min < old_min) {
    throw DomainError("new minimum " + std::to_string(new_min) +
                      " is below the current minimum " + std::to_string(old_min));
  }
  if (!(ceiling > new_min)) {
    throw DomainError("compression ceiling " + std::to_string(ceiling) +
                      " must exceed the new minimum " + std::to_string(new_min));
  }
  if (new_min == old_min) return dist;

  const double raise = new_min - old_min;
  const double span = ceiling - old_min;
  std::vector<WageBin> out(dist.bins().begin(), dist.bins().end());
  for (auto& b : out) {
    if (b.wage <= old_min) {
      // Bins at (or, with zero mass, below) the floor take the full raise.
      b.wage = b.wage == old_min ? new_min : b.wage + raise;
      continue;
    }
    if (b.wage >= ceiling) continue;
    const double k = std::clamp((ceiling - b.wage) / span, 0.0, 1.0);
    b.wage += raise * k;
  }
  return WageDistribution(std::move(out));
}

WageDistribution sag(const WageDistribution& dist, double new_min,
                     const CompressionParams& params, double gdppc) {
  const double old_min = dist.minimum_wage();
  const double ceiling = hourly_ceiling(params, gdppc);
  if (!std::isfinite(new_min) || new_min <= 0.0 || new_min > old_min) {
    throw DomainError("sag target " + std::to_string(new_min) +
                      " must be positive and at most the current minimum " +
                      std::to_string(old_min));
  }
  if (!(ceiling > old_min)) {
    throw DomainError("compression ceiling " + std::to_string(ceiling) +
                      " must exceed the current minimum " + std::to_string(old_min));
  }
  if (new_min == old_min) return dist;

  const double drop = old_min - new_min;
  const double span = ceiling - old_min;
  std::vector<WageBin> out(dist.bins().begin(), dist.bins().end());
  for (auto& b : out) {
    if (b.wage <= old_min) {
      if (b.wage == old_min) {
        b.wage = new_min;
      } else {
        // zero-mass bins under the floor keep their distance to it
        b.wage = std::max(0.0, b.wage - drop);
      }
      continue;
    }
    if (b.wage >= ceiling) continue;
    const double k = std::clamp((ceiling - b.wage) / span, 0.0, 1.0);
    b.wage -= drop * k;
  }
  return WageDistribution(std::move(out));
}

WageDistribution shift_floor(const WageDistribution& dist, double new_min,
                             const CompressionParams& params, double gdppc) {
  const double old_min = dist.minimum_wage();
  if (new_min > old_min) return compress(dist, new_min, params, gdppc);
  if (new_min < old_min) return sag(dist, new_min, params, gdppc);
  return dist;
}

WageDistribution scale_wages(const WageDistribution& dist, double factor) {
  require_positive(factor, "factor");
  std::vector<WageBin> out(dist.bins().begin(), dist.bins().end());
  for (auto& b : out) b.wage *= factor;
  return WageDistribution(std::move(out));
}

double mean_wage(const WageDistribution& dist) {
  double weighted = 0.0;
  double total = 0.0;
  for (const auto& b : dist.bins()) {
    weighted += b.wage * b.mass;
    total += b.mass;
  }
  if (!(total > 0.0)) throw DomainError("mean of an empty distribution");
  return weighted / total;
}

double median_wage(const WageDistribution& dist) {
  const double half = dist.total_mass() / 2.0;
  double cumulative = 0.0;
  for (const auto& b : dist.bins()) {
    if (b.mass <= 0.0) continue;
    cumulative += b.mass;
    if (cumulative >= half) return b.wage;
  }
  return dist.bins().back().wage;
}

double gini(const WageDistribution& dist) {
  // Bins are sorted, so sum_ij m_i m_j |w_i - w_j| / 2 reduces to
  // sum_i m_i w_i (mass below i - mass above i).
  const double total = dist.total_mass();
  double below = 0.0;
  double numerator = 0.0;
  double weighted = 0.0;
  for (const auto& b : dist.bins()) {
    const double above = total - below - b.mass;
    numerator += b.mass * b.wage * (below - above);
    weighted += b.mass * b.wage;
    below += b.mass;
  }
  if (!(weighted > 0.0)) return 0.0;
  return numerator / (total * weighted);
}

}  // namespace gdpwage
