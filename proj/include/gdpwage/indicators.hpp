#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gdpwage/core_model.hpp"
#include "gdpwage/errors.hpp"

namespace gdpwage {

/// One year of the nominal economy, as read from the indicators CSV.
struct AnnualObservation {
  int year = 0;
  double min_wage_hourly = 0.0;
  double mean_wage_hourly = 0.0;
  std::optional<double> median_wage_hourly;
  std::optional<double> nonsupervisory_wage_hourly;
  double gdp_per_capita = 0.0;
  std::optional<double> deflator;
  std::optional<double> gini;
  std::optional<double> union_rate;
};

using Series = std::vector<AnnualObservation>;

struct WageRatios {
  int year = 0;
  Ratio w_min = 0.0;
  Ratio w_mean = 0.0;
  std::optional<Ratio> kaitz;
  Ratio min_to_mean = 0.0;
  std::optional<Ratio> min_to_nonsupervisory;
};

struct RealWageRow {
  int year = 0;
  double real_annual_min_wage = 0.0;
  double real_annual_mean_wage = 0.0;
};

struct KaitzRow {
  int year = 0;
  Ratio kaitz = 0.0;
  Ratio min_to_mean = 0.0;
};

struct KaitzTable {
  std::vector<KaitzRow> rows;
  std::vector<std::string> warnings;
};

struct ScatterStats {
  double slope = 0.0;
  double intercept = 0.0;
  double r = 0.0;
  std::size_t n = 0;
};

enum class Figure { MinGdpUnion, MinMeanScatter, MinGini };

/// Column-labelled numeric table. Missing cells are nullopt and print empty.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::optional<double>>> rows;
};

inline constexpr std::string_view kSeriesHeader =
    "year,min_wage_hourly,mean_wage_hourly,median_wage_hourly,"
    "nonsupervisory_wage_hourly,gdp_per_capita,deflator,gini,union_rate";

struct ParsedSeries {
  Series rows;
  std::vector<int> lines;  // source line of each row
  std::vector<Issue> issues;
};

/// Parses the indicators CSV, collecting every schema and value problem with
/// its line number rather than stopping at the first.
ParsedSeries parse_series_csv(std::istream& in);

/// Reads and validates a CSV file; throws ValidationError listing all issues.
Series read_series(const std::string& path);

/// Row-level checks shared by the parser and in-memory callers.
std::vector<Issue> validate_series(const Series& series, const std::vector<int>& lines = {});

double annualize(double hourly);

std::vector<WageRatios> ratios(const Series& series);

std::vector<RealWageRow> real_series(const Series& series, int base_year);

KaitzTable kaitz_divergence(const Series& series);

ScatterStats ols(const std::vector<double>& x, const std::vector<double>& y);
double correlation(const std::vector<double>& x, const std::vector<double>& y);

ScatterStats scatter(const Series& series);

double gini_alignment(const Series& series);

std::vector<int> nonsupervisory_band(const Series& series, double center = 0.40,
                                     double width = 0.012);

std::optional<Figure> parse_figure(std::string_view name);
std::string to_string(Figure figure);
std::vector<std::string> figure_names();

Table figure_series(const Series& series, Figure which);

void write_csv(const Table& table, std::ostream& out);

}  // namespace gdpwage
