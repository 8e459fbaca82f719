#include "gdpwage/indicators.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "gdpwage/format.hpp"

namespace gdpwage {
namespace {

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> cells;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return cells;
}

std::optional<double> parse_double(std::string_view text) {
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last || !std::isfinite(value)) return std::nullopt;
  return value;
}

std::optional<int> parse_int(std::string_view text) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

constexpr std::size_t kColumns = 9;
constexpr const char* kColumnNames[kColumns] = {
    "year", "min_wage_hourly", "mean_wage_hourly", "median_wage_hourly",
    "nonsupervisory_wage_hourly", "gdp_per_capita", "deflator", "gini", "union_rate"};

void require_valid(const Series& series) {
  if (series.empty()) throw ValidationError("series is empty");
  auto issues = validate_series(series);
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  const auto constant = [](const std::vector<double>& v) {
    const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    return *lo == *hi;
  };
  if (constant(x) || constant(y) || sxx == 0.0 || syy == 0.0) {
    throw DomainError("correlation undefined: a variable has zero variance");
  }
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

}  // namespace

ParsedSeries parse_series_csv(std::istream& in) {
  ParsedSeries parsed;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!header_seen) {
      if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
      if (line != kSeriesHeader) {
        parsed.issues.push_back(
            {line_no, "header must be exactly: " + std::string(kSeriesHeader)});
        return parsed;
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    const auto cells = split_commas(line);
    if (cells.size() != kColumns) {
      parsed.issues.push_back({line_no, "expected " + std::to_string(kColumns) +
                                            " cells, found " + std::to_string(cells.size())});
      continue;
    }
    AnnualObservation row;
    bool ok = true;
    const auto required = [&](std::size_t col, double& dst) {
      if (cells[col].empty()) {
        parsed.issues.push_back({line_no, std::string(kColumnNames[col]) + " is required"});
        ok = false;
        return;
      }
      auto v = parse_double(cells[col]);
      if (!v) {
        parsed.issues.push_back({line_no, std::string(kColumnNames[col]) +
                                              " is not a number: '" +
                                              std::string(cells[col]) + "'"});
        ok = false;
        return;
      }
      dst = *v;
    };
    const auto optional = [&](std::size_t col, std::optional<double>& dst) {
      if (cells[col].empty()) return;
      auto v = parse_double(cells[col]);
      if (!v) {
        parsed.issues.push_back({line_no, std::string(kColumnNames[col]) +
                                              " is not a number: '" +
                                              std::string(cells[col]) + "'"});
        ok = false;
        return;
      }
      dst = v;
    };
    if (auto y = parse_int(cells[0])) {
      row.year = *y;
    } else {
      parsed.issues.push_back({line_no, "year is not an integer: '" + std::string(cells[0]) + "'"});
      ok = false;
    }
    required(1, row.min_wage_hourly);
    required(2, row.mean_wage_hourly);
    optional(3, row.median_wage_hourly);
    optional(4, row.nonsupervisory_wage_hourly);
    required(5, row.gdp_per_capita);
    optional(6, row.deflator);
    optional(7, row.gini);
    optional(8, row.union_rate);
    if (ok) {
      parsed.rows.push_back(row);
      parsed.lines.push_back(line_no);
    }
  }
  if (!header_seen) parsed.issues.push_back({0, "file is empty; header row missing"});
  auto value_issues = validate_series(parsed.rows, parsed.lines);
  parsed.issues.insert(parsed.issues.end(), value_issues.begin(), value_issues.end());
  std::stable_sort(parsed.issues.begin(), parsed.issues.end(),
                   [](const Issue& a, const Issue& b) { return a.line < b.line; });
  return parsed;
}

Series read_series(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  auto parsed = parse_series_csv(in);
  if (!parsed.issues.empty()) throw ValidationError(std::move(parsed.issues));
  return std::move(parsed.rows);
}

std::vector<Issue> validate_series(const Series& series, const std::vector<int>& lines) {
  std::vector<Issue> issues;
  const auto line_of = [&](std::size_t i) {
    return i < lines.size() ? lines[i] : 0;
  };
  std::map<int, std::size_t> first_seen;
  for (std::size_t i = 0; i < series.size(); ++i) {
    const auto& r = series[i];
    const int ln = line_of(i);
    const std::string tag = "year " + std::to_string(r.year) + ": ";
    auto [it, inserted] = first_seen.emplace(r.year, i);
    if (!inserted) {
      issues.push_back({ln, tag + "duplicate year (first seen at line " +
                                std::to_string(line_of(it->second)) + ")"});
    }
    const auto positive = [&](double v, const char* name) {
      if (!(v > 0.0)) issues.push_back({ln, tag + name + " must be positive"});
    };
    positive(r.min_wage_hourly, "min_wage_hourly");
    positive(r.mean_wage_hourly, "mean_wage_hourly");
    positive(r.gdp_per_capita, "gdp_per_capita");
    if (r.median_wage_hourly) positive(*r.median_wage_hourly, "median_wage_hourly");
    if (r.nonsupervisory_wage_hourly) {
      positive(*r.nonsupervisory_wage_hourly, "nonsupervisory_wage_hourly");
    }
    if (r.deflator) positive(*r.deflator, "deflator");
    if (r.gini && (*r.gini < 0.0 || *r.gini > 1.0)) {
      issues.push_back({ln, tag + "gini must lie in [0, 1]"});
    }
    if (r.union_rate && (*r.union_rate < 0.0 || *r.union_rate > 1.0)) {
      issues.push_back({ln, tag + "union_rate must lie in [0, 1]"});
    }
    if (r.min_wage_hourly > 0.0 && r.mean_wage_hourly > 0.0 &&
        r.min_wage_hourly > r.mean_wage_hourly) {
      issues.push_back({ln, tag + "min_wage_hourly exceeds mean_wage_hourly"});
    }
  }
  return issues;
}

double annualize(double hourly) {
  if (!(hourly >= 0.0)) throw DomainError("hourly wage must be non-negative");
  return hourly * kHoursPerYear;
}

std::vector<WageRatios> ratios(const Series& series) {
  require_valid(series);
  std::vector<WageRatios> out;
  out.reserve(series.size());
  for (const auto& r : series) {
    WageRatios w;
    w.year = r.year;
    w.w_min = ratio_nominal(annualize(r.min_wage_hourly), r.gdp_per_capita);
    w.w_mean = ratio_nominal(annualize(r.mean_wage_hourly), r.gdp_per_capita);
    w.min_to_mean = r.min_wage_hourly / r.mean_wage_hourly;
    if (r.median_wage_hourly) w.kaitz = r.min_wage_hourly / *r.median_wage_hourly;
    if (r.nonsupervisory_wage_hourly) {
      w.min_to_nonsupervisory = r.min_wage_hourly / *r.nonsupervisory_wage_hourly;
    }
    out.push_back(w);
  }
  return out;
}

std::vector<RealWageRow> real_series(const Series& series, int base_year) {
  require_valid(series);
  std::vector<Issue> missing;
  const AnnualObservation* base = nullptr;
  for (const auto& r : series) {
    if (!r.deflator) missing.push_back({0, "deflator missing for year " + std::to_string(r.year)});
    if (r.year == base_year) base = &r;
  }
  if (!base) missing.push_back({0, "base year " + std::to_string(base_year) + " not in series"});
  if (!missing.empty()) throw ValidationError(std::move(missing));

  std::vector<RealWageRow> out;
  out.reserve(series.size());
  for (const auto& r : series) {
    const double rebased = *r.deflator / *base->deflator;
    out.push_back({r.year, annualize(r.min_wage_hourly) / rebased,
                   annualize(r.mean_wage_hourly) / rebased});
  }
  return out;
}

KaitzTable kaitz_divergence(const Series& series) {
  KaitzTable table;
  for (const auto& w : ratios(series)) {
    if (!w.kaitz) {
      table.warnings.push_back("year " + std::to_string(w.year) +
                               ": median_wage_hourly missing, row skipped");
      continue;
    }
    table.rows.push_back({w.year, *w.kaitz, w.min_to_mean});
  }
  std::sort(table.rows.begin(), table.rows.end(),
            [](const KaitzRow& a, const KaitzRow& b) { return a.year < b.year; });
  return table;
}

ScatterStats ols(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DomainError("ols: x and y differ in length");
  if (x.size() < 2) throw DomainError("ols: need at least two points");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0) throw DomainError("ols: slope undefined, all x values are equal");
  ScatterStats s;
  s.n = x.size();
  s.slope = sxy / sxx;
  s.intercept = my - s.slope * mx;
  // A flat response is perfectly described by its own mean; r is taken as 0.
  s.r = syy == 0.0 ? 0.0 : std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return s;
}

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size()) throw DomainError("correlation: x and y differ in length");
  if (x.size() < 2) throw DomainError("correlation: need at least two points");
  return pearson(x, y);
}

ScatterStats scatter(const Series& series) {
  std::vector<double> x, y;
  for (const auto& w : ratios(series)) {
    x.push_back(w.w_min);
    y.push_back(w.w_mean);
  }
  return ols(x, y);
}

double gini_alignment(const Series& series) {
  std::vector<double> x, y;
  for (const auto& r : series) {
    if (!r.gini) continue;
    x.push_back(ratio_nominal(annualize(r.min_wage_hourly), r.gdp_per_capita));
    y.push_back(*r.gini);
  }
  if (x.size() < 2) throw DomainError("gini_alignment: fewer than two years carry a gini value");
  return pearson(x, y);
}

std::vector<int> nonsupervisory_band(const Series& series, double center, double width) {
  if (!(width >= 0.0)) throw DomainError("band width must be non-negative");
  const auto rows = ratios(series);
  const bool any = std::any_of(rows.begin(), rows.end(), [](const WageRatios& w) {
    return w.min_to_nonsupervisory.has_value();
  });
  if (!any) throw ValidationError("column nonsupervisory_wage_hourly is missing from the series");
  std::vector<int> years;
  for (const auto& w : rows) {
    if (w.min_to_nonsupervisory && std::abs(*w.min_to_nonsupervisory - center) <= width) {
      years.push_back(w.year);
    }
  }
  std::sort(years.begin(), years.end());
  return years;
}

std::optional<Figure> parse_figure(std::string_view name) {
  if (name == "min-gdp-union") return Figure::MinGdpUnion;
  if (name == "min-mean-scatter") return Figure::MinMeanScatter;
  if (name == "min-gini") return Figure::MinGini;
  return std::nullopt;
}

std::string to_string(Figure figure) {
  switch (figure) {
    case Figure::MinGdpUnion: return "min-gdp-union";
    case Figure::MinMeanScatter: return "min-mean-scatter";
    case Figure::MinGini: return "min-gini";
  }
  return "unknown";
}

std::vector<std::string> figure_names() {
  return {"min-gdp-union", "min-mean-scatter", "min-gini"};
}

Table figure_series(const Series& series, Figure which) {
  const auto rows = ratios(series);
  Table t;
  // Rows without the optional column are dropped; a column absent everywhere is an error.
  const auto with_optional = [&](const char* column, auto pick) {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::optional<double> v = pick(series[i]);
      if (!v) continue;
      t.rows.push_back({static_cast<double>(rows[i].year), rows[i].w_min, rows[i].w_mean, *v});
    }
    if (t.rows.empty()) {
      throw ValidationError(std::string("figure ") + to_string(which) +
                            " needs column " + column + ", which has no values");
    }
  };
  switch (which) {
    case Figure::MinGdpUnion:
      t.columns = {"year", "w_min", "w_mean", "union_rate"};
      with_optional("union_rate", [](const AnnualObservation& r) { return r.union_rate; });
      break;
    case Figure::MinMeanScatter:
      t.columns = {"year", "w_min", "w_mean"};
      for (const auto& w : rows) {
        t.rows.push_back({static_cast<double>(w.year), w.w_min, w.w_mean});
      }
      break;
    case Figure::MinGini:
      t.columns = {"year", "w_min", "gini"};
      with_optional("gini", [](const AnnualObservation& r) { return r.gini; });
      for (auto& row : t.rows) row.erase(row.begin() + 2);
      break;
  }
  std::stable_sort(t.rows.begin(), t.rows.end(),
                   [](const auto& a, const auto& b) { return *a[0] < *b[0]; });
  return t;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i > 0) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i > 0) out << ',';
      if (row[i]) out << format_number(*row[i]);
    }
    out << '\n';
  }
}

}  // namespace gdpwage
