// Python bindings: ratio helpers, the compression kernel, indicator series
// and scenario runs. Records come back as plain dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gdpwage/core_model.hpp"
#include "gdpwage/errors.hpp"
#include "gdpwage/indicators.hpp"
#include "gdpwage/scenario_json.hpp"
#include "gdpwage/simulator.hpp"

namespace py = pybind11;
using namespace gdpwage;

namespace {

using Bins = std::vector<std::pair<double, double>>;

WageDistribution to_dist(const Bins& bins) {
  std::vector<WageBin> out;
  for (auto [w, m] : bins) out.push_back({w, m});
  return WageDistribution(std::move(out));
}

Bins from_dist(const WageDistribution& d) {
  Bins out;
  for (const auto& b : d.bins()) out.emplace_back(b.wage, b.mass);
  return out;
}

py::dict record_dict(const StepRecord& r) {
  py::dict d;
  const auto& cols = record_columns();
  const auto values = record_values(r);
  d["t"] = r.t;
  for (std::size_t i = 1; i < cols.size(); ++i) d[cols[i].c_str()] = values[i];
  return d;
}

ScenarioConfig config_from(const std::string& payload_json) {
  return config_from_payload(json::parse(payload_json));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimum and mean wages as ratios of per-capita GDP";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SimulationError>(m, "SimulationError", PyExc_RuntimeError);

  m.attr("HOURS_PER_YEAR") = kHoursPerYear;

  m.def("labor_share", &labor_share, py::arg("t_mean"), py::arg("hours_per_capita"));
  m.def(
      "identity_residual",
      [](double total_compensation, double gdp, double population, double hours_per_capita) {
        return verify_identity(
            LaborShareAccount::from_totals(total_compensation, gdp, population, hours_per_capita));
      },
      py::arg("total_compensation"), py::arg("gdp"), py::arg("population"),
      py::arg("hours_per_capita"));
  m.def("ratio_nominal", &ratio_nominal, py::arg("wage"), py::arg("gdppc"));
  m.def("decompose_gdppc", &decompose_gdppc, py::arg("labor_productivity"),
        py::arg("avg_hours_per_worker"), py::arg("employment_ratio"));
  m.def(
      "crossing_wage",
      [](std::tuple<double, double> low, std::tuple<double, double, double> high) {
        const auto [low_hours, low_nonlabor] = low;
        const auto [h, w, c] = high;
        return crossing_wage({low_hours, 0.0, low_nonlabor}, {h, w, c});
      },
      py::arg("low"), py::arg("high"),
      "low = (labor_hours, non_labor_cost), high = (labor_hours, wage, non_labor_cost)");
  m.def(
      "horizon_side",
      [](std::tuple<double, double, double> low, std::tuple<double, double, double> high,
         double tol) {
        const auto [a, b, c] = low;
        const auto [d, e, f] = high;
        return to_string(horizon_side({a, b, c}, {d, e, f}, tol));
      },
      py::arg("low"), py::arg("high"), py::arg("tol") = 0.0);

  m.def(
      "compress",
      [](const Bins& bins, double new_min, double gdppc, double ceiling_ratio) {
        return from_dist(compress(to_dist(bins), new_min, {ceiling_ratio}, gdppc));
      },
      py::arg("bins"), py::arg("new_min"), py::arg("gdppc"), py::arg("ceiling_ratio") = 1.0,
      "bins is a list of (hourly wage, mass) in increasing wage order");
  m.def("mean_wage", [](const Bins& b) { return mean_wage(to_dist(b)); }, py::arg("bins"));
  m.def("gini", [](const Bins& b) { return gini(to_dist(b)); }, py::arg("bins"));

  m.def(
      "ratios",
      [](const std::string& path) {
        py::list out;
        for (const auto& r : ratios(read_series(path))) {
          py::dict d;
          d["year"] = r.year;
          d["w_min"] = r.w_min;
          d["w_mean"] = r.w_mean;
          d["kaitz"] = r.kaitz;
          d["min_to_mean"] = r.min_to_mean;
          d["min_to_nonsupervisory"] = r.min_to_nonsupervisory;
          out.append(d);
        }
        return out;
      },
      py::arg("csv_path"));
  m.def(
      "real_series",
      [](const std::string& path, int base_year) {
        std::vector<std::tuple<int, double, double>> out;
        for (const auto& r : real_series(read_series(path), base_year)) {
          out.emplace_back(r.year, r.real_annual_min_wage, r.real_annual_mean_wage);
        }
        return out;
      },
      py::arg("csv_path"), py::arg("base_year"));

  m.def("preset_names", &preset_names);
  m.def(
      "preset_json",
      [](const std::string& name) {
        auto c = preset(name);
        if (!c) throw py::key_error(name);
        return to_json(*c).dump();
      },
      py::arg("name"));
  m.def(
      "simulate",
      [](const std::string& payload_json, bool include_initial) {
        const auto config = config_from(payload_json);
        py::list out;
        if (include_initial) out.append(record_dict(snapshot(prepare_initial(config.initial, config.breakdown))));
        for (const auto& r : run(config)) out.append(record_dict(r));
        return out;
      },
      py::arg("payload_json"), py::arg("include_initial") = true,
      "payload_json: {\"preset\": name, \"steps\"?: n}, {\"config\": {...}} or a bare config");
  m.def(
      "history_csv",
      [](const std::string& payload_json) {
        const auto config = config_from(payload_json);
        std::vector<StepRecord> rows = {snapshot(prepare_initial(config.initial, config.breakdown))};
        const auto rest = run(config);
        rows.insert(rows.end(), rest.begin(), rest.end());
        std::ostringstream out;
        write_history_csv(rows, out);
        return out.str();
      },
      py::arg("payload_json"));
  m.def(
      "fixed_point_wmean",
      [](double target, const Bins& bins, double gdppc, double ceiling_ratio) {
        return fixed_point_wmean(target, {ceiling_ratio}, to_dist(bins), gdppc);
      },
      py::arg("target_wmin"), py::arg("bins"), py::arg("gdppc"), py::arg("ceiling_ratio") = 1.0);
}
