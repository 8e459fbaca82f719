// gdpwage: indicator pipeline, scenario runner and session service.
//
// Exit codes: 0 success, 1 runtime error, 2 usage or validation error.

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "gdpwage/errors.hpp"
#include "gdpwage/format.hpp"
#include "gdpwage/http_server.hpp"
#include "gdpwage/indicators.hpp"
#include "gdpwage/scenario_json.hpp"
#include "gdpwage/service.hpp"
#include "gdpwage/simulator.hpp"

namespace {

using namespace gdpwage;

constexpr int kOk = 0;
constexpr int kRuntimeError = 1;
constexpr int kUsageError = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& out_path, const std::string& data) {
  if (out_path == "-") {
    std::cout << data << std::flush;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + out_path);
  out << data;
}

Series load_series(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  auto parsed = parse_series_csv(in);
  if (!parsed.issues.empty()) throw ValidationError(std::move(parsed.issues));
  return std::move(parsed.rows);
}

int cmd_validate(const std::string& input) {
  std::ifstream in(input, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << input << "\n";
    return kRuntimeError;
  }
  const auto parsed = parse_series_csv(in);
  for (const auto& issue : parsed.issues) {
    std::cerr << input << ":" << issue.line << ": " << issue.message << "\n";
  }
  if (!parsed.issues.empty()) return kUsageError;
  std::cerr << input << ": ok, " << parsed.rows.size() << " rows\n";
  return kOk;
}

int cmd_indicators(const std::string& input, const std::vector<std::string>& series_names,
                   std::optional<int> base_year, const std::string& out_path) {
  const std::vector<std::string> known = {"wmin", "wmean", "kaitz", "min_mean", "nonsup", "real"};
  for (const auto& name : series_names) {
    if (std::find(known.begin(), known.end(), name) == known.end()) {
      throw UsageError("unknown series '" + name +
                       "' (valid: wmin, wmean, kaitz, min_mean, nonsup, real)");
    }
  }
  const Series series = load_series(input);
  const auto rows = ratios(series);
  const auto wants = [&](const char* n) {
    return std::find(series_names.begin(), series_names.end(), n) != series_names.end();
  };
  const auto require_column = [&](auto has, const char* column) {
    if (std::none_of(series.begin(), series.end(), has)) {
      throw ValidationError(std::string("column ") + column + " has no values in " + input);
    }
  };

  std::vector<RealWageRow> real;
  if (wants("real")) {
    if (!base_year) throw UsageError("--series real requires --base-year");
    real = real_series(series, *base_year);
  }
  if (wants("kaitz")) {
    require_column([](const AnnualObservation& r) { return r.median_wage_hourly.has_value(); },
                   "median_wage_hourly");
  }
  if (wants("nonsup")) {
    require_column(
        [](const AnnualObservation& r) { return r.nonsupervisory_wage_hourly.has_value(); },
        "nonsupervisory_wage_hourly");
  }

  Table t;
  t.columns.push_back("year");
  for (const auto& name : series_names) {
    if (name == "wmin") t.columns.push_back("w_min");
    if (name == "wmean") t.columns.push_back("w_mean");
    if (name == "kaitz") t.columns.push_back("kaitz");
    if (name == "min_mean") t.columns.push_back("min_to_mean");
    if (name == "nonsup") t.columns.push_back("min_to_nonsupervisory");
    if (name == "real") {
      t.columns.push_back("real_annual_min_wage");
      t.columns.push_back("real_annual_mean_wage");
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& w = rows[i];
    std::vector<std::optional<double>> row = {static_cast<double>(w.year)};
    for (const auto& name : series_names) {
      if (name == "wmin") row.push_back(w.w_min);
      if (name == "wmean") row.push_back(w.w_mean);
      if (name == "kaitz") row.push_back(w.kaitz);
      if (name == "min_mean") row.push_back(w.min_to_mean);
      if (name == "nonsup") row.push_back(w.min_to_nonsupervisory);
      if (name == "real") {
        row.push_back(real[i].real_annual_min_wage);
        row.push_back(real[i].real_annual_mean_wage);
      }
    }
    t.rows.push_back(std::move(row));
  }
  std::ostringstream out;
  write_csv(t, out);
  emit(out_path, out.str());
  return kOk;
}

int cmd_figures(const std::string& input, const std::string& fig, const std::string& out_path) {
  const auto which = parse_figure(fig);
  if (!which) {
    std::string names;
    for (const auto& n : figure_names()) names += (names.empty() ? "" : ", ") + n;
    throw UsageError("unknown figure '" + fig + "' (valid: " + names + ")");
  }
  const auto table = figure_series(load_series(input), *which);
  std::ostringstream out;
  write_csv(table, out);
  emit(out_path, out.str());
  return kOk;
}

int cmd_simulate(const std::string& scenario_path, const std::string& preset_name,
                 std::optional<int> steps, const std::string& out_path) {
  if (scenario_path.empty() == preset_name.empty()) {
    throw UsageError("give exactly one of --scenario or --preset");
  }
  ScenarioConfig config;
  if (!preset_name.empty()) {
    auto p = preset(preset_name);
    if (!p) {
      std::string names;
      for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
      throw UsageError("unknown preset '" + preset_name + "' (valid: " + names + ")");
    }
    config = *p;
  } else {
    std::ifstream in(scenario_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + scenario_path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw std::runtime_error(scenario_path + ": " + e.what());
    }
    try {
      config = config_from_payload(j);
    } catch (const ValidationError& e) {
      throw std::runtime_error(scenario_path + ": " + e.what());
    }
  }
  if (steps) {
    if (*steps < 1) throw UsageError("--steps must be at least 1");
    config.steps = *steps;
  }

  const auto records = run(config);
  std::vector<StepRecord> history;
  history.push_back(snapshot(prepare_initial(config.initial, config.breakdown)));
  history.insert(history.end(), records.begin(), records.end());
  std::ostringstream out;
  write_history_csv(history, out);
  emit(out_path, out.str());
  const auto& last = history.back();
  std::cerr << "final t=" << last.t << " w_min=" << format_number(last.w_min)
            << " w_mean=" << format_number(last.w_mean)
            << " gini_proxy=" << format_number(last.gini_proxy) << "\n";
  return kOk;
}

int cmd_serve(const std::string& bind_text, const std::string& data_dir) {
  const auto [host, port] = parse_bind_address(bind_text);

  // Route SIGINT/SIGTERM to a waiter thread instead of an async handler.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  SessionStore store(data_dir);
  HttpServer server(store);
  if (!server.bind(host, port)) {
    std::cerr << "error: cannot bind " << host << ":" << port << "\n";
    return kRuntimeError;
  }
  std::cerr << "serving on http://" << host << ":" << server.port() << "/api/v1 (data: "
            << data_dir << ", " << store.ids().size() << " sessions recovered)\n";

  std::thread waiter([&server, signals] {
    int sig = 0;
    sigwait(&signals, &sig);
    server.stop();
  });
  server.listen();
  // listen() can also return on its own; wake the waiter so it can be joined.
  pthread_kill(waiter.native_handle(), SIGTERM);
  waiter.join();
  std::cerr << "stopped\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Minimum wage as a share of per-capita GDP: indicators, scenarios, sessions"};
  app.require_subcommand(1);

  std::string input, out_path = "-", fig, scenario, preset_name, bind = "127.0.0.1:8750";
  std::vector<std::string> series_names;
  std::optional<int> base_year, steps;
  const char* env_dir = std::getenv("GDPWAGE_DATA_DIR");
  std::string data_dir = env_dir ? env_dir : "gdpwage-sessions";

  auto* validate = app.add_subcommand("validate", "check an indicators CSV against the schema");
  validate->add_option("--input", input, "CSV file")->required();

  auto* indicators = app.add_subcommand("indicators", "compute ratio series from a CSV");
  indicators->add_option("--input", input, "CSV file")->required();
  indicators->add_option("--series", series_names, "wmin,wmean,kaitz,min_mean,nonsup,real")
      ->delimiter(',')
      ->required();
  indicators->add_option("--base-year", base_year, "deflator base year for 'real'");
  indicators->add_option("--out", out_path, "output path, '-' for stdout");

  auto* figures = app.add_subcommand("figures", "emit the numeric series behind a figure");
  figures->add_option("--input", input, "CSV file")->required();
  figures->add_option("--fig", fig, "min-gdp-union | min-mean-scatter | min-gini")->required();
  figures->add_option("--out", out_path, "output path, '-' for stdout");

  auto* simulate = app.add_subcommand("simulate", "run a policy scenario");
  simulate->add_option("--scenario", scenario, "scenario JSON file");
  simulate->add_option("--preset", preset_name,
                       "hungary | us-baseline | us-fixed-nominal | gdpc-two-thirds");
  simulate->add_option("--steps", steps, "override the number of years");
  simulate->add_option("--out", out_path, "output path, '-' for stdout");

  auto* serve = app.add_subcommand("serve", "run the session HTTP service");
  serve->add_option("--bind", bind, "host:port")->capture_default_str();
  serve->add_option("--data-dir", data_dir, "session log directory (env GDPWAGE_DATA_DIR)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*validate) return cmd_validate(input);
    if (*indicators) return cmd_indicators(input, series_names, base_year, out_path);
    if (*figures) return cmd_figures(input, fig, out_path);
    if (*simulate) return cmd_simulate(scenario, preset_name, steps, out_path);
    if (*serve) return cmd_serve(bind, data_dir);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const ValidationError& e) {
    for (const auto& issue : e.issues()) {
      std::cerr << "error: ";
      if (issue.line > 0) std::cerr << "line " << issue.line << ": ";
      std::cerr << issue.message << "\n";
    }
    return kUsageError;
  } catch (const SimulationError& e) {
    std::cerr << "error: step " << e.step() << ": " << e.reason() << "\n";
    return kRuntimeError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kRuntimeError;
  }
  return kUsageError;
}
