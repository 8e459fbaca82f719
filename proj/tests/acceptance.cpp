// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <thread>

#include "httplib.h"

#include "gdpwage/core_model.hpp"
#include "gdpwage/http_server.hpp"
#include "gdpwage/indicators.hpp"
#include "gdpwage/scenario_json.hpp"
#include "gdpwage/service.hpp"
#include "gdpwage/simulator.hpp"
#include "oracles.hpp"

using namespace gdpwage;

namespace {

const std::string kData = GDPWAGE_DATA_DIR;
const std::string kCli = GDPWAGE_CLI_PATH;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Outcome identity_suite() {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double pop = std::pow(10.0, 4 + 5 * u(rng));
    const double gdp = pop * std::pow(10.0, 2 + 3 * u(rng));
    const double comp = gdp * (0.1 + 1.1 * u(rng));
    const double hours = 100 + 2500 * u(rng);
    worst = std::max(worst, verify_identity(LaborShareAccount::from_totals(comp, gdp, pop, hours)));
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return {worst <= 1e-12 && secs < 1.0,
          "max residual " + num(worst) + " over 1000 accounts in " + num(secs) + " s"};
}

Outcome deflator_suite() {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double wage = std::pow(10.0, 5 * u(rng));
    const double gdppc = std::pow(10.0, 2 + 5 * u(rng));
    const double deflator = std::pow(10.0, -2 + 4 * u(rng));
    const auto [nominal, real] = deflator_invariance(wage, gdppc, deflator);
    worst = std::max(worst, std::abs(nominal - real) / nominal);
  }
  return {worst <= 1e-12, "max relative gap " + num(worst) + " over 1000 triples"};
}

Outcome hungary_fixture() {
  const auto rows = ratios(read_series(kData + "/hungary.csv"));
  double w2000 = NAN, w2002 = NAN;
  for (const auto& r : rows) {
    if (r.year == 2000) w2000 = r.w_min;
    if (r.year == 2002) w2002 = r.w_min;
  }
  const double rise = w2002 / w2000 - 1.0;
  const auto sim = run(hungary_scenario());
  const double sim_end = sim.back().w_min;
  const bool ok = std::abs(w2000 - 0.406) <= 0.005 && std::abs(w2002 - 0.606) <= 0.005 &&
                  std::abs(rise - 0.49) <= 0.01 && std::abs(sim_end - 0.606) <= 0.005;
  return {ok, "w_min 2000 " + num(w2000) + ", 2002 " + num(w2002) + ", rise " +
                  num(100 * rise) + "%, preset end " + num(sim_end)};
}

Outcome real_plateau() {
  const auto rows = real_series(read_series(kData + "/us_annual.csv"), 1960);
  const std::vector<std::tuple<int, double, double>> want = {
      {1960, 2080, 3842}, {1985, 2090, 4838}, {2001, 2047, 6032}, {2017, 2076, 6643}};
  bool ok = true;
  std::string detail;
  for (auto [year, min, mean] : want) {
    auto it = std::find_if(rows.begin(), rows.end(), [&](auto& r) { return r.year == year; });
    if (it == rows.end()) return {false, "missing year " + std::to_string(year)};
    ok = ok && std::abs(it->real_annual_min_wage - min) <= 50 &&
         std::abs(it->real_annual_mean_wage - mean) <= 80;
    detail += std::to_string(year) + " " + num(it->real_annual_min_wage) + "/" +
              num(it->real_annual_mean_wage) + " ";
  }
  return {ok, detail + "(base 1960)"};
}

Outcome kaitz_divergence_check() {
  const auto table = kaitz_divergence(read_series(kData + "/us_oes.csv"));
  std::vector<double> at45, at40;
  for (const auto& r : table.rows) {
    if (std::abs(r.kaitz - 0.45) < 0.01) at45.push_back(r.min_to_mean);
    if (std::abs(r.kaitz - 0.40) < 0.01) at40.push_back(r.min_to_mean);
  }
  const std::vector<double> w45 = {0.38, 0.37, 0.36, 0.35, 0.34}, w40 = {0.33, 0.31, 0.30};
  bool ok = at45.size() == w45.size() && at40.size() == w40.size();
  std::string detail = "0.45:";
  for (std::size_t i = 0; ok && i < w45.size(); ++i) {
    ok = ok && std::abs(at45[i] - w45[i]) <= 0.01;
    detail += " " + num(at45[i]);
  }
  detail += "; 0.40:";
  for (std::size_t i = 0; ok && i < w40.size(); ++i) {
    ok = ok && std::abs(at40[i] - w40[i]) <= 0.01;
    detail += " " + num(at40[i]);
  }
  return {ok, detail};
}

Outcome threshold_fact() {
  const auto rows = ratios(read_series(kData + "/us_annual.csv"));
  for (const auto& r : rows) {
    if (r.w_min < 0.45) {
      return {r.year > 1983, "first year below 0.45 is " + std::to_string(r.year)};
    }
  }
  return {false, "no year below 0.45"};
}

Outcome simulation_decay() {
  auto c = *preset("us-fixed-nominal");
  c.steps = 30;
  const double w0 = snapshot(prepare_initial(c.initial, c.breakdown)).w_min;
  const double ratio = run(c).back().w_min / w0;
  const double closed = std::pow(1.02, -30);
  return {std::abs(ratio - closed) <= 1e-9,
          "ratio " + num(ratio) + " vs 1.02^-30, gap " + num(std::abs(ratio - closed))};
}

Outcome fixed_point() {
  const auto c = *preset("gdpc-two-thirds");
  const auto r = run(c);
  int converged_at = -1;
  for (std::size_t i = 1; i < r.size(); ++i) {
    if (std::abs(r[i].w_mean - r[i - 1].w_mean) < 1e-6) {
      converged_at = r[i].t;
      break;
    }
  }
  const double fp = fixed_point_wmean(2.0 / 3.0, c.compression, c.initial.dist,
                                      c.initial.gdp_per_capita);
  // pinned-floor iteration, bin by bin in ratio units
  std::vector<double> w = oracle::wages_of(c.initial.dist);
  for (double& x : w) x *= kHoursPerYear / c.initial.gdp_per_capita;
  for (int it = 0; it < 10'000; ++it) {
    const double old_min = w.front();
    for (double& x : w) x = oracle::kernel_move(x, old_min, 2.0 / 3.0, c.compression.ceiling_ratio);
    w.front() = 2.0 / 3.0;
  }
  const double oracle_fp = oracle::brute_mean(w, oracle::masses_of(c.initial.dist));
  const bool ok = converged_at > 0 && converged_at <= 100 &&
                  std::abs(r.back().w_mean - fp) <= 1e-6 && std::abs(fp - oracle_fp) <= 1e-6;
  return {ok, "converged at t=" + std::to_string(converged_at) + ", run tail " +
                  num(r.back().w_mean) + ", fixed point " + num(fp) + ", oracle " +
                  num(oracle_fp)};
}

Outcome compression_properties() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int failures = 0;
  std::string first;
  const auto fail = [&](int i, const std::string& what) {
    if (failures++ == 0) first = "case " + std::to_string(i) + ": " + what;
  };
  for (int i = 0; i < 10'000; ++i) {
    const double floor = 1 + 20 * u(rng);
    const double ceiling = floor + 3 + 60 * u(rng);
    const double gdppc = ceiling * kHoursPerYear;
    const auto d = oracle::random_dist(rng, floor, ceiling * 1.5, 16);
    const double new_min = floor + (ceiling - floor) * 0.999 * u(rng);
    const auto out = compress(d, new_min, {}, gdppc);

    if (oracle::masses_of(out) != oracle::masses_of(d)) fail(i, "mass changed");
    if (out.minimum_wage() != new_min) fail(i, "minimum differs from new_min");
    for (std::size_t b = 0; b < d.size(); ++b) {
      const double before = d.bins()[b].wage, after = out.bins()[b].wage;
      if (after < before) fail(i, "wage decreased");
      if (before >= ceiling && after != before) fail(i, "ceiling wage moved");
      if (b > 0 && !(after > out.bins()[b - 1].wage)) fail(i, "ordering broken");
    }

    // two successive unit raises, while both stay below the ceiling
    if (floor + 2 < ceiling) {
      const auto d1 = compress(d, floor + 1, {}, gdppc);
      const auto d2 = compress(d1, floor + 2, {}, gdppc);
      const double first_step = mean_wage(d1) - mean_wage(d);
      const double second_step = mean_wage(d2) - mean_wage(d1);
      if (second_step < first_step - 1e-12 * ceiling) fail(i, "marginal response fell");
    }
  }
  return {failures == 0, std::to_string(failures) + " failures in 10000 cases" +
                             (first.empty() ? "" : " (" + first + ")")};
}

Outcome horizon_oracle() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int side_mismatch = 0, crossing_misses = 0, crossings = 0;
  double worst = 0.0;
  for (int i = 0; i < 10'000; ++i) {
    const TransformUnit low{0.05 + 4 * u(rng), 50 * u(rng), 30 * u(rng)};
    const TransformUnit high{0.05 + 2 * u(rng), 80 * u(rng), 40 * u(rng)};
    const double diff = (high.labor_hours_per_unit * high.hourly_wage + high.non_labor_cost_per_unit) -
                        (low.labor_hours_per_unit * low.hourly_wage + low.non_labor_cost_per_unit);
    const HorizonSide want = diff > 0   ? HorizonSide::LowCheaper
                             : diff < 0 ? HorizonSide::HighCheaper
                                        : HorizonSide::Equilibrium;
    if (horizon_side(low, high) != want) ++side_mismatch;

    const double w = crossing_wage(low, high);
    if (w <= 1e-6) continue;
    ++crossings;
    const auto side_at = [&](double wage) {
      return horizon_side({low.labor_hours_per_unit, wage, low.non_labor_cost_per_unit}, high);
    };
    if (side_at(w - 1e-6) != HorizonSide::LowCheaper ||
        side_at(w + 1e-6) != HorizonSide::HighCheaper) {
      ++crossing_misses;
    }
    double lo = 0.0, hi = w * 2 + 1;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (side_at(mid) == HorizonSide::HighCheaper ? hi : lo) = mid;
    }
    worst = std::max(worst, std::abs(lo - w));
  }
  const bool ok = side_mismatch == 0 && crossing_misses == 0 && worst <= 1e-6;
  return {ok, std::to_string(side_mismatch) + " side mismatches, " +
                  std::to_string(crossing_misses) + "/" + std::to_string(crossings) +
                  " crossings off by more than 1e-6, bisection gap " + num(worst)};
}

std::string csv_of(const std::vector<StepRecord>& records) {
  std::ostringstream out;
  write_history_csv(records, out);
  return out.str();
}

std::vector<StepRecord> records_of(const json& table) {
  std::vector<StepRecord> out;
  const auto& cols = table.at("columns");
  for (const auto& row : table.at("rows")) {
    json obj;
    for (std::size_t c = 0; c < cols.size(); ++c) obj[cols[c].get<std::string>()] = row[c];
    out.push_back(record_from_json(obj));
  }
  return out;
}

Outcome cross_interface() {
  oracle::TempDir dir;
  const std::vector<std::optional<PolicyAction>> script = {
      PolicyAction{PolicyAction::Kind::Ratio, 0.30}, std::nullopt,
      PolicyAction{PolicyAction::Kind::Ratio, 0.40}, std::nullopt, std::nullopt,
      PolicyAction{PolicyAction::Kind::Floor, 30.0}, std::nullopt,
      PolicyAction{PolicyAction::Kind::Ratio, 0.80}, std::nullopt, std::nullopt};

  // batch side: the script as a manual schedule
  auto batch = *preset("us-baseline");
  batch.rule = rule::Manual{script};
  batch.steps = static_cast<int>(script.size());
  const auto scenario = (dir.path() / "scenario.json").string();
  std::ofstream(scenario) << to_json(batch).dump(2);
  const auto cli_out = oracle::run_command(kCli + " simulate --scenario " + scenario + " 2>/dev/null");
  if (cli_out.exit_code != 0) return {false, "cli exited " + std::to_string(cli_out.exit_code)};

  // interactive side: same economy, empty schedule, actions over HTTP
  auto interactive = batch;
  interactive.rule = rule::Manual{};
  const auto data_dir = dir.path() / "sessions";
  std::string id, served_csv, served_json;
  {
    SessionStore store(data_dir);
    HttpServer server(store);
    if (!server.bind("127.0.0.1", 0)) return {false, "cannot bind test server"};
    std::thread serving([&] { server.listen(); });
    httplib::Client client("127.0.0.1", server.port());
    auto created = client.Post("/api/v1/sessions", json{{"config", to_json(interactive)}}.dump(),
                               "application/json");
    if (created && created->status == 201) {
      id = json::parse(created->body).at("id").get<std::string>();
      for (const auto& action : script) {
        if (action) {
          client.Post("/api/v1/sessions/" + id + "/action", to_json(*action).dump(),
                      "application/json");
        }
        client.Post("/api/v1/sessions/" + id + "/advance", R"({"n":1})", "application/json");
      }
      if (auto h = client.Get("/api/v1/sessions/" + id + "/history")) {
        served_json = h->body;
        served_csv = csv_of(records_of(json::parse(h->body)));
      }
    }
    server.stop();
    serving.join();
  }
  if (id.empty()) return {false, "session creation failed"};

  SessionStore restarted(data_dir);
  const std::string recovered_json = restarted.history_table(id, std::nullopt).dump();
  const std::string recovered_csv = csv_of(restarted.history(id));

  const bool same_run = served_csv == cli_out.out;
  const bool same_restart = recovered_json == served_json && recovered_csv == served_csv;
  return {same_run && same_restart,
          std::string("service vs cli ") + (same_run ? "byte-equal" : "DIFFER") + " (" +
              std::to_string(cli_out.out.size()) + " bytes), restart " +
              (same_restart ? "byte-equal" : "DIFFERS")};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"identity suite", identity_suite},
      {"deflator cancellation", deflator_suite},
      {"hungary fixture", hungary_fixture},
      {"us real-wage plateau", real_plateau},
      {"kaitz divergence", kaitz_divergence_check},
      {"threshold after 1983", threshold_fact},
      {"fixed-nominal decay", simulation_decay},
      {"fixed-point convergence", fixed_point},
      {"compression properties", compression_properties},
      {"horizon oracle", horizon_oracle},
      {"cross-interface determinism", cross_interface},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
