#include "gdpwage/scenario_json.hpp"

#include <cmath>
#include <optional>
#include <ostream>

#include "gdpwage/errors.hpp"
#include "gdpwage/format.hpp"

namespace gdpwage {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Walks a JSON document and records problems instead of throwing on the first.
class FieldReader {
 public:
  std::vector<Issue> issues;

  void fail(const std::string& path, const std::string& message) {
    issues.push_back({0, path + ": " + message});
  }

  const json* object(const json& parent, const std::string& key, const std::string& path,
                     bool required = true) {
    if (!parent.contains(key)) {
      if (required) fail(path, "is required");
      return nullptr;
    }
    const auto& v = parent.at(key);
    if (!v.is_object()) {
      fail(path, "must be an object");
      return nullptr;
    }
    return &v;
  }

  void number(const json& parent, const std::string& key, const std::string& path,
              double& dst, bool required) {
    if (!parent.contains(key)) {
      if (required) fail(path, "is required");
      return;
    }
    const auto& v = parent.at(key);
    if (!v.is_number() || !std::isfinite(v.get<double>())) {
      fail(path, "must be a finite number");
      return;
    }
    dst = v.get<double>();
  }

  void integer(const json& parent, const std::string& key, const std::string& path, int& dst,
               bool required) {
    if (!parent.contains(key)) {
      if (required) fail(path, "is required");
      return;
    }
    const auto& v = parent.at(key);
    if (!v.is_number_integer()) {
      fail(path, "must be an integer");
      return;
    }
    dst = v.get<int>();
  }
};

TransformUnit read_unit(FieldReader& r, const json& j, const std::string& path) {
  TransformUnit u;
  r.number(j, "labor_hours_per_unit", path + ".labor_hours_per_unit", u.labor_hours_per_unit,
           true);
  r.number(j, "hourly_wage", path + ".hourly_wage", u.hourly_wage, false);
  r.number(j, "non_labor_cost_per_unit", path + ".non_labor_cost_per_unit",
           u.non_labor_cost_per_unit, false);
  if (!(u.labor_hours_per_unit > 0.0)) r.fail(path + ".labor_hours_per_unit", "must be positive");
  if (u.hourly_wage < 0.0) r.fail(path + ".hourly_wage", "must be non-negative");
  if (u.non_labor_cost_per_unit < 0.0) {
    r.fail(path + ".non_labor_cost_per_unit", "must be non-negative");
  }
  return u;
}

json unit_to_json(const TransformUnit& u) {
  return {{"labor_hours_per_unit", u.labor_hours_per_unit},
          {"hourly_wage", u.hourly_wage},
          {"non_labor_cost_per_unit", u.non_labor_cost_per_unit}};
}

std::optional<PolicyAction> read_action(FieldReader& r, const json& j, const std::string& path) {
  if (!j.is_object()) {
    r.fail(path, "must be an object with 'ratio' or 'floor'");
    return std::nullopt;
  }
  const bool has_ratio = j.contains("ratio");
  const bool has_floor = j.contains("floor");
  if (has_ratio == has_floor) {
    r.fail(path, "must contain exactly one of 'ratio' or 'floor'");
    return std::nullopt;
  }
  PolicyAction a;
  a.kind = has_ratio ? PolicyAction::Kind::Ratio : PolicyAction::Kind::Floor;
  const std::string key = has_ratio ? "ratio" : "floor";
  double value = 0.0;
  r.number(j, key, path + "." + key, value, true);
  if (!(value > 0.0)) {
    r.fail(path + "." + key, "must be positive");
    return std::nullopt;
  }
  a.value = value;
  return a;
}

PolicyRule read_rule(FieldReader& r, const json& j, const std::string& path) {
  if (!j.contains("type") || !j.at("type").is_string()) {
    r.fail(path + ".type", "is required and must be a string");
    return rule::FixedNominal{};
  }
  const auto type = j.at("type").get<std::string>();
  const auto target = [&](double& dst) {
    r.number(j, "target", path + ".target", dst, true);
    if (!(dst > 0.0 && dst <= 1.2)) r.fail(path + ".target", "must lie in (0, 1.2]");
  };
  if (type == "fixed_nominal") return rule::FixedNominal{};
  if (type == "cpi_indexed") return rule::CpiIndexed{};
  if (type == "kaitz_indexed") {
    rule::KaitzIndexed k;
    target(k.target);
    return k;
  }
  if (type == "gdpc_indexed") {
    rule::GdpcIndexed g;
    target(g.target);
    return g;
  }
  if (type == "gdpc_ramp") {
    rule::GdpcRamp g;
    target(g.target);
    r.number(j, "annual_increment", path + ".annual_increment", g.annual_increment, true);
    if (!(g.annual_increment > 0.0)) r.fail(path + ".annual_increment", "must be positive");
    return g;
  }
  if (type == "manual") {
    rule::Manual m;
    if (j.contains("schedule")) {
      const auto& s = j.at("schedule");
      if (!s.is_array()) {
        r.fail(path + ".schedule", "must be an array");
      } else {
        for (std::size_t i = 0; i < s.size(); ++i) {
          if (s[i].is_null()) {
            m.schedule.emplace_back();
          } else {
            m.schedule.push_back(read_action(r, s[i], path + ".schedule[" + std::to_string(i) + "]"));
          }
        }
      }
    }
    return m;
  }
  r.fail(path + ".type",
         "unknown rule '" + type +
             "' (expected fixed_nominal, cpi_indexed, kaitz_indexed, gdpc_indexed, gdpc_ramp, manual)");
  return rule::FixedNominal{};
}

json rule_to_json(const PolicyRule& rule) {
  json j = {{"type", rule_name(rule)}};
  std::visit(overloaded{
                 [](const rule::FixedNominal&) {},
                 [](const rule::CpiIndexed&) {},
                 [&](const rule::KaitzIndexed& k) { j["target"] = k.target; },
                 [&](const rule::GdpcIndexed& g) { j["target"] = g.target; },
                 [&](const rule::GdpcRamp& g) {
                   j["target"] = g.target;
                   j["annual_increment"] = g.annual_increment;
                 },
                 [&](const rule::Manual& m) {
                   json s = json::array();
                   for (const auto& a : m.schedule) s.push_back(a ? to_json(*a) : json(nullptr));
                   j["schedule"] = s;
                 },
             },
             rule);
  return j;
}

}  // namespace

json to_json(const PolicyAction& action) {
  return {{action.kind == PolicyAction::Kind::Ratio ? "ratio" : "floor", action.value}};
}

PolicyAction action_from_json(const json& j) {
  FieldReader r;
  auto a = read_action(r, j, "action");
  if (!r.issues.empty()) throw ValidationError(std::move(r.issues));
  return *a;
}

json to_json(const ScenarioConfig& c) {
  json dist = json::array();
  for (const auto& b : c.initial.dist.bins()) dist.push_back({{"wage", b.wage}, {"mass", b.mass}});
  return {
      {"initial",
       {{"gdp_per_capita", c.initial.gdp_per_capita},
        {"hours_per_capita", c.initial.hours_per_capita},
        {"price_level", c.initial.price_level},
        {"high_productivity_share", c.initial.high_productivity_share},
        {"distribution", dist},
        {"low_unit", unit_to_json(c.initial.low_unit)},
        {"high_unit", unit_to_json(c.initial.high_unit)}}},
      {"rule", rule_to_json(c.rule)},
      {"real_growth_rate", c.real_growth_rate},
      {"inflation_rate", c.inflation_rate},
      {"compression", {{"ceiling_ratio", c.compression.ceiling_ratio}, {"kernel", "linear"}}},
      {"compensation",
       {{"wage_share", c.breakdown.wage_share},
        {"health_insurance_share", c.breakdown.health_insurance_share},
        {"social_insurance_share", c.breakdown.social_insurance_share},
        {"other_share", c.breakdown.other_share}}},
      {"passthrough_alpha", c.passthrough_alpha},
      {"steps", c.steps},
      {"seed", c.seed},
  };
}

ScenarioConfig config_from_json(const json& j) {
  FieldReader r;
  ScenarioConfig c;
  if (!j.is_object()) throw ValidationError("config must be a JSON object");

  if (const json* init = r.object(j, "initial", "initial")) {
    auto& s = c.initial;
    r.number(*init, "gdp_per_capita", "initial.gdp_per_capita", s.gdp_per_capita, true);
    r.number(*init, "hours_per_capita", "initial.hours_per_capita", s.hours_per_capita, true);
    r.number(*init, "price_level", "initial.price_level", s.price_level, false);
    r.number(*init, "high_productivity_share", "initial.high_productivity_share",
             s.high_productivity_share, false);
    if (!(s.gdp_per_capita > 0.0)) r.fail("initial.gdp_per_capita", "must be positive");
    if (!(s.hours_per_capita > 0.0)) r.fail("initial.hours_per_capita", "must be positive");
    if (!(s.price_level > 0.0)) r.fail("initial.price_level", "must be positive");
    if (!(s.high_productivity_share >= 0.0 && s.high_productivity_share <= 1.0)) {
      r.fail("initial.high_productivity_share", "must lie in [0, 1]");
    }
    if (!init->contains("distribution") || !init->at("distribution").is_array() ||
        init->at("distribution").empty()) {
      r.fail("initial.distribution", "is required and must be a non-empty array");
    } else {
      std::vector<WageBin> bins;
      const auto& arr = init->at("distribution");
      for (std::size_t i = 0; i < arr.size(); ++i) {
        const std::string p = "initial.distribution[" + std::to_string(i) + "]";
        if (!arr[i].is_object()) {
          r.fail(p, "must be an object with wage and mass");
          continue;
        }
        WageBin b;
        r.number(arr[i], "wage", p + ".wage", b.wage, true);
        r.number(arr[i], "mass", p + ".mass", b.mass, true);
        bins.push_back(b);
      }
      if (r.issues.empty()) {
        try {
          s.dist = WageDistribution(std::move(bins));
        } catch (const DomainError& e) {
          r.fail("initial.distribution", e.what());
        }
      }
    }
    if (const json* u = r.object(*init, "low_unit", "initial.low_unit")) {
      s.low_unit = read_unit(r, *u, "initial.low_unit");
    }
    if (const json* u = r.object(*init, "high_unit", "initial.high_unit")) {
      s.high_unit = read_unit(r, *u, "initial.high_unit");
    }
  }

  if (const json* rule = r.object(j, "rule", "rule")) c.rule = read_rule(r, *rule, "rule");

  r.number(j, "real_growth_rate", "real_growth_rate", c.real_growth_rate, false);
  r.number(j, "inflation_rate", "inflation_rate", c.inflation_rate, false);
  if (c.real_growth_rate <= -1.0) r.fail("real_growth_rate", "must exceed -1");
  if (c.inflation_rate <= -1.0) r.fail("inflation_rate", "must exceed -1");

  if (const json* comp = r.object(j, "compression", "compression", false)) {
    r.number(*comp, "ceiling_ratio", "compression.ceiling_ratio", c.compression.ceiling_ratio,
             false);
    if (!(c.compression.ceiling_ratio > 0.0)) r.fail("compression.ceiling_ratio", "must be positive");
    if (comp->contains("kernel") && comp->at("kernel") != "linear") {
      r.fail("compression.kernel", "only 'linear' is supported");
    }
  }
  if (const json* b = r.object(j, "compensation", "compensation", false)) {
    auto& cb = c.breakdown;
    r.number(*b, "wage_share", "compensation.wage_share", cb.wage_share, true);
    r.number(*b, "health_insurance_share", "compensation.health_insurance_share",
             cb.health_insurance_share, true);
    r.number(*b, "social_insurance_share", "compensation.social_insurance_share",
             cb.social_insurance_share, true);
    r.number(*b, "other_share", "compensation.other_share", cb.other_share, true);
    if (!(cb.wage_share > 0.0)) r.fail("compensation.wage_share", "must be positive");
    try {
      cb.validate();
    } catch (const DomainError& e) {
      r.fail("compensation", e.what());
    }
  }
  r.number(j, "passthrough_alpha", "passthrough_alpha", c.passthrough_alpha, false);
  if (!(c.passthrough_alpha >= 0.0 && c.passthrough_alpha <= 1.0)) {
    r.fail("passthrough_alpha", "must lie in [0, 1]");
  }
  r.integer(j, "steps", "steps", c.steps, true);
  if (c.steps < 1) r.fail("steps", "must be at least 1");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) {
      r.fail("seed", "must be a non-negative integer");
    } else {
      c.seed = j.at("seed").get<std::uint64_t>();
    }
  }

  if (r.issues.empty()) {
    try {
      c.validate();
    } catch (const DomainError& e) {
      r.fail("config", e.what());
    }
  }
  if (!r.issues.empty()) throw ValidationError(std::move(r.issues));
  return c;
}

ScenarioConfig config_from_payload(const json& payload) {
  if (!payload.is_object()) throw ValidationError("payload must be a JSON object");
  if (payload.contains("preset")) {
    if (!payload.at("preset").is_string()) throw ValidationError("preset: must be a string");
    const auto name = payload.at("preset").get<std::string>();
    auto c = preset(name);
    if (!c) throw ValidationError("preset: unknown preset '" + name + "'");
    if (payload.contains("steps")) {
      const auto& s = payload.at("steps");
      if (!s.is_number_integer() || s.get<long long>() < 1) {
        throw ValidationError("steps: must be an integer of at least 1");
      }
      c->steps = s.get<int>();
    }
    return *c;
  }
  if (payload.contains("config")) return config_from_json(payload.at("config"));
  return config_from_json(payload);
}

const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> columns = {
      "t",           "nominal_min",
      "w_min",       "w_mean",
      "labor_share", "price_level",
      "high_productivity_share", "gini_proxy"};
  return columns;
}

std::vector<double> record_values(const StepRecord& r) {
  return {static_cast<double>(r.t), r.nominal_min, r.w_min, r.w_mean,
          r.labor_share, r.price_level, r.high_productivity_share, r.gini_proxy};
}

json to_json(const StepRecord& r) {
  return {{"t", r.t},
          {"nominal_min", r.nominal_min},
          {"w_min", r.w_min},
          {"w_mean", r.w_mean},
          {"labor_share", r.labor_share},
          {"price_level", r.price_level},
          {"high_productivity_share", r.high_productivity_share},
          {"gini_proxy", r.gini_proxy}};
}

StepRecord record_from_json(const json& j) {
  StepRecord r;
  r.t = j.at("t").get<int>();
  r.nominal_min = j.at("nominal_min").get<double>();
  r.w_min = j.at("w_min").get<double>();
  r.w_mean = j.at("w_mean").get<double>();
  r.labor_share = j.at("labor_share").get<double>();
  r.price_level = j.at("price_level").get<double>();
  r.high_productivity_share = j.at("high_productivity_share").get<double>();
  r.gini_proxy = j.at("gini_proxy").get<double>();
  return r;
}

void write_history_csv(std::span<const StepRecord> records, std::ostream& out) {
  const auto& cols = record_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
  out << '\n';
  for (const auto& r : records) {
    out << r.t;
    const auto values = record_values(r);
    for (std::size_t i = 1; i < values.size(); ++i) out << ',' << format_number(values[i]);
    out << '\n';
  }
}

}  // namespace gdpwage
