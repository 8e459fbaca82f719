#include "gdpwage/service.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ctime>
#include <fstream>
#include <mutex>
#include <random>
#include <sstream>

#include "gdpwage/errors.hpp"

namespace gdpwage {

namespace fs = std::filesystem;

namespace {

std::string utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::array<char, 32> buf{};
  std::strftime(buf.data(), buf.size(), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf.data();
}

std::string new_session_id() {
  static std::mutex mu;
  static std::random_device device;
  std::lock_guard lock(mu);
  std::ostringstream out;
  out << std::hex;
  for (int i = 0; i < 4; ++i) {
    const std::uint32_t word = device();
    out.width(8);
    out.fill('0');
    out << word;
  }
  return out.str();
}

ServiceError not_found(const std::string& id) {
  return ServiceError(404, "session not found", json{{"id", id}});
}

json validation_detail(const ValidationError& e) {
  json fields = json::array();
  for (const auto& issue : e.issues()) fields.push_back(issue.message);
  return fields;
}

}  // namespace

ServiceError::ServiceError(int status, std::string error, json detail)
    : std::runtime_error(error), status_(status), error_(std::move(error)),
      detail_(std::move(detail)) {}

json ServiceError::body() const { return {{"error", error_}, {"detail", detail_}}; }

struct SessionStore::Session {
  std::string id;
  ScenarioConfig config;
  EconomyState state;
  StepRecord initial;
  std::vector<StepRecord> history;
  std::optional<PolicyAction> pending;
  std::string created_at;
  std::string updated_at;
  fs::path log_path;
  bool removed = false;
  mutable std::shared_mutex mutex;

  void append(const std::vector<json>& lines) {
    std::string blob;
    for (const auto& l : lines) blob += l.dump() + "\n";
    std::ofstream out(log_path, std::ios::binary | std::ios::app);
    out << blob;
    out.flush();
    if (!out) throw ServiceError(500, "failed to write session log", log_path.string());
  }
};

SessionStore::SessionStore(fs::path data_dir) : data_dir_(std::move(data_dir)) {
  fs::create_directories(data_dir_);
  for (const auto& entry : fs::directory_iterator(data_dir_)) {
    if (entry.path().extension() != ".jsonl") continue;
    auto s = load(entry.path());
    sessions_.emplace(s->id, std::move(s));
  }
}

SessionStore::~SessionStore() = default;

std::shared_ptr<SessionStore::Session> SessionStore::load(const fs::path& log) {
  std::ifstream in(log, std::ios::binary);
  std::string line;
  std::vector<json> entries;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      entries.push_back(json::parse(line));
    } catch (const json::parse_error&) {
      // A torn final line from an interrupted write; everything before it stands.
      break;
    }
  }
  if (entries.empty() || entries.front().value("kind", "") != "create") {
    throw std::runtime_error("session log " + log.string() + " has no create record");
  }
  auto s = std::make_shared<Session>();
  const auto& head = entries.front();
  s->id = head.at("id").get<std::string>();
  s->created_at = head.value("created_at", "");
  s->updated_at = s->created_at;
  s->config = config_from_json(head.at("config"));
  s->state = prepare_initial(s->config.initial, s->config.breakdown);
  s->initial = snapshot(s->state);
  s->log_path = log;

  for (std::size_t i = 1; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const auto kind = e.value("kind", "");
    s->updated_at = e.value("at", s->updated_at);
    if (kind == "action") {
      s->pending = action_from_json(e.at("action"));
    } else if (kind == "step") {
      std::optional<PolicyAction> action;
      if (!e.at("action").is_null()) action = action_from_json(e.at("action"));
      auto result = step(s->state, s->config, action);
      const StepRecord logged = record_from_json(e.at("record"));
      if (!(result.record == logged)) {
        throw std::runtime_error("session log " + log.string() +
                                 " does not replay: step " + std::to_string(logged.t));
      }
      s->state = std::move(result.state);
      s->history.push_back(logged);
      s->pending.reset();
    }
  }
  return s;
}

std::shared_ptr<SessionStore::Session> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw not_found(id);
  return it->second;
}

SessionStore::Created SessionStore::create(const json& payload) {
  ScenarioConfig config;
  try {
    config = config_from_payload(payload);
  } catch (const ValidationError& e) {
    throw ServiceError(422, "invalid session payload", validation_detail(e));
  } catch (const DomainError& e) {
    throw ServiceError(422, "invalid session payload", json::array({e.what()}));
  } catch (const json::exception& e) {
    throw ServiceError(422, "invalid session payload", json::array({e.what()}));
  }

  auto s = std::make_shared<Session>();
  s->config = std::move(config);
  s->state = prepare_initial(s->config.initial, s->config.breakdown);
  s->initial = snapshot(s->state);
  s->created_at = utc_now();
  s->updated_at = s->created_at;

  std::unique_lock lock(mutex_);
  do {
    s->id = new_session_id();
  } while (sessions_.count(s->id) > 0);
  s->log_path = data_dir_ / (s->id + ".jsonl");
  s->append({json{{"kind", "create"},
                  {"id", s->id},
                  {"created_at", s->created_at},
                  {"config", to_json(s->config)}}});
  sessions_.emplace(s->id, s);
  return {s->id, s->initial};
}

json SessionStore::describe(const std::string& id) const {
  auto s = find(id);
  std::shared_lock lock(s->mutex);
  if (s->removed) throw not_found(id);
  const StepRecord& latest = s->history.empty() ? s->initial : s->history.back();
  json j = {{"id", s->id},
            {"config", to_json(s->config)},
            {"t", s->state.t},
            {"latest", to_json(latest)},
            {"created_at", s->created_at},
            {"updated_at", s->updated_at}};
  j["pending_action"] = s->pending ? to_json(*s->pending) : json(nullptr);
  return j;
}

void SessionStore::set_action(const std::string& id, const PolicyAction& action) {
  if (!(action.value > 0.0) || !std::isfinite(action.value)) {
    throw ServiceError(422, "invalid action", json::array({"value must be positive"}));
  }
  auto s = find(id);
  std::unique_lock lock(s->mutex);
  if (s->removed) throw not_found(id);
  const auto now = utc_now();
  s->append({json{{"kind", "action"}, {"at", now}, {"action", to_json(action)}}});
  s->pending = action;
  s->updated_at = now;
}

std::vector<StepRecord> SessionStore::advance(const std::string& id, int n) {
  if (n < 1) throw ServiceError(422, "invalid advance", json::array({"n must be at least 1"}));
  auto s = find(id);
  std::unique_lock lock(s->mutex);
  if (s->removed) throw not_found(id);

  EconomyState state = s->state;
  std::optional<PolicyAction> pending = s->pending;
  std::vector<StepRecord> records;
  std::vector<json> lines;
  const auto now = utc_now();
  for (int i = 0; i < n; ++i) {
    try {
      auto result = step(state, s->config, pending);
      lines.push_back(json{{"kind", "step"},
                           {"at", now},
                           {"action", pending ? to_json(*pending) : json(nullptr)},
                           {"record", to_json(result.record)}});
      records.push_back(result.record);
      state = std::move(result.state);
      pending.reset();
    } catch (const DomainError& e) {
      throw ServiceError(409, "simulation step failed",
                         json{{"step", i + 1}, {"t", state.t + 1}, {"reason", e.what()}});
    }
  }
  s->append(lines);
  s->state = std::move(state);
  s->pending.reset();
  s->history.insert(s->history.end(), records.begin(), records.end());
  s->updated_at = now;
  return records;
}

std::vector<StepRecord> SessionStore::history(const std::string& id) const {
  auto s = find(id);
  std::shared_lock lock(s->mutex);
  if (s->removed) throw not_found(id);
  std::vector<StepRecord> out;
  out.reserve(s->history.size() + 1);
  out.push_back(s->initial);
  out.insert(out.end(), s->history.begin(), s->history.end());
  return out;
}

json SessionStore::history_table(const std::string& id,
                                 const std::optional<std::vector<std::string>>& metrics) const {
  const auto& all = record_columns();
  std::vector<std::size_t> picked;
  if (metrics) {
    json unknown = json::array();
    for (const auto& m : *metrics) {
      if (std::find(all.begin(), all.end(), m) == all.end()) unknown.push_back(m);
    }
    if (!unknown.empty()) {
      throw ServiceError(422, "unknown metric", json{{"unknown", unknown}, {"valid", all}});
    }
    picked.push_back(0);
    for (std::size_t c = 1; c < all.size(); ++c) {
      if (std::find(metrics->begin(), metrics->end(), all[c]) != metrics->end()) {
        picked.push_back(c);
      }
    }
  } else {
    for (std::size_t c = 0; c < all.size(); ++c) picked.push_back(c);
  }

  json columns = json::array();
  for (auto c : picked) columns.push_back(all[c]);
  json rows = json::array();
  for (const auto& r : history(id)) {
    const auto values = record_values(r);
    json row = json::array();
    for (auto c : picked) {
      if (c == 0) {
        row.push_back(r.t);
      } else {
        row.push_back(values[c]);
      }
    }
    rows.push_back(std::move(row));
  }
  return {{"columns", columns}, {"rows", rows}};
}

void SessionStore::remove(const std::string& id) {
  std::unique_lock lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw not_found(id);
  auto s = it->second;
  std::unique_lock session_lock(s->mutex);
  std::error_code ec;
  fs::remove(s->log_path, ec);
  if (ec) throw ServiceError(500, "failed to delete session log", ec.message());
  s->removed = true;
  sessions_.erase(it);
}

std::vector<std::string> SessionStore::ids() const {
  std::shared_lock lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, _] : sessions_) out.push_back(id);
  return out;
}

}  // namespace gdpwage
