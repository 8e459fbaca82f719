#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <vector>

#include "gdpwage/scenario_json.hpp"
#include "gdpwage/simulator.hpp"

namespace gdpwage {

/// Error carrying the HTTP status the service maps it to (404, 409, 422, 500).
class ServiceError : public std::runtime_error {
 public:
  ServiceError(int status, std::string error, json detail = nullptr);
  int status() const noexcept { return status_; }
  const std::string& error() const noexcept { return error_; }
  const json& detail() const noexcept { return detail_; }
  json body() const;

 private:
  int status_;
  std::string error_;
  json detail_;
};

/// Interactive simulation sessions backed by one append-only JSON-lines log
/// per session. Mutations of one session are serialized; distinct sessions
/// proceed in parallel.
class SessionStore {
 public:
  /// Opens (creating if needed) `data_dir` and recovers every logged session.
  explicit SessionStore(std::filesystem::path data_dir);
  ~SessionStore();

  SessionStore(const SessionStore&) = delete;
  SessionStore& operator=(const SessionStore&) = delete;

  struct Created {
    std::string id;
    StepRecord snapshot;
  };

  Created create(const json& payload);

  /// {config, t, latest}
  json describe(const std::string& id) const;

  /// Stores the floor decision for the next advance, replacing any earlier one.
  void set_action(const std::string& id, const PolicyAction& action);

  /// Steps the session `n` years; all-or-nothing.
  std::vector<StepRecord> advance(const std::string& id, int n);

  /// t = 0 snapshot followed by every step taken.
  std::vector<StepRecord> history(const std::string& id) const;

  /// {columns, rows}; `metrics` filters data columns, t is always first.
  json history_table(const std::string& id,
                     const std::optional<std::vector<std::string>>& metrics) const;

  void remove(const std::string& id);

  std::vector<std::string> ids() const;
  const std::filesystem::path& data_dir() const noexcept { return data_dir_; }

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& id) const;
  std::shared_ptr<Session> load(const std::filesystem::path& log);

  std::filesystem::path data_dir_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
};

}  // namespace gdpwage
