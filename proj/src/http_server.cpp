#include "gdpwage/http_server.hpp"

#include <mutex>
#include <sstream>
#include <thread>

#include "httplib.h"

#include "gdpwage/errors.hpp"

namespace gdpwage {
namespace {

constexpr const char* kJson = "application/json";
constexpr const char* kSessionPath = R"(/api/v1/sessions/([A-Za-z0-9]+))";

void send_error(httplib::Response& res, const ServiceError& e) {
  res.status = e.status();
  res.set_content(e.body().dump(), kJson);
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  try {
    return json::parse(req.body);
  } catch (const json::parse_error& e) {
    throw ServiceError(422, "request body is not valid JSON", e.what());
  }
}

template <class Handler>
httplib::Server::Handler guarded(Handler handler) {
  return [handler](const httplib::Request& req, httplib::Response& res) {
    try {
      handler(req, res);
    } catch (const ServiceError& e) {
      send_error(res, e);
    } catch (const ValidationError& e) {
      send_error(res, ServiceError(422, "invalid request", e.what()));
    } catch (const std::exception& e) {
      send_error(res, ServiceError(500, "internal error", e.what()));
    }
  };
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

struct HttpServer::Impl {
  SessionStore& store;
  httplib::Server server;
  std::mutex mutex;
  bool bound = false;
  bool listening = false;
  bool stop_requested = false;

  explicit Impl(SessionStore& s) : store(s) {
    // SO_REUSEADDR only: a second server must not share an occupied port.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    });
    const std::string base = "/api/v1/sessions";
    server.Post(base, guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto created = store.create(parse_body(req));
      res.status = 201;
      res.set_content(json{{"id", created.id}, {"snapshot", to_json(created.snapshot)}}.dump(),
                      kJson);
    }));
    server.Get(kSessionPath, guarded([this](const httplib::Request& req, httplib::Response& res) {
      res.set_content(store.describe(req.matches[1]).dump(), kJson);
    }));
    server.Delete(kSessionPath,
                  guarded([this](const httplib::Request& req, httplib::Response& res) {
                    store.remove(req.matches[1]);
                    res.status = 204;
                  }));
    server.Post(std::string(kSessionPath) + "/action",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const json body = parse_body(req);
                  PolicyAction action;
                  try {
                    action = action_from_json(body);
                  } catch (const ValidationError& e) {
                    json detail = json::array();
                    for (const auto& i : e.issues()) detail.push_back(i.message);
                    throw ServiceError(422, "invalid action", detail);
                  }
                  store.set_action(req.matches[1], action);
                  res.status = 204;
                }));
    server.Post(std::string(kSessionPath) + "/advance",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  const json body = parse_body(req);
                  if (!body.contains("n") || !body.at("n").is_number_integer()) {
                    throw ServiceError(422, "invalid advance",
                                       json::array({"n: must be a positive integer"}));
                  }
                  const auto n = body.at("n").get<long long>();
                  if (n < 1 || n > 100000) {
                    throw ServiceError(422, "invalid advance",
                                       json::array({"n: must lie in [1, 100000]"}));
                  }
                  json records = json::array();
                  for (const auto& r : store.advance(req.matches[1], static_cast<int>(n))) {
                    records.push_back(to_json(r));
                  }
                  res.set_content(json{{"records", records}}.dump(), kJson);
                }));
    server.Get(std::string(kSessionPath) + "/history",
               guarded([this](const httplib::Request& req, httplib::Response& res) {
                 std::optional<std::vector<std::string>> metrics;
                 if (req.has_param("metrics")) metrics = split_list(req.get_param_value("metrics"));
                 res.set_content(store.history_table(req.matches[1], metrics).dump(), kJson);
               }));
    server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
      if (!res.body.empty()) return;
      res.set_content(json{{"error", httplib::status_message(res.status)}, {"detail", nullptr}}.dump(),
                      kJson);
    });
  }
};

HttpServer::HttpServer(SessionStore& store) : impl_(std::make_unique<Impl>(store)) {}

HttpServer::~HttpServer() {
  // Only a running server releases its bound socket, so run it and stop at once.
  if (impl_->bound && !impl_->listening) {
    stop();
    listen();
  }
}

bool HttpServer::bind(const std::string& host, int port) {
  if (port == 0) {
    port_ = impl_->server.bind_to_any_port(host);
    impl_->bound = port_ > 0;
    return impl_->bound;
  }
  if (!impl_->server.bind_to_port(host, port)) return false;
  port_ = port;
  impl_->bound = true;
  return true;
}

bool HttpServer::listen() {
  bool stop_now = false;
  {
    std::lock_guard lock(impl_->mutex);
    impl_->listening = true;
    stop_now = impl_->stop_requested;
  }
  std::thread stopper;
  if (stop_now) {
    stopper = std::thread([this] {
      impl_->server.wait_until_ready();
      impl_->server.stop();
    });
  }
  const bool ok = impl_->server.listen_after_bind();
  if (stopper.joinable()) stopper.join();
  return ok;
}

void HttpServer::stop() {
  {
    std::lock_guard lock(impl_->mutex);
    impl_->stop_requested = true;
    if (!impl_->listening) return;
  }
  impl_->server.wait_until_ready();
  impl_->server.stop();
}

std::pair<std::string, int> parse_bind_address(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) return {text, 8750};
  const std::string host = text.substr(0, colon);
  const std::string port_text = text.substr(colon + 1);
  int port = 0;
  try {
    std::size_t used = 0;
    port = std::stoi(port_text, &used);
    if (used != port_text.size()) throw std::invalid_argument(port_text);
  } catch (const std::exception&) {
    throw ValidationError("invalid port in bind address '" + text + "'");
  }
  if (port < 0 || port > 65535) throw ValidationError("port out of range in '" + text + "'");
  return {host.empty() ? std::string("127.0.0.1") : host, port};
}

}  // namespace gdpwage
