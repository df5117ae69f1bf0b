#pragma once

// A service with its HTTP front end on a free local port, plus a small
// JSON client for it.

#include <httplib.h>

#include <thread>

#include "support/service_fixtures.hpp"
#include "transeal/encoding.hpp"
#include "transeal/http_api.hpp"

namespace fixtures {

struct Reply {
  int status = 0;
  nlohmann::json body;
};

class LiveServer {
 public:
  explicit LiveServer(Clock clock = stepping_clock())
      : service_(service_config(dir_.path()), std::move(clock)), server_(service_) {
    port_ = server_.bind("127.0.0.1", 0);
    thread_ = std::thread([this] { server_.run(); });
    server_.wait_until_ready();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", port_);
    client_->set_read_timeout(30, 0);
  }
  ~LiveServer() {
    server_.stop();
    if (thread_.joinable()) thread_.join();
  }
  LiveServer(const LiveServer&) = delete;
  LiveServer& operator=(const LiveServer&) = delete;

  Reply get(const std::string& path) { return reply(client_->Get(path)); }

  Reply post(const std::string& path, const nlohmann::json& body, bool admin = false) {
    httplib::Headers headers;
    if (admin) headers.emplace("X-Admin-Token", service_.config().admin_token);
    return reply(client_->Post(path, headers, body.dump(), "application/json"));
  }

  Reply post_raw(const std::string& path, const std::string& body) {
    return reply(client_->Post(path, body, "application/json"));
  }

  service::Service& service() { return service_; }
  int port() const { return port_; }

 private:
  static Reply reply(const httplib::Result& r) {
    if (!r) throw std::runtime_error("request failed: " + httplib::to_string(r.error()));
    Reply out{r->status, nlohmann::json::parse(r->body, nullptr, false)};
    return out;
  }

  TempDir dir_;
  service::Service service_;
  http::Server server_;
  int port_ = 0;
  std::thread thread_;
  std::unique_ptr<httplib::Client> client_;
};

inline nlohmann::json seal_body(const std::string& translator_id, const std::string& credential,
                                const std::string& text = "The deed of sale",
                                const std::string& translation = "Der Kaufvertrag") {
  SignedDocumentContainer doc;
  doc.content = text_document(text);
  return {{"translatorId", translator_id},
          {"credential", credential},
          {"source", base64_encode(serialize_document(doc))},
          {"target", base64_encode(to_bytes(translation))},
          {"targetFormat", "text/plain;charset=utf-8"},
          {"sourceLanguage", "en"},
          {"targetLanguage", "de"},
          {"attestation", "I certify that this translation is complete and accurate."},
          {"location", "Vienna"},
          {"conversionConfirmed", true}};
}

}  // namespace fixtures
