#pragma once

// HTTP + JSON front end of the service. Binary payloads travel as base64,
// timestamps as ISO 8601 UTC, errors as {code, message, detail}.
//
//   POST /translators                    register
//   POST /translators/{id}/authorise     check the court directory
//   POST /translators/{id}/revoke        admin
//   GET  /translators/{idOrName}         public directory view
//   POST /seals                          create a seal; returns jobId and tseal
//   GET  /seals/{jobId}                  fetch a produced seal
//   POST /seals/verify                   verification report
//   GET  /healthz
//   POST /admin/directory                admin: list a translator at a court
//   POST /admin/directory/remove         admin: delist a translator
//
// Admin endpoints require the X-Admin-Token header.

#include <memory>
#include <string>

#include "transeal/service.hpp"

namespace transeal::http {

class Server {
 public:
  explicit Server(service::Service& service);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws IoError.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void run();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// HTTP status for an error code.
int status_for(ErrorCode code);

// Decodes a POST /seals body into a seal request. Throws ParseError.
service::SealRequest seal_request_from_json(const nlohmann::json& body);

}  // namespace transeal::http
