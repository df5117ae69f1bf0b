#include "transeal/http_api.hpp"

#include <httplib.h>

#include <iostream>

#include "transeal/report_json.hpp"

namespace transeal::http {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const Error& err) {
  send_json(res, status_for(err.code()), error_body(err));
}

json parse_body(const httplib::Request& req) {
  try {
    auto j = json::parse(req.body);
    if (!j.is_object()) fail(ErrorCode::ParseError, "request body must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, "request body is not valid JSON", {}, e.byte);
  }
}

std::string text_field(const json& j, const char* name, bool required = true) {
  if (!j.contains(name) || j[name].is_null()) {
    if (required) fail(ErrorCode::ParseError, std::string("missing field '") + name + "'");
    return {};
  }
  if (!j[name].is_string()) fail(ErrorCode::ParseError, std::string("field '") + name + "' must be a string");
  return j[name].get<std::string>();
}

std::optional<std::string> optional_text(const json& j, const char* name) {
  if (!j.contains(name) || j[name].is_null()) return std::nullopt;
  return text_field(j, name);
}

std::vector<service::LanguagePair> language_pairs(const json& j) {
  if (!j.is_array()) fail(ErrorCode::ParseError, "languages must be an array");
  std::vector<service::LanguagePair> out;
  for (const auto& p : j) {
    if (!p.is_object()) fail(ErrorCode::ParseError, "language pair must be an object");
    out.push_back({text_field(p, "source"), text_field(p, "target")});
  }
  return out;
}

// Runs a handler, mapping library and JSON errors to error bodies.
template <class F>
httplib::Server::Handler guarded(F f) {
  return [f](const httplib::Request& req, httplib::Response& res) {
    try {
      f(req, res);
    } catch (const Error& e) {
      send_error(res, e);
    } catch (const json::exception& e) {
      send_error(res, Error(ErrorCode::ParseError, std::string("malformed request: ") + e.what()));
    }
  };
}

}  // namespace

int status_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidLanguageTag:
    case ErrorCode::InvariantViolation:
    case ErrorCode::OutOfDomain:
      return 400;
    case ErrorCode::Unauthorised: return 401;
    case ErrorCode::RevokedTranslator: return 403;
    case ErrorCode::NotFound: return 404;
    case ErrorCode::DuplicateName: return 409;
    case ErrorCode::IoError:
    case ErrorCode::EntropyFailure:
    case ErrorCode::ConfigError:
      return 500;
    default: return 422;
  }
}

service::SealRequest seal_request_from_json(const json& body) {
  service::SealRequest r;
  r.translator_id = text_field(body, "translatorId");
  r.credential = text_field(body, "credential");
  r.source_container = base64_decode(text_field(body, "source"));
  auto& in = r.input;
  const auto target_format = text_field(body, "targetFormat");
  in.target = DocumentContent::make(base64_decode(text_field(body, "target")), target_format);
  in.classification.target_format = target_format;
  in.classification.source_format = text_field(body, "sourceFormat", false);
  in.classification.language.source_language = text_field(body, "sourceLanguage");
  in.classification.language.target_language = text_field(body, "targetLanguage");
  if (body.contains("transliterations"))
    for (const auto& t : body["transliterations"])
      in.classification.language.transliterations.push_back({text_field(t, "script"), text_field(t, "standard")});
  in.classification.language.calendar_conversion = optional_text(body, "calendarConversion");
  if (body.contains("defects") && !body["defects"].is_null())
    in.defects = body["defects"].get<std::vector<std::string>>();
  in.comments = optional_text(body, "comments");
  in.accuracy_attestation = text_field(body, "attestation");
  in.sealing_location = text_field(body, "location");
  in.conversion_assay_confirmed = body.value("conversionConfirmed", false);
  in.sealing_time_source = optional_text(body, "sealingTimeSource");
  return r;
}

struct Server::Impl {
  service::Service& svc;
  httplib::Server server;

  explicit Impl(service::Service& s) : svc(s) { routes(); }

  void require_admin(const httplib::Request& req) const {
    const auto& token = svc.config().admin_token;
    if (token.empty() || req.get_header_value("X-Admin-Token") != token)
      fail(ErrorCode::Unauthorised, "admin token required");
  }

  void routes() {
    server.Get("/healthz", guarded([](const auto&, auto& res) { send_json(res, 200, {{"status", "ok"}}); }));

    server.Post("/translators", guarded([this](const auto& req, auto& res) {
      const auto body = parse_body(req);
      if (!body.contains("languages")) fail(ErrorCode::ParseError, "missing field 'languages'");
      auto rec = svc.register_translator(text_field(body, "name"), language_pairs(body["languages"]),
                                         text_field(body, "districtCourt"), text_field(body, "credential"));
      send_json(res, 201, service::public_view(rec));
    }));

    server.Post("/translators/:id/authorise", guarded([this](const auto& req, auto& res) {
      send_json(res, 200, service::public_view(svc.authorise(req.path_params.at("id"))));
    }));

    server.Post("/translators/:id/revoke", guarded([this](const auto& req, auto& res) {
      require_admin(req);
      send_json(res, 200, service::public_view(svc.revoke(req.path_params.at("id"))));
    }));

    server.Get("/translators/:id", guarded([this](const auto& req, auto& res) {
      send_json(res, 200, service::public_view(svc.lookup(req.path_params.at("id"))));
    }));

    server.Post("/seals/verify", guarded([this](const auto& req, auto& res) {
      const auto body = parse_body(req);
      const Bytes tseal = base64_decode(text_field(body, "tseal"));
      send_json(res, 200, to_json(svc.verify(tseal)));
    }));

    server.Post("/seals", guarded([this](const auto& req, auto& res) {
      const auto job = svc.create_seal(seal_request_from_json(parse_body(req)));
      send_json(res, 201, {{"jobId", job.job_id}, {"tseal", base64_encode(job.tseal)}});
    }));

    server.Get("/seals/:job", guarded([this](const auto& req, auto& res) {
      const auto job = svc.fetch_seal(req.path_params.at("job"));
      send_json(res, 200,
                {{"jobId", job.job_id}, {"translatorId", job.translator_id}, {"tseal", base64_encode(job.tseal)}});
    }));

    server.Post("/admin/directory", guarded([this](const auto& req, auto& res) {
      require_admin(req);
      const auto body = parse_body(req);
      if (!body.contains("languages")) fail(ErrorCode::ParseError, "missing field 'languages'");
      svc.directory_add(text_field(body, "authority"),
                        {text_field(body, "name"), language_pairs(body["languages"])});
      send_json(res, 200, {{"status", "listed"}});
    }));

    server.Post("/admin/directory/remove", guarded([this](const auto& req, auto& res) {
      require_admin(req);
      const auto body = parse_body(req);
      svc.directory_remove(text_field(body, "authority"), text_field(body, "name"));
      send_json(res, 200, {{"status", "delisted"}});
    }));

    server.set_exception_handler([](const auto&, auto& res, std::exception_ptr) {
      send_json(res, 500, {{"code", "InternalError"}, {"message", "internal error"}, {"detail", json::object()}});
    });
    // Paths and status only; bodies may carry credentials.
    server.set_logger([](const auto& req, const auto& res) {
      std::clog << req.method << ' ' << req.path << ' ' << res.status << '\n';
    });
  }
};

Server::Server(service::Service& service) : impl_(std::make_unique<Impl>(service)) {}
Server::~Server() { stop(); }

int Server::bind(const std::string& host, int port) {
  if (port == 0) {
    const int bound = impl_->server.bind_to_any_port(host);
    if (bound < 0) fail(ErrorCode::IoError, "cannot bind " + host);
    return bound;
  }
  if (!impl_->server.bind_to_port(host, port))
    fail(ErrorCode::IoError, "cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void Server::run() { impl_->server.listen_after_bind(); }
void Server::stop() {
  if (impl_) impl_->server.stop();
}
void Server::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace transeal::http
