#pragma once

// JSON views shared by the CLI (--json) and the HTTP API.

#include <json.hpp>

#include "transeal/error.hpp"
#include "transeal/verify_seal.hpp"

namespace transeal {

nlohmann::json to_json(const pki::CertificateData& data);
nlohmann::json to_json(const pki::AttributeCertificateData& data);
nlohmann::json to_json(const pki::ValidationOutcome& outcome);
nlohmann::json to_json(const SealVerificationReport& report);

// {code, message, detail}; detail carries the rule id and offset when set.
nlohmann::json error_body(const Error& err);

}  // namespace transeal
