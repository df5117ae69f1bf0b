#include "transeal/report_json.hpp"

namespace transeal {

using nlohmann::json;

json to_json(const pki::CertificateData& data) {
  return {{"subject", data.subject},
          {"issuer", data.issuer},
          {"serial", data.serial},
          {"validityPeriod",
           {{"notBefore", format_utc(data.validity.not_before)},
            {"notAfter", format_utc(data.validity.not_after)}}},
          {"qcStatement", data.qc_statement},
          {"certificateStatus", pki::to_string(data.status)}};
}

json to_json(const pki::AttributeCertificateData& data) {
  json attrs = json::array();
  for (const auto& a : data.attributes) attrs.push_back({{"type", a.type}, {"value", a.value}});
  return {{"issuer", data.issuer}, {"attributes", std::move(attrs)}};
}

json to_json(const pki::ValidationOutcome& outcome) {
  json path = json::array();
  for (const auto& c : outcome.path_report) path.push_back(to_json(c));
  json attrs = json::array();
  for (const auto& a : outcome.attr_report) attrs.push_back(to_json(a));
  return {{"result", pki::to_string(outcome.result)},
          {"detail", outcome.detail},
          {"pathReport", std::move(path)},
          {"attrReport", std::move(attrs)}};
}

json to_json(const SealVerificationReport& report) {
  json authorisation = json::array();
  for (const auto& a : report.authorisation) authorisation.push_back(to_json(a));
  json checks = json::array();
  for (const auto& c : report.checks)
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  json rules = json::array();
  for (const auto& r : report.per_rule)
    rules.push_back({{"ruleId", r.rule_id}, {"passed", r.passed}, {"detail", r.detail}});
  return {{"allOk", report.all_ok()},
          {"sealSignature", to_json(report.seal_signature)},
          {"bindingOk", report.binding_ok},
          {"reportChainOk", report.report_chain_ok},
          {"authorisationOk", report.authorisation_ok},
          {"authorisation", std::move(authorisation)},
          {"sealingTime", format_utc(report.sealing_time)},
          {"signer", report.signer},
          {"checks", std::move(checks)},
          {"perRule", std::move(rules)}};
}

json error_body(const Error& err) {
  json detail = json::object();
  if (!err.rule_id().empty()) detail["ruleId"] = err.rule_id();
  if (err.position()) detail["position"] = *err.position();
  return {{"code", to_string(err.code())}, {"message", err.what()}, {"detail", std::move(detail)}};
}

}  // namespace transeal
