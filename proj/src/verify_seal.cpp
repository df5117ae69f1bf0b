#include "transeal/verify_seal.hpp"

#include <algorithm>

#include "transeal/digest.hpp"
#include "transeal/workflow.hpp"

namespace transeal {

namespace {

class Checks {
 public:
  explicit Checks(std::vector<CheckResult>& out) : out_(out) {}
  bool add(std::string name, bool passed, std::string detail) {
    out_.push_back({std::move(name), passed, std::move(detail)});
    return passed;
  }

 private:
  std::vector<CheckResult>& out_;
};

std::string payload_text(const ActivityData* rec, std::string_view name) {
  if (!rec) return {};
  const auto* e = rec->payload.find(name);
  return e ? e->text : std::string{};
}

const pki::AttributeCertificate* role_certificate(const pki::EmbeddedSignature& sig) {
  for (const auto& ac : sig.attribute_certificates)
    if (ac.attribute(pki::kRoleAttribute)) return &ac;
  return nullptr;
}

bool check_binding(const SealedTranslation& st, Checks& checks) {
  const auto& seal = st.seal;
  const auto& report = seal.workflow_report;
  const auto& target = st.target_content;
  bool ok = true;

  const std::string target_id = compute_content_id(target.bytes);
  ok &= checks.add("targetDigest", target_id == seal.target_digest && target_id == target.content_id,
                   target_id == seal.target_digest ? "target bytes match the sealed digest"
                                                   : "target bytes do not match the sealed digest");

  const auto* cls = report.find(Activity::Classification);
  const auto* conv = report.find(Activity::Conversion);
  const auto* ta = report.find(Activity::TransformationAssay);

  const bool format_ok = payload_text(cls, "TargetFormat") == target.format_id &&
                         payload_text(conv, "TargetFormat") == target.format_id;
  ok &= checks.add("targetFormat", format_ok,
                   format_ok ? "target format '" + target.format_id + "' matches the report"
                             : "target format '" + target.format_id + "' differs from the report");

  const bool conv_ok = payload_text(conv, "TargetContentId") == target_id &&
                       payload_text(ta, "TargetDigest") == seal.target_digest;
  ok &= checks.add("targetAssociation", conv_ok,
                   conv_ok ? "conversion and assay records name the sealed target"
                           : "workflow report names a different target");

  const bool annotation_ok =
      payload_text(ta, "AnnotationDigest") == compute_content_id(canonicalize(to_xml(seal.annotation)));
  ok &= checks.add("annotationDigest", annotation_ok,
                   annotation_ok ? "assay record matches the annotation"
                                 : "assay record names a different annotation");

  const auto& source = seal.annotation.original_document.container;
  const std::string source_id = compute_content_id(source.content.bytes);
  bool source_ok = source_id == source.content.content_id && source_id == report.source_content_id &&
                   payload_text(cls, "SourceContentId") == source_id;
  for (const auto& rec : report.records) source_ok &= rec.source_content_id == source_id;
  ok &= checks.add("sourceContentId", source_ok,
                   source_ok ? "embedded source " + source_id + " named consistently"
                             : "source content id is not constant across the seal");

  bool rules_ok = !report.rule_set_digest.empty();
  for (const auto& rec : report.records) rules_ok &= rec.rule_set_digest == report.rule_set_digest;
  ok &= checks.add("ruleSetDigest", rules_ok,
                   rules_ok ? "every record names rule-set " + report.rule_set_digest
                            : "rule-set digest is not constant across the report");

  const bool sigs_ok = seal.annotation.original_signatures.size() == source.signatures.size();
  ok &= checks.add("originalSignatures", sigs_ok,
                   std::to_string(seal.annotation.original_signatures.size()) + " reported, " +
                       std::to_string(source.signatures.size()) + " embedded");

  const auto* ac = role_certificate(seal.seal_signature);
  const auto& ann = seal.annotation;
  bool attrs_ok = true;
  if (ann.translator_role) attrs_ok &= ac && ac->attribute(pki::kRoleAttribute) == ann.translator_role;
  if (ann.translator_authority)
    attrs_ok &= ac && ac->attribute(pki::kAuthorityAttribute) == ann.translator_authority;
  ok &= checks.add("translatorAttributes", attrs_ok,
                   attrs_ok ? "annotation role and authority match the attribute certificate"
                            : "annotation role or authority differs from the attribute certificate");
  return ok;
}

bool check_chain(const SealedTranslation& st, Checks& checks) {
  const auto& report = st.seal.workflow_report;
  bool ok = true;
  bool order_ok = report.records.size() == std::size(kActivityOrder);
  for (std::size_t i = 0; order_ok && i < report.records.size(); ++i)
    order_ok = report.records[i].activity == kActivityOrder[i];
  ok &= checks.add("activityOrder", order_ok,
                   order_ok ? "five activities in workflow order"
                            : "activities are missing or out of order");

  const auto& chain = st.seal.seal_signature.certificate_chain;
  const pki::PublicKey* signer = chain.empty() ? nullptr : &chain.front().public_key;
  const auto chain_check = check_report_chain(report, signer);
  ok &= checks.add("hashChain", chain_check.ok && signer, chain_check.detail);

  bool outcomes_ok = true;
  for (const auto& rec : report.records)
    for (const auto& o : rec.rule_outcomes) outcomes_ok &= o.passed;
  ok &= checks.add("ruleOutcomes", outcomes_ok,
                   outcomes_ok ? "every recorded rule passed" : "the report records a failed rule");
  return ok;
}

}  // namespace

SealVerificationReport verify_seal(const SealedTranslation& sealed, const pki::TrustAnchors& anchors,
                                   const pki::RevocationRegistry& registry) {
  SealVerificationReport out;
  Checks checks(out.checks);
  const auto& seal = sealed.seal;
  const auto& sig = seal.seal_signature;
  const Timestamp at = seal.annotation.sealing_time.time;
  out.sealing_time = at;
  if (!sig.certificate_chain.empty()) out.signer = sig.certificate_chain.front().subject;

  out.seal_signature = pki::verify_signature(seal_signing_input(seal), sig, anchors, registry, at);
  const bool time_ok = sig.signing_time == seal.annotation.sealing_time;
  if (!time_ok) {
    out.seal_signature.result = pki::ValidationResult::Invalid;
    out.seal_signature.detail = "signing time differs from the annotation's sealing time";
  }
  checks.add("sealSignature", out.seal_signature.result == pki::ValidationResult::Valid,
             out.seal_signature.detail.empty() ? std::string(pki::to_string(out.seal_signature.result))
                                               : out.seal_signature.detail);

  out.binding_ok = check_binding(sealed, checks);
  out.report_chain_ok = check_chain(sealed, checks);

  for (const auto& ac : sig.attribute_certificates)
    out.authorisation.push_back(pki::report_attribute_certificate(ac));
  if (const auto* ac = role_certificate(sig)) {
    const auto check = pki::check_attribute_certificate(*ac, anchors, registry, at);
    out.authorisation_ok = check.ok();
    checks.add("authorisation", check.ok(),
               check.ok() ? "role '" + *ac->attribute(pki::kRoleAttribute) + "' valid at sealing time"
                          : check.detail);
  } else {
    checks.add("authorisation", false, "no attribute certificate with a role attribute");
  }

  for (const auto& rec : seal.workflow_report.records)
    out.per_rule.insert(out.per_rule.end(), rec.rule_outcomes.begin(), rec.rule_outcomes.end());
  return out;
}

}  // namespace transeal
