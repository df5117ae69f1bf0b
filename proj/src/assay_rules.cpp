#include "transeal/assay_rules.hpp"

#include <algorithm>

#include "transeal/digest.hpp"

namespace transeal::assay {

namespace {

RuleOutcome pass(std::string_view id, std::string detail) {
  return {std::string(id), true, std::move(detail)};
}
RuleOutcome failed(std::string_view id, std::string detail) {
  return {std::string(id), false, std::move(detail)};
}

const std::vector<Activity>& preceding_activities() {
  static const std::vector<Activity> kPreceding = {Activity::Classification,
                                                   Activity::SignatureExtraction,
                                                   Activity::Conversion, Activity::ConversionAssay};
  return kPreceding;
}

// Parses a single true/false parameter; nullopt (with `error`) when malformed.
std::optional<bool> flag(const RuleSpec* rule, std::string_view name, bool fallback,
                         std::string& error) {
  if (!rule) return fallback;
  const auto* values = rule->parameter(name);
  if (!values) return fallback;
  if (values->size() == 1 && ((*values)[0] == "true" || (*values)[0] == "false"))
    return (*values)[0] == "true";
  error = "parameter " + std::string(name) + " must be a single true/false value";
  return std::nullopt;
}

std::string payload_text(const ActivityData& rec, std::string_view name) {
  const auto* e = rec.payload.find(name);
  return e ? e->text : std::string{};
}

const pki::AttributeCertificate* role_certificate(const Sealer& sealer) {
  for (const auto& ac : sealer.attribute_certificates)
    if (ac.attribute(pki::kRoleAttribute)) return &ac;
  return nullptr;
}

}  // namespace

RuleOutcome check_used_components(const AssayContext& ctx) {
  const auto id = rule_id::kCheckUsedComponents;
  for (auto activity : preceding_activities()) {
    const auto* rec = ctx.report.find(activity);
    if (!rec)
      return failed(id, "no " + std::string(to_string(activity)) + " record in the workflow report");
    const auto kind = ctx.rules.activity(activity).performer_kind;
    const bool wants_operator = kind != PerformerKind::Component;
    const bool wants_component = kind != PerformerKind::Operator;
    const bool has_operator = rec->performer_id.find("operator:") != std::string::npos;
    const bool has_component = rec->performer_id.find("component:") != std::string::npos;
    if (wants_operator != has_operator || wants_component != has_component)
      return failed(id, std::string(to_string(activity)) + " performed by '" + rec->performer_id +
                            "', expected performer kind " + std::string(to_string(kind)));
  }
  return pass(id, "all components of the workflow definition were used");
}

RuleOutcome check_signature_extraction(const AssayContext& ctx) {
  const auto id = rule_id::kCheckSignatureExtraction;
  const auto* rec = ctx.report.find(Activity::SignatureExtraction);
  if (!rec) return failed(id, "no signature extraction record");

  std::string error;
  const RuleSpec* report_rule = ctx.rules.rule(rule_id::kReportSignatureData);
  const auto only_user = flag(report_rule, "reportOnlyUserCertificate", false, error);
  const auto include_acs = flag(report_rule, "includeAttributeCertificates", true, error);
  if (!only_user || !include_acs) return failed(id, error);

  std::vector<OriginalSignatureReport> reports;
  try {
    reports = extracted_reports(*rec);
  } catch (const Error& e) {
    return failed(id, std::string("unreadable signature data: ") + e.what());
  }
  const auto& sigs = ctx.source.container.signatures;
  if (reports.size() != sigs.size())
    return failed(id, "report lists " + std::to_string(reports.size()) + " signature(s), source has " +
                          std::to_string(sigs.size()));
  for (std::size_t i = 0; i < sigs.size(); ++i) {
    const auto& rep = reports[i];
    const auto expected_certs = *only_user ? 1 : sigs[i].certificate_chain.size();
    if (rep.certificates.size() != expected_certs || rep.report_only_user_certificate != *only_user)
      return failed(id, "signature " + std::to_string(i + 1) + " lacks the certificate data required by the rule-set");
    const auto expected_acs = *include_acs ? sigs[i].attribute_certificates.size() : 0;
    if (rep.attribute_certificates.size() != expected_acs)
      return failed(id, "signature " + std::to_string(i + 1) + " lacks the attribute certificate data required by the rule-set");
    if (rep.signer.empty()) return failed(id, "signature " + std::to_string(i + 1) + " has no signer");
  }
  return pass(id, std::to_string(reports.size()) + " signature report(s) complete");
}

RuleOutcome check_consistency_of_report(const AssayContext& ctx) {
  const auto id = rule_id::kCheckConsistencyOfReport;
  const auto& records = ctx.report.records;
  const auto& expected = preceding_activities();
  if (records.size() != expected.size())
    return failed(id, "report has " + std::to_string(records.size()) + " record(s), definition expects " +
                          std::to_string(expected.size()) + " before the transformation assay");
  const std::string digest = ctx.rules.digest();
  const std::string& source_id = ctx.source.container.content.content_id;
  if (ctx.report.rule_set_digest != digest) return failed(id, "report was produced under a different rule-set");
  if (ctx.report.source_content_id != source_id) return failed(id, "report belongs to a different source document");
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const std::string where = "record " + std::to_string(i + 1);
    if (rec.activity != expected[i])
      return failed(id, where + " is " + std::string(to_string(rec.activity)) + ", definition expects " +
                            std::string(to_string(expected[i])));
    if (rec.rule_set_digest != digest) return failed(id, where + " names a different rule-set digest");
    if (rec.source_content_id != source_id) return failed(id, where + " names a different source");
    if (rec.end_time < rec.start_time || (i > 0 && rec.start_time < records[i - 1].end_time))
      return failed(id, where + " is out of time order");
    const auto rule_ids = ctx.rules.rule_ids(rec.activity);
    if (rec.rule_outcomes.size() != rule_ids.size())
      return failed(id, where + " does not record every rule of its activity");
    for (std::size_t k = 0; k < rule_ids.size(); ++k) {
      if (rec.rule_outcomes[k].rule_id != rule_ids[k]) return failed(id, where + " records rules out of order");
      if (!rec.rule_outcomes[k].passed) return failed(id, where + " records failed rule " + rule_ids[k]);
    }
  }
  const auto& cls = records[0];
  const auto& conv = records[2];
  if (payload_text(cls, "SourceContentId") != source_id)
    return failed(id, "classification recorded a different source");
  if (payload_text(cls, "TargetFormat") != payload_text(conv, "TargetFormat"))
    return failed(id, "conversion target format differs from the classification");
  if (payload_text(conv, "TargetContentId") != ctx.input.target.content_id ||
      payload_text(conv, "TargetFormat") != ctx.input.target.format_id)
    return failed(id, "conversion record does not describe the submitted target");
  return pass(id, "report matches the workflow definition");
}

RuleOutcome check_signatures(const AssayContext& ctx) {
  const auto id = rule_id::kCheckSignatures;
  const auto check = check_report_chain(ctx.report, &ctx.sealer.key.public_key);
  return check.ok ? pass(id, check.detail) : failed(id, check.detail);
}

RuleOutcome copy_original_document(const AssayContext& ctx, Annotation& draft) {
  const auto id = rule_id::kCopyOriginalDocumentToAnnotation;
  const auto& content = ctx.source.container.content;
  if (content.content_id != compute_content_id(content.bytes))
    return failed(id, "source content id does not match its bytes");
  if (content.content_id != ctx.report.source_content_id)
    return failed(id, "source document is not the one the report was made for");
  draft.original_document = ctx.source;
  return pass(id, "embedded " + std::to_string(ctx.source.raw.size()) + " byte source container " +
                      content.content_id);
}

RuleOutcome copy_defects(const AssayContext& ctx, Annotation& draft) {
  const auto id = rule_id::kCopyDefectsToAnnotation;
  const auto* conv = ctx.report.find(Activity::Conversion);
  if (!conv) return failed(id, "no conversion record to copy defects from");
  const auto* log = conv->payload.find("ErrorLog");
  if (!log) {
    draft.defects.reset();
    return pass(id, "no defects declared");
  }
  std::vector<std::string> defects;
  for (const auto& entry : log->children) {
    if (entry.text.find_first_not_of(" \t\r\n") == std::string::npos)
      return failed(id, "defect description is blank");
    defects.push_back(entry.text);
  }
  draft.defects = std::move(defects);
  return pass(id, std::to_string(draft.defects->size()) + " defect(s) copied");
}

RuleOutcome copy_original_validation_result(const AssayContext& ctx, Annotation& draft) {
  const auto id = rule_id::kCopyOriginalValidationResultToAnnotation;
  const auto* rec = ctx.report.find(Activity::SignatureExtraction);
  if (!rec) return failed(id, "no signature extraction record");
  std::vector<OriginalSignatureReport> reports;
  try {
    reports = extracted_reports(*rec);
  } catch (const Error& e) {
    return failed(id, std::string("unreadable signature data: ") + e.what());
  }
  const auto* rule = ctx.rules.rule(id);
  const auto* accepted = rule ? rule->parameter("acceptedResults") : nullptr;
  draft.original_signatures.resize(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto result = reports[i].validation_result;
    if (accepted && std::find(accepted->begin(), accepted->end(), pki::to_string(result)) == accepted->end())
      return failed(id, "original signature " + std::to_string(i + 1) + " is " +
                            std::string(pki::to_string(result)) + ", which the rule-set does not accept");
    draft.original_signatures[i].validation_result = result;
  }
  return pass(id, std::to_string(reports.size()) + " validation result(s) copied");
}

RuleOutcome copy_original_signature_data(const AssayContext& ctx, Annotation& draft) {
  const auto id = rule_id::kCopyOriginalSignatureDataToAnnotation;
  const auto* rec = ctx.report.find(Activity::SignatureExtraction);
  if (!rec) return failed(id, "no signature extraction record");
  std::string error;
  const RuleSpec* rule = ctx.rules.rule(id);
  const auto only_user = flag(rule, "reportOnlyUserCertificate", true, error);
  const auto include_acs = flag(rule, "includeAttributeCertificates", true, error);
  const auto include_authority = flag(rule, "includeAuthority", true, error);
  if (!only_user || !include_acs || !include_authority) return failed(id, error);

  std::vector<OriginalSignatureReport> reports;
  try {
    reports = extracted_reports(*rec);
  } catch (const Error& e) {
    return failed(id, std::string("unreadable signature data: ") + e.what());
  }
  if (draft.original_signatures.size() != reports.size())
    draft.original_signatures.resize(reports.size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& src = reports[i];
    auto& dst = draft.original_signatures[i];
    if (!*only_user && src.report_only_user_certificate)
      return failed(id, "annotation requires the full certificate path but the report holds only the user certificate");
    dst.signer = src.signer;
    dst.authority = *include_authority ? src.authority : std::nullopt;
    dst.signing_time = src.signing_time;
    dst.report_only_user_certificate = *only_user;
    dst.certificates = src.certificates;
    if (*only_user) dst.certificates.resize(1);
    dst.attribute_certificates = *include_acs ? src.attribute_certificates
                                              : std::vector<pki::AttributeCertificateData>{};
  }
  return pass(id, std::to_string(reports.size()) + " signature report(s) copied");
}

RuleOutcome build_annotation(const AssayContext& ctx, Annotation& draft) {
  const auto id = rule_id::kBuildAnnotation;
  const auto& in = ctx.input;
  if (in.accuracy_attestation.find_first_not_of(" \t\r\n") == std::string::npos)
    return failed(id, "accuracy attestation is missing");
  if (in.sealing_location.find_first_not_of(" \t\r\n") == std::string::npos)
    return failed(id, "sealing location is missing");
  std::string error;
  const auto include_role = flag(ctx.rules.rule(id), "includeTranslatorRole", true, error);
  if (!include_role) return failed(id, error);

  draft.language_specification = in.classification.language;
  draft.comments = in.comments;
  draft.accuracy_attestation = in.accuracy_attestation;
  draft.sealing_time = {ctx.now, in.sealing_time_source};
  draft.sealing_location = in.sealing_location;
  draft.translator_role.reset();
  draft.translator_authority.reset();
  if (*include_role) {
    if (const auto* ac = role_certificate(ctx.sealer)) {
      draft.translator_role = ac->attribute(pki::kRoleAttribute);
      draft.translator_authority = ac->attribute(pki::kAuthorityAttribute);
    }
  }
  return pass(id, "annotation built at " + format_utc(ctx.now));
}

RuleOutcome create_signature(const AssayContext& ctx) {
  const auto id = rule_id::kCreateSignature;
  const auto& sealer = ctx.sealer;
  if (const auto* rule = ctx.rules.rule(id)) {
    if (const auto* alg = rule->parameter("algorithm");
        alg && (alg->size() != 1 || alg->front() != pki::kEd25519))
      return failed(id, "unsupported signature algorithm requested");
  }
  if (sealer.chain.empty() || sealer.chain.front().public_key != sealer.key.public_key)
    return failed(id, "sealing key does not match the sealing certificate");
  const auto& leaf = sealer.chain.front();
  if (ctx.registry.is_revoked(leaf.issuer, leaf.serial, ctx.now))
    return failed(id, "sealing certificate '" + leaf.subject + "' is revoked");
  if (!leaf.validity.contains(ctx.now))
    return failed(id, "sealing certificate '" + leaf.subject + "' is outside its validity period");

  const auto* ac = role_certificate(sealer);
  if (!ac)
    throw Error(ErrorCode::MissingAttributeCertificate,
                std::string(id) + " failed: no attribute certificate with a role attribute is attached to the sealer",
                std::string(id));
  const pki::CertificateRef leaf_ref{leaf.issuer, leaf.serial};
  if (ac->holder != leaf_ref && (!sealer.principal || ac->holder != *sealer.principal))
    return failed(id, "attribute certificate " + ac->serial + " was not issued to the sealer");
  const auto check = pki::check_attribute_certificate(*ac, ctx.anchors, ctx.registry, ctx.now);
  if (!check.ok()) return failed(id, check.detail.empty() ? "attribute certificate is not valid" : check.detail);
  return pass(id, "sealing with " + std::string(pki::kEd25519) + " as '" + leaf.subject + "', role '" +
                      *ac->attribute(pki::kRoleAttribute) + "'");
}

RuleOutcome run_rule(std::string_view id, const AssayContext& ctx, Annotation& draft) {
  if (id == rule_id::kCheckUsedComponents) return check_used_components(ctx);
  if (id == rule_id::kCheckSignatureExtraction) return check_signature_extraction(ctx);
  if (id == rule_id::kCheckConsistencyOfReport) return check_consistency_of_report(ctx);
  if (id == rule_id::kCheckSignatures) return check_signatures(ctx);
  if (id == rule_id::kCopyOriginalDocumentToAnnotation) return copy_original_document(ctx, draft);
  if (id == rule_id::kCopyDefectsToAnnotation) return copy_defects(ctx, draft);
  if (id == rule_id::kCopyOriginalValidationResultToAnnotation)
    return copy_original_validation_result(ctx, draft);
  if (id == rule_id::kCopyOriginalSignatureDataToAnnotation)
    return copy_original_signature_data(ctx, draft);
  if (id == rule_id::kBuildAnnotation) return build_annotation(ctx, draft);
  if (id == rule_id::kCreateSignature) return create_signature(ctx);
  return failed(id, "not a transformation-assay rule");
}

}  // namespace transeal::assay
