#include "transeal/workflow.hpp"

#include <algorithm>

#include "transeal/assay_rules.hpp"
#include "transeal/digest.hpp"

namespace transeal {

namespace {

[[noreturn]] void rule_failure(std::string_view id, const std::string& detail) {
  throw Error(ErrorCode::RuleFailure, std::string(id) + " failed: " + detail, std::string(id));
}

ActivityData begin_record(Activity activity, const SourceDocument& source, const StepContext& ctx) {
  ActivityData rec;
  rec.activity = activity;
  rec.performer_id = performer_id(ctx.rules.activity(activity).performer_kind, ctx.operator_id,
                                  ctx.component_id);
  const auto now = ctx.clock();
  rec.start_time = ctx.started_at.value_or(now);
  rec.end_time = std::max(now, rec.start_time);
  rec.rule_set_digest = ctx.rules.digest();
  rec.source_content_id = source.container.content.content_id;
  return rec;
}

// Returns the parsed boolean parameter or fails the rule.
bool bool_parameter(const RuleSpec* rule, std::string_view rule_name, std::string_view name,
                    bool fallback) {
  if (!rule) return fallback;
  const auto* values = rule->parameter(name);
  if (!values) return fallback;
  if (values->size() == 1 && ((*values)[0] == "true" || (*values)[0] == "false"))
    return (*values)[0] == "true";
  rule_failure(rule_name, "parameter " + std::string(name) + " must be a single true/false value");
}

bool contains(const std::vector<std::string>& list, std::string_view value) {
  return std::find(list.begin(), list.end(), value) != list.end();
}

}  // namespace

std::string performer_id(PerformerKind kind, std::string_view operator_id,
                         std::string_view component_id) {
  const std::string op = "operator:" + std::string(operator_id);
  const std::string comp = "component:" + std::string(component_id);
  switch (kind) {
    case PerformerKind::Operator: return op;
    case PerformerKind::Component: return comp;
    case PerformerKind::OperatorAndComponent: return op + "+" + comp;
  }
  return op;
}

// ------------------------------------------------------------ classification

ActivityData classify(const SourceDocument& source, const OperatorInput& input,
                      const StepContext& ctx) {
  const auto& cls = input.classification;
  cls.language.validate();

  ActivityData rec = begin_record(Activity::Classification, source, ctx);
  for (const auto& rule : ctx.rules.activity(Activity::Classification).rules) {
    RuleOutcome out{rule.id, true, {}};
    if (rule.id == rule_id::kReportOriginalDocumentClassification) {
      if (cls.source_format.empty() || cls.target_format.empty())
        rule_failure(rule.id, "source and target format must both be classified");
      if (cls.source_format != source.container.content.format_id)
        rule_failure(rule.id, "classified source format '" + cls.source_format +
                                  "' differs from the document's format '" +
                                  source.container.content.format_id + "'");
      out.detail = "classification recorded";
    } else if (rule.id == rule_id::kCheckOriginalFormat || rule.id == rule_id::kCheckTargetFormat) {
      const bool is_source = rule.id == rule_id::kCheckOriginalFormat;
      const auto& format = is_source ? cls.source_format : cls.target_format;
      const auto* allowed = rule.parameter("allowedFormats");
      if (!allowed || !contains(*allowed, format))
        rule_failure(rule.id, std::string(is_source ? "source" : "target") + " format '" + format +
                                  "' is not in the allowed list");
      out.detail = "format '" + format + "' allowed";
    }
    rec.rule_outcomes.push_back(std::move(out));
  }
  rec.payload.add("SourceContentId", source.container.content.content_id);
  rec.payload.add("SourceFormat", cls.source_format);
  rec.payload.add("TargetFormat", cls.target_format);
  rec.payload.add(to_xml(cls.language));
  return rec;
}

// ------------------------------------------------------------ signature extraction

ActivityData extract_signatures(const SourceDocument& source, const pki::TrustAnchors& anchors,
                                const pki::RevocationRegistry& registry, const StepContext& ctx) {
  ActivityData rec = begin_record(Activity::SignatureExtraction, source, ctx);
  const RuleSpec* verify_rule = ctx.rules.rule(rule_id::kVerifySignature);
  const RuleSpec* report_rule = ctx.rules.rule(rule_id::kReportSignatureData);

  std::string policy = "none";
  if (verify_rule) {
    const auto* values = verify_rule->parameter("policy");
    policy = values && values->size() == 1 ? values->front() : "";
    if (policy != "extraction-time" && policy != "signing-time")
      rule_failure(rule_id::kVerifySignature, "unknown validation policy '" + policy + "'");
  }
  const bool only_user =
      bool_parameter(report_rule, rule_id::kReportSignatureData, "reportOnlyUserCertificate", false);
  const bool include_acs = bool_parameter(report_rule, rule_id::kReportSignatureData,
                                          "includeAttributeCertificates", true);

  const auto& content = source.container.content;
  const Bytes signed_bytes = content_signing_input(content);
  std::vector<OriginalSignatureReport> reports;
  std::size_t valid_count = 0;
  for (const auto& sig : source.container.signatures) {
    OriginalSignatureReport rep;
    pki::ValidationOutcome outcome;
    if (policy == "none") {
      for (const auto& c : sig.certificate_chain)
        outcome.path_report.push_back(pki::report_certificate(c, pki::CertificateStatus::Unknown));
      for (const auto& ac : sig.attribute_certificates)
        outcome.attr_report.push_back(pki::report_attribute_certificate(ac));
      if (only_user) outcome.path_report.resize(1);
    } else {
      const Timestamp at = policy == "signing-time" ? sig.signing_time.time : rec.end_time;
      outcome = pki::verify_signature(signed_bytes, sig, anchors, registry, at, {only_user});
    }
    if (outcome.result == pki::ValidationResult::Valid) ++valid_count;
    rep.validation_result = outcome.result;
    rep.signer = pki::display_name(sig.certificate_chain.front().subject);
    for (const auto& ac : sig.attribute_certificates)
      if (!rep.authority) rep.authority = ac.attribute(pki::kAuthorityAttribute);
    rep.signing_time = sig.signing_time;
    rep.report_only_user_certificate = only_user;
    rep.certificates = std::move(outcome.path_report);
    if (include_acs) rep.attribute_certificates = std::move(outcome.attr_report);
    reports.push_back(std::move(rep));
  }

  for (const auto& rule : ctx.rules.activity(Activity::SignatureExtraction).rules) {
    if (rule.id == rule_id::kVerifySignature) {
      rec.rule_outcomes.push_back(
          {rule.id, true,
           std::to_string(valid_count) + "/" + std::to_string(reports.size()) +
               " signature(s) valid under policy " + policy});
    } else if (rule.id == rule_id::kReportSignatureData) {
      rec.rule_outcomes.push_back({rule.id, true,
                                   std::string(only_user ? "user certificate" : "full path") +
                                       (include_acs ? ", attribute certificates" : "")});
    }
  }
  rec.payload.add("ValidationPolicy", policy);
  rec.payload.add("ValidationTime", format_utc(rec.end_time));
  auto& list = rec.payload.add("OriginalSignatures");
  for (const auto& r : reports) list.add(to_xml(r));
  return rec;
}

std::vector<OriginalSignatureReport> extracted_reports(const ActivityData& extraction) {
  std::vector<OriginalSignatureReport> out;
  const auto* list = extraction.payload.find("OriginalSignatures");
  if (!list) return out;
  for (const auto& e : list->children) out.push_back(original_signature_report_from_xml(e));
  return out;
}

// ------------------------------------------------------------ conversion

ActivityData record_conversion(const SourceDocument& source, const OperatorInput& input,
                               const StepContext& ctx) {
  if (input.target.bytes.empty()) fail(ErrorCode::EmptyTarget, "target document is empty");
  ActivityData rec = begin_record(Activity::Conversion, source, ctx);
  rec.payload.add("TargetContentId", compute_content_id(input.target.bytes));
  rec.payload.add("TargetFormat", input.target.format_id);
  auto& protocol = rec.payload.add("ConversionProtocol");
  protocol.add("Performer", "operator:" + input.operator_id);
  protocol.add("Method", std::string(kHumanTranslation));
  protocol.add("DurationSeconds", std::to_string((rec.end_time - rec.start_time).count()));
  if (input.defects) {
    auto& log = rec.payload.add("ErrorLog");
    for (const auto& d : *input.defects) log.add("Entry", d);
  }
  return rec;
}

ActivityData conversion_assay(const SourceDocument& source, const OperatorInput& input,
                              const StepContext& ctx) {
  if (!input.conversion_assay_confirmed)
    fail(ErrorCode::AssayDeclined, "the operator did not confirm the conversion");
  ActivityData rec = begin_record(Activity::ConversionAssay, source, ctx);
  rec.payload.add("Confirmed", "true");
  rec.payload.add("Outcome", "pass");
  return rec;
}

// ------------------------------------------------------------ chaining

void append_activity(WorkflowReport& report, ActivityData record, const Sealer& sealer) {
  record.prev_hash = report.records.empty() ? std::string{} : activity_digest(report.records.back());
  record.signature.reset();
  record.signature =
      pki::sign(activity_signing_input(record), sealer.key, sealer.chain, {}, {record.end_time, {}});
  report.records.push_back(std::move(record));
}

ChainCheck check_report_chain(const WorkflowReport& report, const pki::PublicKey* expected_signer) {
  std::string expected_prev;
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    const auto& rec = report.records[i];
    const std::string where =
        "record " + std::to_string(i + 1) + " (" + std::string(to_string(rec.activity)) + ")";
    if (rec.prev_hash != expected_prev) return {false, where + ": hash chain broken"};
    if (!rec.signature) return {false, where + ": unsigned"};
    const auto& sig = *rec.signature;
    if (sig.algorithm_id != pki::kEd25519 || sig.certificate_chain.empty())
      return {false, where + ": unsupported activity signature"};
    const auto& key = sig.certificate_chain.front().public_key;
    if (expected_signer && key != *expected_signer)
      return {false, where + ": signed by an unexpected key"};
    if (!pki::verify_ed25519(key, activity_signing_input(rec), sig.signature_value))
      return {false, where + ": activity signature does not verify"};
    expected_prev = activity_digest(rec);
  }
  return {true, "hash chain and " + std::to_string(report.records.size()) +
                    " activity signature(s) verified"};
}

// ------------------------------------------------------------ transformation assay

SealedTranslation transformation_assay(const WorkflowReport& report, const OperatorInput& input,
                                       const Sealer& sealer, const SourceDocument& source,
                                       const pki::TrustAnchors& anchors,
                                       const pki::RevocationRegistry& registry,
                                       const StepContext& ctx) {
  const Timestamp now = ctx.clock();
  const assay::AssayContext actx{report, ctx.rules, input, source, sealer, anchors, registry, now};

  Annotation draft;
  ActivityData rec;
  rec.activity = Activity::TransformationAssay;
  rec.performer_id = performer_id(ctx.rules.activity(Activity::TransformationAssay).performer_kind,
                                  ctx.operator_id, ctx.component_id);
  rec.start_time = std::min(ctx.started_at.value_or(now), now);
  rec.end_time = now;
  rec.rule_set_digest = ctx.rules.digest();
  rec.source_content_id = source.container.content.content_id;

  for (const auto& rule : ctx.rules.activity(Activity::TransformationAssay).rules) {
    auto outcome = assay::run_rule(rule.id, actx, draft);
    if (!outcome.passed) rule_failure(rule.id, outcome.detail);
    rec.rule_outcomes.push_back(std::move(outcome));
  }

  const std::string target_digest = compute_content_id(input.target.bytes);
  rec.payload.add("AnnotationDigest", compute_content_id(canonicalize(to_xml(draft))));
  rec.payload.add("TargetDigest", target_digest);

  SealedTranslation st;
  st.target_content = input.target;
  st.seal.workflow_report = report;
  append_activity(st.seal.workflow_report, std::move(rec), sealer);
  st.seal.annotation = std::move(draft);
  st.seal.target_digest = target_digest;
  st.seal.seal_signature =
      pki::sign(seal_signing_input(st.seal), sealer.key, sealer.chain,
                sealer.attribute_certificates, st.seal.annotation.sealing_time);
  return st;
}

// ------------------------------------------------------------ session

WorkflowSession::WorkflowSession(SourceDocument source, RuleSet rules, Sealer sealer,
                                 pki::TrustAnchors anchors, pki::RevocationRegistry registry,
                                 Clock clock)
    : source_(std::move(source)),
      rules_(std::move(rules)),
      sealer_(std::move(sealer)),
      anchors_(std::move(anchors)),
      registry_(std::move(registry)),
      clock_(std::move(clock)) {
  rules_.validate();
  report_.rule_set_digest = rules_.digest();
  report_.source_content_id = source_.container.content.content_id;
}

std::optional<Activity> WorkflowSession::next_activity() const {
  if (cursor_ >= std::size(kActivityOrder)) return std::nullopt;
  return kActivityOrder[cursor_];
}

void WorkflowSession::expect_phase(Activity a) const {
  const auto next = next_activity();
  if (next != a)
    fail(ErrorCode::PhaseOrder,
         std::string(to_string(a)) + " cannot run now; next phase is " +
             (next ? std::string(to_string(*next)) : std::string("none (sealed)")));
}

StepContext WorkflowSession::context(std::string operator_id) const {
  StepContext ctx{rules_, std::move(operator_id), sealer_.component_id, clock_, std::nullopt};
  if (!report_.records.empty()) ctx.started_at = report_.records.back().end_time;
  return ctx;
}

const ActivityData& WorkflowSession::append(ActivityData record) {
  append_activity(report_, std::move(record), sealer_);
  ++cursor_;
  return report_.records.back();
}

const ActivityData& WorkflowSession::classify(const OperatorInput& input) {
  expect_phase(Activity::Classification);
  operator_id_ = input.operator_id;
  return append(transeal::classify(source_, input, context(operator_id_)));
}

const ActivityData& WorkflowSession::extract_signatures() {
  expect_phase(Activity::SignatureExtraction);
  return append(transeal::extract_signatures(source_, anchors_, registry_, context(operator_id_)));
}

const ActivityData& WorkflowSession::record_conversion(const OperatorInput& input) {
  expect_phase(Activity::Conversion);
  return append(transeal::record_conversion(source_, input, context(operator_id_)));
}

const ActivityData& WorkflowSession::conversion_assay(const OperatorInput& input) {
  expect_phase(Activity::ConversionAssay);
  return append(transeal::conversion_assay(source_, input, context(operator_id_)));
}

SealedTranslation WorkflowSession::transformation_assay(const OperatorInput& input) {
  expect_phase(Activity::TransformationAssay);
  auto sealed = transeal::transformation_assay(report_, input, sealer_, source_, anchors_,
                                               registry_, context(operator_id_));
  report_ = sealed.seal.workflow_report;
  ++cursor_;
  return sealed;
}

WorkflowAborted::WorkflowAborted(const Error& cause, WorkflowReport partial)
    : Error(cause.code(), cause.what(), cause.rule_id(), cause.position()),
      partial_(std::move(partial)) {}

SealedTranslation run_translation_workflow(const SourceDocument& source, const OperatorInput& input,
                                           const RuleSet& rules, const Sealer& sealer,
                                           const pki::TrustAnchors& anchors,
                                           const pki::RevocationRegistry& registry, Clock clock) {
  WorkflowSession session(source, rules, sealer, anchors, registry, std::move(clock));
  try {
    session.classify(input);
    session.extract_signatures();
    session.record_conversion(input);
    session.conversion_assay(input);
    return session.transformation_assay(input);
  } catch (const Error& err) {
    throw WorkflowAborted(err, session.report());
  }
}

}  // namespace transeal
