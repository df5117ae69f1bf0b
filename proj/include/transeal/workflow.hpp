#pragma once

// The five-phase translation workflow: classification, signature
// extraction, conversion, conversion assay and transformation assay. Each
// phase yields an ActivityData record; records are hash-chained and signed
// as they are appended to the workflow report, and the transformation assay
// turns the finished report into a signed translation seal.

#include <optional>
#include <string>
#include <vector>

#include "transeal/error.hpp"
#include "transeal/pki.hpp"
#include "transeal/rule_set.hpp"
#include "transeal/seal_model.hpp"

namespace transeal {

inline constexpr std::string_view kHumanTranslation = "human translation";

struct ClassificationInput {
  std::string source_format;
  std::string target_format;
  LanguageSpecification language;
};

// Everything the human operator (the translator) contributes.
struct OperatorInput {
  std::string operator_id;
  ClassificationInput classification;
  DocumentContent target;
  std::optional<std::vector<std::string>> defects;
  std::optional<std::string> comments;
  std::string accuracy_attestation;
  std::string sealing_location;
  bool conversion_assay_confirmed = false;
  std::optional<std::string> sealing_time_source;
};

// The entity signing activity records and the seal. `principal` names the
// certificate the attribute certificate was issued to when a service signs
// on a translator's behalf; otherwise the attribute certificate must belong
// to chain[0].
struct Sealer {
  pki::KeyPair key;
  std::vector<pki::Certificate> chain;
  std::vector<pki::AttributeCertificate> attribute_certificates;
  std::optional<pki::CertificateRef> principal;
  std::string component_id = "transeal";
};

struct StepContext {
  const RuleSet& rules;
  std::string operator_id;
  std::string component_id;
  Clock clock;
  std::optional<Timestamp> started_at;  // defaults to clock()
};

std::string performer_id(PerformerKind kind, std::string_view operator_id,
                         std::string_view component_id);

// Phase functions. Each returns an unsigned, unchained record.
ActivityData classify(const SourceDocument& source, const OperatorInput& input,
                      const StepContext& ctx);
ActivityData extract_signatures(const SourceDocument& source, const pki::TrustAnchors& anchors,
                                const pki::RevocationRegistry& registry, const StepContext& ctx);
ActivityData record_conversion(const SourceDocument& source, const OperatorInput& input,
                               const StepContext& ctx);
ActivityData conversion_assay(const SourceDocument& source, const OperatorInput& input,
                              const StepContext& ctx);

// Sets prev_hash and the activity signature, then appends.
void append_activity(WorkflowReport& report, ActivityData record, const Sealer& sealer);

struct ChainCheck {
  bool ok = true;
  std::string detail;
};

// Hash chain plus activity signatures. When `expected_signer` is given every
// record must be signed by that key.
ChainCheck check_report_chain(const WorkflowReport& report,
                              const pki::PublicKey* expected_signer = nullptr);

// Reads the extraction payload back into reports.
std::vector<OriginalSignatureReport> extracted_reports(const ActivityData& extraction);

// Runs the transformation-assay rules in catalogue order, builds the
// annotation, appends the assay record and signs the seal. Throws
// Error(RuleFailure) naming the first failing rule, or
// Error(MissingAttributeCertificate) when the sealer has no role credential.
SealedTranslation transformation_assay(const WorkflowReport& report, const OperatorInput& input,
                                       const Sealer& sealer, const SourceDocument& source,
                                       const pki::TrustAnchors& anchors,
                                       const pki::RevocationRegistry& registry,
                                       const StepContext& ctx);

// Stepwise driver enforcing the phase order.
class WorkflowSession {
 public:
  WorkflowSession(SourceDocument source, RuleSet rules, Sealer sealer, pki::TrustAnchors anchors,
                  pki::RevocationRegistry registry, Clock clock = system_clock());

  const ActivityData& classify(const OperatorInput& input);
  const ActivityData& extract_signatures();
  const ActivityData& record_conversion(const OperatorInput& input);
  const ActivityData& conversion_assay(const OperatorInput& input);
  SealedTranslation transformation_assay(const OperatorInput& input);

  // Next activity to run; nullopt once sealed.
  std::optional<Activity> next_activity() const;
  const WorkflowReport& report() const { return report_; }
  const SourceDocument& source() const { return source_; }

 private:
  void expect_phase(Activity a) const;
  StepContext context(std::string operator_id) const;
  const ActivityData& append(ActivityData record);

  SourceDocument source_;
  RuleSet rules_;
  Sealer sealer_;
  pki::TrustAnchors anchors_;
  pki::RevocationRegistry registry_;
  Clock clock_;
  WorkflowReport report_;
  std::size_t cursor_ = 0;
  std::string operator_id_;
};

// Thrown by run_translation_workflow; keeps the partial report.
class WorkflowAborted : public Error {
 public:
  WorkflowAborted(const Error& cause, WorkflowReport partial);
  const WorkflowReport& partial_report() const { return partial_; }
  ErrorCode cause_code() const { return code(); }

 private:
  WorkflowReport partial_;
};

SealedTranslation run_translation_workflow(const SourceDocument& source, const OperatorInput& input,
                                           const RuleSet& rules, const Sealer& sealer,
                                           const pki::TrustAnchors& anchors,
                                           const pki::RevocationRegistry& registry,
                                           Clock clock = system_clock());

}  // namespace transeal
