#pragma once

// Transformation-assay rules, one function per catalogue entry. Check
// rules only inspect; copy/build rules fill the annotation draft.

#include "transeal/workflow.hpp"

namespace transeal::assay {

struct AssayContext {
  const WorkflowReport& report;
  const RuleSet& rules;
  const OperatorInput& input;
  const SourceDocument& source;
  const Sealer& sealer;
  const pki::TrustAnchors& anchors;
  const pki::RevocationRegistry& registry;
  Timestamp now;
};

RuleOutcome check_used_components(const AssayContext& ctx);
RuleOutcome check_signature_extraction(const AssayContext& ctx);
RuleOutcome check_consistency_of_report(const AssayContext& ctx);
RuleOutcome check_signatures(const AssayContext& ctx);
RuleOutcome copy_original_document(const AssayContext& ctx, Annotation& draft);
RuleOutcome copy_defects(const AssayContext& ctx, Annotation& draft);
RuleOutcome copy_original_validation_result(const AssayContext& ctx, Annotation& draft);
RuleOutcome copy_original_signature_data(const AssayContext& ctx, Annotation& draft);
RuleOutcome build_annotation(const AssayContext& ctx, Annotation& draft);
// Throws MissingAttributeCertificate when no role attribute certificate is
// attached; every other problem is a failed outcome.
RuleOutcome create_signature(const AssayContext& ctx);

// Dispatches by rule id (any transformation-assay id from the catalogue).
RuleOutcome run_rule(std::string_view id, const AssayContext& ctx, Annotation& draft);

}  // namespace transeal::assay
