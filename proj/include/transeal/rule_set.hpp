#pragma once

// Rule catalogue for the translation workflow and the declarative rule-set
// that configures it. The rule-set also carries the workflow definition:
// the five activities in order, each with its performer kind and rules.

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "transeal/seal_model.hpp"

namespace transeal {

namespace rule_id {
inline constexpr std::string_view kReportOriginalDocumentClassification =
    "RULE_CLASSIFICATION_ReportOriginalDocumentClassification";
inline constexpr std::string_view kCheckOriginalFormat = "RULE_CLASSIFICATION_CheckOriginalFormat";
inline constexpr std::string_view kCheckTargetFormat = "RULE_CLASSIFICATION_CheckTargetFormat";
inline constexpr std::string_view kVerifySignature = "RULE_SIGNATUREEXTRACTION_VerifySignature";
inline constexpr std::string_view kReportSignatureData = "RULE_SIGNATUREEXTRACTION_ReportSignatureData";
inline constexpr std::string_view kCheckUsedComponents = "RULE_TRANSFORMATIONASSAY_CheckUsedComponents";
inline constexpr std::string_view kCheckSignatureExtraction =
    "RULE_TRANSFORMATIONASSAY_CheckSignatureExtraction";
inline constexpr std::string_view kCheckConsistencyOfReport =
    "RULE_TRANSFORMATIONASSAY_CheckConsistencyOfReport";
inline constexpr std::string_view kCheckSignatures = "RULE_TRANSFORMATIONASSAY_CheckSignatures";
inline constexpr std::string_view kCopyOriginalDocumentToAnnotation =
    "RULE_TRANSFORMATIONASSAY_CopyOriginalDocumentToAnnotation";
inline constexpr std::string_view kCopyDefectsToAnnotation =
    "RULE_TRANSFORMATIONASSAY_CopyDefectsToAnnotation";
inline constexpr std::string_view kCopyOriginalValidationResultToAnnotation =
    "RULE_TRANSFORMATIONASSAY_CopyOriginalValidationResultToAnnotation";
inline constexpr std::string_view kCopyOriginalSignatureDataToAnnotation =
    "RULE_TRANSFORMATIONASSAY_CopyOriginalSignatureDataToAnnotation";
inline constexpr std::string_view kBuildAnnotation = "RULE_TRANSFORMATIONASSAY_BuildAnnotation";
inline constexpr std::string_view kCreateSignature = "RULE_TRANSFORMATIONASSAY_CreateSignature";
}  // namespace rule_id

struct CatalogueEntry {
  std::string_view id;
  Activity activity;
  bool mandatory;  // a seal cannot be produced without it
};

// All 15 rules in execution order.
const std::vector<CatalogueEntry>& rule_catalogue();
const CatalogueEntry* find_catalogue_entry(std::string_view id);

enum class PerformerKind { Operator, Component, OperatorAndComponent };
std::string_view to_string(PerformerKind k);
PerformerKind parse_performer_kind(std::string_view s);

using RuleParameters = std::map<std::string, std::vector<std::string>, std::less<>>;

struct RuleSpec {
  std::string id;
  RuleParameters parameters;

  const std::vector<std::string>* parameter(std::string_view name) const;
  bool operator==(const RuleSpec&) const = default;
};

struct ActivityDefinition {
  Activity activity;
  PerformerKind performer_kind;
  std::vector<RuleSpec> rules;
  bool operator==(const ActivityDefinition&) const = default;
};

struct RuleSet {
  std::string name;
  std::vector<ActivityDefinition> activities;

  // Formats text/plain;charset=utf-8 and application/pdf, full-path
  // reporting in the workflow report, user certificate only in the annotation.
  static RuleSet defaults();

  // Throws ConfigError when the activities are not the five in order, a rule
  // id is unknown or filed under the wrong activity, or a mandatory rule is
  // missing.
  void validate() const;

  const ActivityDefinition& activity(Activity a) const;
  const RuleSpec* rule(std::string_view id) const;
  std::vector<std::string> rule_ids(Activity a) const;

  // Content id of the canonical rule-set bytes.
  std::string digest() const;

  bool operator==(const RuleSet&) const = default;
};

xml::Element to_xml(const RuleSet& rules);
RuleSet rule_set_from_xml(const xml::Element& e);
RuleSet load_rule_set(std::string_view document);

}  // namespace transeal
