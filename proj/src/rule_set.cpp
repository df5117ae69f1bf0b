#include "transeal/rule_set.hpp"

#include <algorithm>

#include "transeal/digest.hpp"
#include "transeal/error.hpp"

namespace transeal {

const std::vector<CatalogueEntry>& rule_catalogue() {
  using A = Activity;
  static const std::vector<CatalogueEntry> kCatalogue = {
      {rule_id::kReportOriginalDocumentClassification, A::Classification, false},
      {rule_id::kCheckOriginalFormat, A::Classification, false},
      {rule_id::kCheckTargetFormat, A::Classification, false},
      {rule_id::kVerifySignature, A::SignatureExtraction, false},
      {rule_id::kReportSignatureData, A::SignatureExtraction, false},
      {rule_id::kCheckUsedComponents, A::TransformationAssay, false},
      {rule_id::kCheckSignatureExtraction, A::TransformationAssay, false},
      {rule_id::kCheckConsistencyOfReport, A::TransformationAssay, false},
      {rule_id::kCheckSignatures, A::TransformationAssay, false},
      {rule_id::kCopyOriginalDocumentToAnnotation, A::TransformationAssay, true},
      {rule_id::kCopyDefectsToAnnotation, A::TransformationAssay, false},
      {rule_id::kCopyOriginalValidationResultToAnnotation, A::TransformationAssay, true},
      {rule_id::kCopyOriginalSignatureDataToAnnotation, A::TransformationAssay, true},
      {rule_id::kBuildAnnotation, A::TransformationAssay, true},
      {rule_id::kCreateSignature, A::TransformationAssay, true},
  };
  return kCatalogue;
}

const CatalogueEntry* find_catalogue_entry(std::string_view id) {
  for (const auto& e : rule_catalogue())
    if (e.id == id) return &e;
  return nullptr;
}

std::string_view to_string(PerformerKind k) {
  switch (k) {
    case PerformerKind::Operator: return "operator";
    case PerformerKind::Component: return "component";
    case PerformerKind::OperatorAndComponent: return "operator+component";
  }
  return "operator";
}

PerformerKind parse_performer_kind(std::string_view s) {
  for (auto k : {PerformerKind::Operator, PerformerKind::Component, PerformerKind::OperatorAndComponent})
    if (to_string(k) == s) return k;
  fail(ErrorCode::ConfigError, "unknown performer kind '" + std::string(s) + "'");
}

const std::vector<std::string>* RuleSpec::parameter(std::string_view name) const {
  const auto it = parameters.find(name);
  return it == parameters.end() ? nullptr : &it->second;
}

RuleSet RuleSet::defaults() {
  using A = Activity;
  using P = PerformerKind;
  const std::vector<std::string> formats = {"text/plain;charset=utf-8", "application/pdf"};
  RuleSet rs;
  rs.name = "authorised-translation-default";
  rs.activities = {
      {A::Classification,
       P::OperatorAndComponent,
       {{std::string(rule_id::kReportOriginalDocumentClassification), {}},
        {std::string(rule_id::kCheckOriginalFormat), {{"allowedFormats", formats}}},
        {std::string(rule_id::kCheckTargetFormat), {{"allowedFormats", formats}}}}},
      {A::SignatureExtraction,
       P::Component,
       {{std::string(rule_id::kVerifySignature), {{"policy", {"extraction-time"}}}},
        {std::string(rule_id::kReportSignatureData),
         {{"reportOnlyUserCertificate", {"false"}}, {"includeAttributeCertificates", {"true"}}}}}},
      {A::Conversion, P::Operator, {}},
      {A::ConversionAssay, P::Operator, {}},
      {A::TransformationAssay,
       P::OperatorAndComponent,
       {{std::string(rule_id::kCheckUsedComponents), {}},
        {std::string(rule_id::kCheckSignatureExtraction), {}},
        {std::string(rule_id::kCheckConsistencyOfReport), {}},
        {std::string(rule_id::kCheckSignatures), {}},
        {std::string(rule_id::kCopyOriginalDocumentToAnnotation), {}},
        {std::string(rule_id::kCopyDefectsToAnnotation), {}},
        {std::string(rule_id::kCopyOriginalValidationResultToAnnotation),
         {{"acceptedResults", {"valid", "invalid", "indeterminate"}}}},
        {std::string(rule_id::kCopyOriginalSignatureDataToAnnotation),
         {{"reportOnlyUserCertificate", {"true"}},
          {"includeAttributeCertificates", {"true"}},
          {"includeAuthority", {"true"}}}},
        {std::string(rule_id::kBuildAnnotation), {{"includeTranslatorRole", {"true"}}}},
        {std::string(rule_id::kCreateSignature), {{"algorithm", {"ed25519"}}}}}},
  };
  return rs;
}

void RuleSet::validate() const {
  if (activities.size() != std::size(kActivityOrder))
    fail(ErrorCode::ConfigError, "workflow definition must list exactly five activities");
  for (std::size_t i = 0; i < activities.size(); ++i) {
    const auto& def = activities[i];
    if (def.activity != kActivityOrder[i])
      fail(ErrorCode::ConfigError, "activity " + std::to_string(i + 1) + " must be " +
                                       std::string(to_string(kActivityOrder[i])));
    std::size_t last_index = 0;
    for (const auto& rule : def.rules) {
      const auto* entry = find_catalogue_entry(rule.id);
      if (!entry) fail(ErrorCode::ConfigError, "unknown rule '" + rule.id + "'");
      if (entry->activity != def.activity)
        fail(ErrorCode::ConfigError, "rule '" + rule.id + "' does not belong to activity " +
                                         std::string(to_string(def.activity)));
      const auto index = static_cast<std::size_t>(entry - rule_catalogue().data()) + 1;
      if (index <= last_index)
        fail(ErrorCode::ConfigError, "rule '" + rule.id + "' is duplicated or out of order");
      last_index = index;
    }
  }
  for (const auto& entry : rule_catalogue())
    if (entry.mandatory && !rule(entry.id))
      fail(ErrorCode::ConfigError, "mandatory rule '" + std::string(entry.id) + "' is missing");
  for (auto id : {rule_id::kCheckOriginalFormat, rule_id::kCheckTargetFormat}) {
    if (const auto* r = rule(id); r && !r->parameter("allowedFormats"))
      fail(ErrorCode::ConfigError, "rule '" + std::string(id) + "' needs parameter allowedFormats");
  }
  if (const auto* r = rule(rule_id::kVerifySignature); r && !r->parameter("policy"))
    fail(ErrorCode::ConfigError, "rule '" + std::string(rule_id::kVerifySignature) +
                                     "' needs parameter policy");
}

const ActivityDefinition& RuleSet::activity(Activity a) const {
  for (const auto& def : activities)
    if (def.activity == a) return def;
  fail(ErrorCode::ConfigError, "rule-set has no activity " + std::string(to_string(a)));
}

const RuleSpec* RuleSet::rule(std::string_view id) const {
  for (const auto& def : activities)
    for (const auto& r : def.rules)
      if (r.id == id) return &r;
  return nullptr;
}

std::vector<std::string> RuleSet::rule_ids(Activity a) const {
  std::vector<std::string> ids;
  for (const auto& r : activity(a).rules) ids.push_back(r.id);
  return ids;
}

std::string RuleSet::digest() const { return compute_content_id(canonicalize(to_xml(*this))); }

xml::Element to_xml(const RuleSet& rules) {
  xml::Element e("RuleSet");
  e.add("Name", rules.name);
  auto& acts = e.add("Activities");
  for (const auto& def : rules.activities) {
    auto& a = acts.add("Activity");
    a.add("Name", std::string(to_string(def.activity)));
    a.add("PerformerKind", std::string(to_string(def.performer_kind)));
    auto& list = a.add("Rules");
    for (const auto& r : def.rules) {
      auto& re = list.add("Rule");
      re.add("Id", r.id);
      if (!r.parameters.empty()) {
        auto& params = re.add("Parameters");
        for (const auto& [name, values] : r.parameters) {
          auto& p = params.add("Parameter");
          p.add("Name", name);
          for (const auto& v : values) p.add("Value", v);
        }
      }
    }
  }
  return e;
}

RuleSet rule_set_from_xml(const xml::Element& e) {
  try {
    if (e.name != "RuleSet") fail(ErrorCode::ParseError, "expected <RuleSet>");
    xml::ChildReader r(e);
    RuleSet rs;
    rs.name = r.required_text("Name");
    xml::ChildReader ar(r.required("Activities"));
    for (const auto* a : ar.repeated("Activity")) {
      xml::ChildReader dr(*a);
      ActivityDefinition def{parse_activity(dr.required_text("Name")),
                             parse_performer_kind(dr.required_text("PerformerKind")),
                             {}};
      xml::ChildReader rr(dr.required("Rules"));
      for (const auto* rule : rr.repeated("Rule")) {
        xml::ChildReader sr(*rule);
        RuleSpec spec{sr.required_text("Id"), {}};
        if (const auto* params = sr.optional("Parameters")) {
          xml::ChildReader pr(*params);
          for (const auto* p : pr.repeated("Parameter")) {
            xml::ChildReader vr(*p);
            auto name = vr.required_text("Name");
            std::vector<std::string> values;
            for (const auto* v : vr.repeated("Value")) values.push_back(xml::leaf_text(*v));
            vr.finish();
            spec.parameters[std::move(name)] = std::move(values);
          }
          pr.finish();
        }
        sr.finish();
        def.rules.push_back(std::move(spec));
      }
      rr.finish();
      dr.finish();
      rs.activities.push_back(std::move(def));
    }
    ar.finish();
    r.finish();
    rs.validate();
    return rs;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::ConfigError) throw;
    throw Error(ErrorCode::ConfigError, std::string("invalid rule-set: ") + err.what());
  }
}

RuleSet load_rule_set(std::string_view document) {
  try {
    return rule_set_from_xml(xml::parse(document));
  } catch (const Error& err) {
    if (err.code() == ErrorCode::ConfigError) throw;
    throw Error(ErrorCode::ConfigError, std::string("invalid rule-set: ") + err.what());
  }
}

}  // namespace transeal
