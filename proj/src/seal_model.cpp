#include "transeal/seal_model.hpp"

#include "transeal/digest.hpp"
#include "transeal/error.hpp"
#include "transeal/i18n.hpp"

namespace transeal {

namespace {

[[noreturn]] void violated(std::string what) {
  fail(ErrorCode::InvariantViolation, std::move(what));
}

std::string non_empty(std::string text, std::string_view what) {
  if (text.empty()) fail(ErrorCode::ParseError, std::string(what) + " must not be empty");
  return text;
}

xml::Element nested_time_stamp(std::string name, const TimeStamp& ts) {
  xml::Element e(std::move(name));
  pki::append_time_stamp(e, ts, "Time");
  return e;
}

TimeStamp read_nested_time_stamp(const xml::Element& e) {
  xml::ChildReader r(e);
  auto ts = pki::read_time_stamp(r, "Time");
  r.finish();
  return ts;
}

xml::Element content_element(const DocumentContent& content) {
  return xml::Element("Content", base64_encode(content.bytes));
}

}  // namespace

DocumentContent DocumentContent::make(Bytes bytes, std::string format_id) {
  if (format_id.empty()) violated("content format must not be empty");
  auto id = compute_content_id(bytes);
  return {std::move(bytes), std::move(format_id), std::move(id)};
}

Bytes content_signing_input(const DocumentContent& content) {
  return canonicalize(content_element(content));
}

pki::EmbeddedSignature sign_content(const DocumentContent& content, const pki::KeyPair& key,
                                    std::vector<pki::Certificate> chain,
                                    std::vector<pki::AttributeCertificate> attribute_certificates,
                                    TimeStamp signing_time) {
  return pki::sign(content_signing_input(content), key, std::move(chain),
                   std::move(attribute_certificates), std::move(signing_time));
}

SourceDocument SourceDocument::from_bytes(Bytes raw, ParseMode mode) {
  auto container = parse_document(raw, mode);
  return {std::move(raw), std::move(container)};
}

SourceDocument SourceDocument::from_container(SignedDocumentContainer container) {
  auto raw = serialize_document(container);
  return {std::move(raw), std::move(container)};
}

void LanguageSpecification::validate() const {
  i18n::validate_language_tag(source_language);
  i18n::validate_language_tag(target_language);
  if (i18n::same_language(source_language, target_language))
    throw Error(ErrorCode::InvalidLanguageTag,
                "source and target language are both '" + source_language + "'");
}

std::string_view to_string(Activity a) {
  switch (a) {
    case Activity::Classification: return "Classification";
    case Activity::SignatureExtraction: return "SignatureExtraction";
    case Activity::Conversion: return "Conversion";
    case Activity::ConversionAssay: return "ConversionAssay";
    case Activity::TransformationAssay: return "TransformationAssay";
  }
  return "Classification";
}

Activity parse_activity(std::string_view s) {
  for (auto a : kActivityOrder)
    if (to_string(a) == s) return a;
  fail(ErrorCode::ParseError, "unknown activity '" + std::string(s) + "'");
}

const ActivityData* WorkflowReport::find(Activity a) const {
  for (const auto& r : records)
    if (r.activity == a) return &r;
  return nullptr;
}

// ------------------------------------------------------------ to_xml

xml::Element to_xml(const LanguageSpecification& spec) {
  xml::Element e("LanguageSpecification");
  e.add("SourceLanguage", spec.source_language);
  e.add("TargetLanguage", spec.target_language);
  if (!spec.transliterations.empty()) {
    auto& list = e.add("Transliterations");
    for (const auto& t : spec.transliterations) {
      auto& te = list.add("Transliteration");
      te.add("Script", t.script);
      te.add("Standard", t.standard);
    }
  }
  if (spec.calendar_conversion) e.add("CalendarConversion", *spec.calendar_conversion);
  return e;
}

xml::Element to_xml(const pki::CertificateData& data) {
  xml::Element e("CertificateData");
  e.add("Subject", data.subject);
  e.add("Issuer", data.issuer);
  e.add("Serial", data.serial);
  e.add(pki::to_xml(data.validity));
  e.add("QCStatement", pki::encode_bool(data.qc_statement));
  e.add("CertificateStatus", std::string(pki::to_string(data.status)));
  return e;
}

xml::Element to_xml(const pki::AttributeCertificateData& data) {
  xml::Element e("AttributeCertificateData");
  e.add("Issuer", data.issuer);
  auto& list = e.add("Attributes");
  for (const auto& a : data.attributes) {
    auto& ae = list.add("Attribute");
    ae.add("Type", a.type);
    ae.add("Value", a.value);
  }
  return e;
}

xml::Element to_xml(const OriginalSignatureReport& report) {
  xml::Element e("OriginalSignature");
  e.add("SignatureValidationResult", std::string(pki::to_string(report.validation_result)));
  e.add("Signer", report.signer);
  if (report.authority) e.add("Authority", *report.authority);
  e.add(nested_time_stamp("SigningTime", report.signing_time));
  e.add("ReportOnlyUserCertificate", pki::encode_bool(report.report_only_user_certificate));
  auto& certs = e.add("Certificates");
  for (const auto& c : report.certificates) certs.add(to_xml(c));
  if (!report.attribute_certificates.empty()) {
    auto& acs = e.add("AttributeCertificates");
    for (const auto& ac : report.attribute_certificates) acs.add(to_xml(ac));
  }
  return e;
}

xml::Element to_xml(const Annotation& a) {
  xml::Element e("Annotation");
  e.add("OriginalDocument", base64_encode(a.original_document.raw));
  e.add(to_xml(a.language_specification));
  if (a.defects) {
    auto& defects = e.add("Defects");
    for (const auto& d : *a.defects) defects.add("Defect", d);
  }
  auto& sigs = e.add("OriginalSignatures");
  for (const auto& s : a.original_signatures) sigs.add(to_xml(s));
  if (a.comments) e.add("Comments", *a.comments);
  e.add("AccuracyAttestation", a.accuracy_attestation);
  e.add(nested_time_stamp("SealingTime", a.sealing_time));
  e.add("SealingLocation", a.sealing_location);
  if (a.translator_role) e.add("TranslatorRole", *a.translator_role);
  if (a.translator_authority) e.add("TranslatorAuthority", *a.translator_authority);
  return e;
}

namespace {

xml::Element activity_element(const ActivityData& r, bool with_signature) {
  xml::Element e("ActivityData");
  e.add("Activity", std::string(to_string(r.activity)));
  e.add("Performer", r.performer_id);
  e.add("StartTime", format_utc(r.start_time));
  e.add("EndTime", format_utc(r.end_time));
  e.add("RuleSetDigest", r.rule_set_digest);
  e.add("SourceContentId", r.source_content_id);
  auto& outcomes = e.add("RuleOutcomes");
  for (const auto& o : r.rule_outcomes) {
    auto& oe = outcomes.add("RuleOutcome");
    oe.add("RuleId", o.rule_id);
    oe.add("Outcome", o.passed ? "pass" : "fail");
    oe.add("Detail", o.detail);
  }
  xml::Element payload = r.payload;
  payload.name = "Payload";
  e.add(std::move(payload));
  e.add("PrevHash", r.prev_hash);
  if (with_signature && r.signature) e.add(pki::to_xml(*r.signature, "ActivitySignature"));
  return e;
}

xml::Element seal_element(const TranslationSeal& seal, bool with_signature) {
  xml::Element e("TransformationSeal");
  e.add(to_xml(seal.annotation));
  e.add(to_xml(seal.workflow_report));
  e.add("TargetDigest", seal.target_digest);
  if (with_signature) e.add(pki::to_xml(seal.seal_signature, "SealSignature"));
  return e;
}

}  // namespace

xml::Element to_xml(const ActivityData& record) { return activity_element(record, true); }

Bytes activity_signing_input(const ActivityData& record) {
  return canonicalize(activity_element(record, false));
}

std::string activity_digest(const ActivityData& record) {
  return compute_content_id(canonicalize(activity_element(record, true)));
}

xml::Element to_xml(const WorkflowReport& report) {
  xml::Element e("WorkflowReport");
  e.add("RuleSetDigest", report.rule_set_digest);
  e.add("SourceContentId", report.source_content_id);
  auto& records = e.add("ActivityRecords");
  for (const auto& r : report.records) records.add(to_xml(r));
  return e;
}

xml::Element to_xml(const TranslationSeal& seal) { return seal_element(seal, true); }

Bytes seal_signing_input(const TranslationSeal& seal) {
  return canonicalize(seal_element(seal, false));
}

xml::Element to_xml(const SealedTranslation& sealed) {
  xml::Element e("SealedTranslation");
  e.add("TargetContent", base64_encode(sealed.target_content.bytes));
  e.add("TargetFormat", sealed.target_content.format_id);
  e.add(to_xml(sealed.seal));
  return e;
}

xml::Element to_xml(const SignedDocumentContainer& doc) {
  xml::Element e("SignedDocument");
  e.add(content_element(doc.content));
  e.add("ContentFormat", doc.content.format_id);
  e.add("ContentId", doc.content.content_id);
  for (const auto& s : doc.signatures) e.add(pki::to_xml(s, "Signature"));
  return e;
}

// ------------------------------------------------------------ from_xml

LanguageSpecification language_specification_from_xml(const xml::Element& e) {
  xml::ChildReader r(e);
  LanguageSpecification spec;
  spec.source_language = r.required_text("SourceLanguage");
  spec.target_language = r.required_text("TargetLanguage");
  if (const auto* list = r.optional("Transliterations")) {
    xml::ChildReader lr(*list);
    for (const auto* t : lr.repeated("Transliteration")) {
      xml::ChildReader tr(*t);
      Transliteration tl{non_empty(tr.required_text("Script"), "script"),
                         non_empty(tr.required_text("Standard"), "standard")};
      tr.finish();
      spec.transliterations.push_back(std::move(tl));
    }
    lr.finish();
    if (spec.transliterations.empty()) fail(ErrorCode::ParseError, "<Transliterations> is empty");
  }
  if (const auto* c = r.optional("CalendarConversion")) spec.calendar_conversion = xml::leaf_text(*c);
  r.finish();
  spec.validate();
  return spec;
}

pki::CertificateData certificate_data_from_xml(const xml::Element& e) {
  if (e.name != "CertificateData") fail(ErrorCode::ParseError, "expected <CertificateData>");
  xml::ChildReader r(e);
  pki::CertificateData d;
  d.subject = r.required_text("Subject");
  d.issuer = r.required_text("Issuer");
  d.serial = r.required_text("Serial");
  d.validity = pki::validity_from_xml(r.required("ValidityPeriod"));
  d.qc_statement = pki::decode_bool(r.required_text("QCStatement"));
  d.status = pki::parse_certificate_status(r.required_text("CertificateStatus"));
  r.finish();
  return d;
}

pki::AttributeCertificateData attribute_certificate_data_from_xml(const xml::Element& e) {
  if (e.name != "AttributeCertificateData")
    fail(ErrorCode::ParseError, "expected <AttributeCertificateData>");
  xml::ChildReader r(e);
  pki::AttributeCertificateData d;
  d.issuer = r.required_text("Issuer");
  xml::ChildReader lr(r.required("Attributes"));
  for (const auto* a : lr.repeated("Attribute")) {
    xml::ChildReader ar(*a);
    pki::Attribute attr{ar.required_text("Type"), ar.required_text("Value")};
    ar.finish();
    d.attributes.push_back(std::move(attr));
  }
  lr.finish();
  r.finish();
  if (d.attributes.empty()) violated("attribute certificate data must list at least one attribute");
  return d;
}

OriginalSignatureReport original_signature_report_from_xml(const xml::Element& e) {
  if (e.name != "OriginalSignature") fail(ErrorCode::ParseError, "expected <OriginalSignature>");
  xml::ChildReader r(e);
  OriginalSignatureReport rep;
  rep.validation_result = pki::parse_validation_result(r.required_text("SignatureValidationResult"));
  rep.signer = r.required_text("Signer");
  if (const auto* a = r.optional("Authority")) rep.authority = xml::leaf_text(*a);
  rep.signing_time = read_nested_time_stamp(r.required("SigningTime"));
  rep.report_only_user_certificate = pki::decode_bool(r.required_text("ReportOnlyUserCertificate"));
  {
    xml::ChildReader cr(r.required("Certificates"));
    for (const auto* c : cr.repeated("CertificateData"))
      rep.certificates.push_back(certificate_data_from_xml(*c));
    cr.finish();
  }
  if (const auto* acs = r.optional("AttributeCertificates")) {
    xml::ChildReader ar(*acs);
    for (const auto* ac : ar.repeated("AttributeCertificateData"))
      rep.attribute_certificates.push_back(attribute_certificate_data_from_xml(*ac));
    ar.finish();
    if (rep.attribute_certificates.empty())
      fail(ErrorCode::ParseError, "<AttributeCertificates> present but empty");
  }
  r.finish();
  if (rep.certificates.empty()) violated("original signature report lists no certificates");
  if (rep.report_only_user_certificate && rep.certificates.size() != 1)
    violated("ReportOnlyUserCertificate requires exactly one certificate entry");
  return rep;
}

Annotation annotation_from_xml(const xml::Element& e, ParseMode mode) {
  if (e.name != "Annotation") fail(ErrorCode::ParseError, "expected <Annotation>");
  xml::ChildReader r(e);
  Annotation a;
  a.original_document =
      SourceDocument::from_bytes(base64_decode(r.required_text("OriginalDocument")), mode);
  a.language_specification = language_specification_from_xml(r.required("LanguageSpecification"));
  if (const auto* defects = r.optional("Defects")) {
    xml::ChildReader dr(*defects);
    a.defects.emplace();
    for (const auto* d : dr.repeated("Defect")) a.defects->push_back(xml::leaf_text(*d));
    dr.finish();
  }
  {
    xml::ChildReader sr(r.required("OriginalSignatures"));
    for (const auto* s : sr.repeated("OriginalSignature"))
      a.original_signatures.push_back(original_signature_report_from_xml(*s));
    sr.finish();
  }
  if (const auto* c = r.optional("Comments")) a.comments = xml::leaf_text(*c);
  a.accuracy_attestation = r.required_text("AccuracyAttestation");
  a.sealing_time = read_nested_time_stamp(r.required("SealingTime"));
  a.sealing_location = r.required_text("SealingLocation");
  if (const auto* role = r.optional("TranslatorRole")) a.translator_role = xml::leaf_text(*role);
  if (const auto* auth = r.optional("TranslatorAuthority"))
    a.translator_authority = xml::leaf_text(*auth);
  r.finish();

  if (a.accuracy_attestation.empty()) violated("accuracy attestation must not be empty");
  if (mode == ParseMode::Strict &&
      a.original_signatures.size() != a.original_document.container.signatures.size())
    violated("annotation must report every embedded signature of the original document");
  return a;
}

ActivityData activity_data_from_xml(const xml::Element& e) {
  if (e.name != "ActivityData") fail(ErrorCode::ParseError, "expected <ActivityData>");
  xml::ChildReader r(e);
  ActivityData d;
  d.activity = parse_activity(r.required_text("Activity"));
  d.performer_id = r.required_text("Performer");
  d.start_time = parse_timestamp(r.required_text("StartTime"));
  d.end_time = parse_timestamp(r.required_text("EndTime"));
  d.rule_set_digest = r.required_text("RuleSetDigest");
  d.source_content_id = r.required_text("SourceContentId");
  {
    xml::ChildReader orr(r.required("RuleOutcomes"));
    for (const auto* o : orr.repeated("RuleOutcome")) {
      xml::ChildReader oc(*o);
      RuleOutcome out;
      out.rule_id = oc.required_text("RuleId");
      const auto verdict = oc.required_text("Outcome");
      if (verdict != "pass" && verdict != "fail")
        fail(ErrorCode::ParseError, "rule outcome must be 'pass' or 'fail'");
      out.passed = verdict == "pass";
      out.detail = oc.required_text("Detail");
      oc.finish();
      d.rule_outcomes.push_back(std::move(out));
    }
    orr.finish();
  }
  d.payload = r.required("Payload");
  d.prev_hash = r.required_text("PrevHash");
  if (const auto* s = r.optional("ActivitySignature"))
    d.signature = pki::embedded_signature_from_xml(*s);
  r.finish();
  return d;
}

WorkflowReport workflow_report_from_xml(const xml::Element& e) {
  if (e.name != "WorkflowReport") fail(ErrorCode::ParseError, "expected <WorkflowReport>");
  xml::ChildReader r(e);
  WorkflowReport rep;
  rep.rule_set_digest = r.required_text("RuleSetDigest");
  rep.source_content_id = r.required_text("SourceContentId");
  xml::ChildReader rr(r.required("ActivityRecords"));
  for (const auto* a : rr.repeated("ActivityData")) rep.records.push_back(activity_data_from_xml(*a));
  rr.finish();
  r.finish();
  return rep;
}

SignedDocumentContainer document_from_xml(const xml::Element& e, ParseMode mode) {
  if (e.name != "SignedDocument")
    fail(ErrorCode::ParseError, "expected <SignedDocument>, got <" + e.name + ">");
  xml::ChildReader r(e);
  SignedDocumentContainer doc;
  doc.content.bytes = base64_decode(r.required_text("Content"));
  doc.content.format_id = r.required_text("ContentFormat");
  doc.content.content_id = r.required_text("ContentId");
  for (const auto* s : r.repeated("Signature"))
    doc.signatures.push_back(pki::embedded_signature_from_xml(*s));
  r.finish();
  if (doc.content.format_id.empty()) violated("content format must not be empty");
  if (mode == ParseMode::Strict && doc.content.content_id != compute_content_id(doc.content.bytes))
    violated("ContentId does not match the content bytes");
  return doc;
}

// ------------------------------------------------------------ files

Bytes canonicalize(const xml::Element& subtree) { return to_bytes(xml::write(subtree)); }
Bytes canonicalize(const SignedDocumentContainer& doc) { return canonicalize(to_xml(doc)); }
Bytes canonicalize(const SealedTranslation& sealed) { return canonicalize(to_xml(sealed)); }

Bytes serialize_document(const SignedDocumentContainer& doc) { return canonicalize(doc); }

SignedDocumentContainer parse_document(ByteView bytes, ParseMode mode) {
  return document_from_xml(xml::parse(to_string(bytes)), mode);
}

Bytes serialize_seal(const SealedTranslation& sealed) { return canonicalize(sealed); }

SealedTranslation parse_seal(ByteView bytes, ParseMode mode) {
  const auto root = xml::parse(to_string(bytes));
  if (root.name != "SealedTranslation")
    fail(ErrorCode::ParseError, "expected <SealedTranslation>, got <" + root.name + ">");
  xml::ChildReader r(root);
  SealedTranslation st;
  auto target_bytes = base64_decode(r.required_text("TargetContent"));
  auto target_format = r.required_text("TargetFormat");
  if (target_format.empty()) violated("target format must not be empty");
  st.target_content = DocumentContent::make(std::move(target_bytes), std::move(target_format));
  {
    xml::ChildReader sr(r.required("TransformationSeal"));
    st.seal.annotation = annotation_from_xml(sr.required("Annotation"), mode);
    st.seal.workflow_report = workflow_report_from_xml(sr.required("WorkflowReport"));
    st.seal.target_digest = sr.required_text("TargetDigest");
    st.seal.seal_signature = pki::embedded_signature_from_xml(sr.required("SealSignature"));
    sr.finish();
  }
  r.finish();

  if (mode == ParseMode::Strict) {
    const auto& seal = st.seal;
    if (seal.target_digest != st.target_content.content_id)
      violated("targetDigest does not match the target content");
    if (seal.workflow_report.source_content_id !=
        seal.annotation.original_document.container.content.content_id)
      violated("workflow report source id does not match the embedded source");
    for (const auto& rec : seal.workflow_report.records) {
      if (!rec.signature) violated("activity record " + std::string(to_string(rec.activity)) + " is unsigned");
    }
    std::optional<std::string> role, authority;
    for (const auto& ac : seal.seal_signature.attribute_certificates) {
      if (!role) role = ac.attribute(pki::kRoleAttribute);
      if (!authority) authority = ac.attribute(pki::kAuthorityAttribute);
    }
    if (seal.annotation.translator_role && seal.annotation.translator_role != role)
      violated("TranslatorRole does not match the sealing attribute certificate");
    if (seal.annotation.translator_authority && seal.annotation.translator_authority != authority)
      violated("TranslatorAuthority does not match the sealing attribute certificate");
  }
  return st;
}

}  // namespace transeal
