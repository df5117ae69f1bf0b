#pragma once

// Seal data types, their canonical byte form and the .sdoc / .tseal file
// formats. All values are plain immutable-by-convention structs; every
// function here is pure.

#include <optional>
#include <string>
#include <vector>

#include "transeal/encoding.hpp"
#include "transeal/pki.hpp"
#include "transeal/time.hpp"
#include "transeal/xml.hpp"

namespace transeal {

struct DocumentContent {
  Bytes bytes;
  std::string format_id;
  std::string content_id;  // compute_content_id(bytes)

  static DocumentContent make(Bytes bytes, std::string format_id);
  bool operator==(const DocumentContent&) const = default;
};

struct SignedDocumentContainer {
  DocumentContent content;
  std::vector<pki::EmbeddedSignature> signatures;
  bool operator==(const SignedDocumentContainer&) const = default;
};

// Bytes covered by every embedded signature: the canonical <Content> element.
Bytes content_signing_input(const DocumentContent& content);

pki::EmbeddedSignature sign_content(const DocumentContent& content, const pki::KeyPair& key,
                                    std::vector<pki::Certificate> chain,
                                    std::vector<pki::AttributeCertificate> attribute_certificates,
                                    TimeStamp signing_time);

// Strict parsing enforces every cross-field invariant (content ids, digest
// bindings). Forensic parsing enforces only syntax and per-field rules so a
// tampered file can still be inspected; the binding checks of seal
// verification then report what is wrong.
enum class ParseMode { Strict, Forensic };

// A source document as it travels into the annotation: the verbatim .sdoc
// bytes plus their parsed form.
struct SourceDocument {
  Bytes raw;
  SignedDocumentContainer container;

  static SourceDocument from_bytes(Bytes raw, ParseMode mode = ParseMode::Strict);
  static SourceDocument from_container(SignedDocumentContainer container);
  bool operator==(const SourceDocument& other) const { return raw == other.raw; }
};

struct Transliteration {
  std::string script;
  std::string standard;
  bool operator==(const Transliteration&) const = default;
};

struct LanguageSpecification {
  std::string source_language;
  std::string target_language;
  std::vector<Transliteration> transliterations;
  std::optional<std::string> calendar_conversion;

  // Throws InvalidLanguageTag for malformed or equal tags.
  void validate() const;
  bool operator==(const LanguageSpecification&) const = default;
};

struct OriginalSignatureReport {
  pki::ValidationResult validation_result = pki::ValidationResult::Indeterminate;
  std::string signer;
  std::optional<std::string> authority;
  TimeStamp signing_time;
  bool report_only_user_certificate = false;
  std::vector<pki::CertificateData> certificates;
  std::vector<pki::AttributeCertificateData> attribute_certificates;  // omitted when empty

  bool operator==(const OriginalSignatureReport&) const = default;
};

struct Annotation {
  SourceDocument original_document;
  LanguageSpecification language_specification;
  std::optional<std::vector<std::string>> defects;
  std::vector<OriginalSignatureReport> original_signatures;
  std::optional<std::string> comments;
  std::string accuracy_attestation;
  TimeStamp sealing_time;
  std::string sealing_location;
  std::optional<std::string> translator_role;
  std::optional<std::string> translator_authority;

  bool operator==(const Annotation&) const = default;
};

enum class Activity { Classification, SignatureExtraction, Conversion, ConversionAssay, TransformationAssay };

inline constexpr Activity kActivityOrder[] = {Activity::Classification, Activity::SignatureExtraction,
                                              Activity::Conversion, Activity::ConversionAssay,
                                              Activity::TransformationAssay};

std::string_view to_string(Activity a);
Activity parse_activity(std::string_view s);

struct RuleOutcome {
  std::string rule_id;
  bool passed = false;
  std::string detail;
  bool operator==(const RuleOutcome&) const = default;
};

// One audit record of the workflow report. `payload` is the activity
// specific record; `prev_hash` is the content id of the previous record's
// canonical bytes (empty for the first record).
struct ActivityData {
  Activity activity = Activity::Classification;
  std::string performer_id;
  Timestamp start_time;
  Timestamp end_time;
  std::string rule_set_digest;
  std::string source_content_id;
  std::vector<RuleOutcome> rule_outcomes;
  xml::Element payload{"Payload"};
  std::string prev_hash;
  std::optional<pki::EmbeddedSignature> signature;

  bool operator==(const ActivityData&) const = default;
};

// Canonical record without <ActivitySignature>.
Bytes activity_signing_input(const ActivityData& record);
// Content id of the full canonical record, used as the next record's prev_hash.
std::string activity_digest(const ActivityData& record);

struct WorkflowReport {
  std::string rule_set_digest;
  std::string source_content_id;
  std::vector<ActivityData> records;

  const ActivityData* find(Activity a) const;
  bool operator==(const WorkflowReport&) const = default;
};

struct TranslationSeal {
  Annotation annotation;
  WorkflowReport workflow_report;
  std::string target_digest;
  pki::EmbeddedSignature seal_signature;

  bool operator==(const TranslationSeal&) const = default;
};

// Canonical <TransformationSeal> subtree without <SealSignature>.
Bytes seal_signing_input(const TranslationSeal& seal);

struct SealedTranslation {
  DocumentContent target_content;
  TranslationSeal seal;

  bool operator==(const SealedTranslation&) const = default;
};

// ---- canonical XML forms

xml::Element to_xml(const LanguageSpecification& spec);
xml::Element to_xml(const pki::CertificateData& data);
xml::Element to_xml(const pki::AttributeCertificateData& data);
xml::Element to_xml(const OriginalSignatureReport& report);
xml::Element to_xml(const Annotation& annotation);
xml::Element to_xml(const ActivityData& record);
xml::Element to_xml(const WorkflowReport& report);
xml::Element to_xml(const TranslationSeal& seal);
xml::Element to_xml(const SealedTranslation& sealed);
xml::Element to_xml(const SignedDocumentContainer& doc);

LanguageSpecification language_specification_from_xml(const xml::Element& e);
pki::CertificateData certificate_data_from_xml(const xml::Element& e);
pki::AttributeCertificateData attribute_certificate_data_from_xml(const xml::Element& e);
OriginalSignatureReport original_signature_report_from_xml(const xml::Element& e);
Annotation annotation_from_xml(const xml::Element& e, ParseMode mode = ParseMode::Strict);
ActivityData activity_data_from_xml(const xml::Element& e);
WorkflowReport workflow_report_from_xml(const xml::Element& e);
SignedDocumentContainer document_from_xml(const xml::Element& e, ParseMode mode = ParseMode::Strict);

Bytes canonicalize(const xml::Element& subtree);
Bytes canonicalize(const SignedDocumentContainer& doc);
Bytes canonicalize(const SealedTranslation& sealed);

Bytes serialize_document(const SignedDocumentContainer& doc);
SignedDocumentContainer parse_document(ByteView bytes, ParseMode mode = ParseMode::Strict);

Bytes serialize_seal(const SealedTranslation& sealed);
// Throws ParseError for malformed bytes, InvariantViolation for broken
// invariants (e.g. a target digest mismatch in strict mode).
SealedTranslation parse_seal(ByteView bytes, ParseMode mode = ParseMode::Strict);

}  // namespace transeal
