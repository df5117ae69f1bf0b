#include <doctest.h>

#include <fstream>
#include <sstream>

#include "support/fixtures.hpp"
#include "transeal/digest.hpp"
#include "transeal/seal_model.hpp"

using namespace transeal;

namespace {

std::vector<std::string> golden(const std::string& name) {
  std::ifstream in(std::string(TRANSEAL_GOLDEN_DIR) + "/" + name);
  REQUIRE(in);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(line);
  return out;
}

std::vector<std::string> child_names(const xml::Element& e) {
  std::vector<std::string> out;
  for (const auto& c : e.children) out.push_back(c.name);
  return out;
}

ErrorCode parse_error_code(const Bytes& bytes, ParseMode mode = ParseMode::Strict) {
  try {
    parse_seal(bytes, mode);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("parse accepted the input");
  return ErrorCode::ParseError;
}

// A seal with every optional annotation element populated.
SealedTranslation full_seal(const fixtures::TestPki& p) {
  const auto source = fixtures::signed_source(p, "Zeugnis", 1);
  auto in = fixtures::operator_input(source, "Certificate", "de", "en");
  in.classification.language.transliterations = {{"Cyrillic", "ISO 9"}};
  in.classification.language.calendar_conversion = "buddhist-gregorian-th";
  in.defects = std::vector<std::string>{"stamp on page 2 illegible"};
  in.comments = "names transliterated";
  in.sealing_time_source = "tsa.example";
  return fixtures::make_seal(p, source, in);
}

}  // namespace

TEST_CASE("annotation carries exactly the documented element set") {
  fixtures::TestPki p;
  const auto st = full_seal(p);
  const auto ann = to_xml(st.seal.annotation);
  CHECK(child_names(ann) == golden("annotation.elements"));
  CHECK(ann.children.size() == 10);
  CHECK(child_names(*ann.find("LanguageSpecification")) == golden("language_specification.elements"));
  const auto* sealing = ann.find("SealingTime");
  CHECK(child_names(*sealing) == std::vector<std::string>{"Time", "TimeSource"});
}

TEST_CASE("optional annotation elements are omitted when absent") {
  fixtures::TestPki p;
  const auto source = fixtures::signed_source(p, "x", 0);
  auto st = fixtures::make_seal(p, source, fixtures::operator_input(source));
  st.seal.annotation.translator_role.reset();
  st.seal.annotation.translator_authority.reset();
  const auto names = child_names(to_xml(st.seal.annotation));
  CHECK(names == std::vector<std::string>{"OriginalDocument", "LanguageSpecification", "OriginalSignatures",
                                          "AccuracyAttestation", "SealingTime", "SealingLocation"});
}

TEST_CASE("an empty comment differs canonically from an absent one") {
  fixtures::TestPki p;
  const auto source = fixtures::signed_source(p, "x", 0);
  auto a = fixtures::make_seal(p, source, fixtures::operator_input(source)).seal.annotation;
  auto b = a;
  a.comments.reset();
  b.comments = "";
  const auto ca = canonicalize(to_xml(a)), cb = canonicalize(to_xml(b));
  CHECK(ca != cb);
  CHECK(to_string(cb).find("<Comments></Comments>") != std::string::npos);
  CHECK(annotation_from_xml(xml::parse(to_string(cb))).comments == std::optional<std::string>(""));
  CHECK_FALSE(annotation_from_xml(xml::parse(to_string(ca))).comments.has_value());
}

TEST_CASE("annotation times are normalised to UTC") {
  fixtures::TestPki p;
  const auto source = fixtures::signed_source(p, "x", 0);
  const auto ann = fixtures::make_seal(p, source, fixtures::operator_input(source)).seal.annotation;
  auto text = to_string(canonicalize(to_xml(ann)));
  const auto at = text.find(format_utc(ann.sealing_time.time));
  REQUIRE(at != std::string::npos);
  text.replace(at, 20, "2005-06-30T12:00:00+02:00");
  const auto back = annotation_from_xml(xml::parse(text));
  const auto canonical = to_string(canonicalize(to_xml(back)));
  CHECK(canonical.find("2005-06-30T10:00:00Z") != std::string::npos);
  CHECK(canonical.find("+02:00") == std::string::npos);
}

TEST_CASE("signature report element sets") {
  fixtures::TestPki p;
  const auto st = full_seal(p);
  REQUIRE(st.seal.annotation.original_signatures.size() == 1);
  const auto sig = to_xml(st.seal.annotation.original_signatures[0]);
  CHECK(child_names(sig) == golden("original_signature.elements"));
  const auto& cert = sig.find("Certificates")->children.at(0);
  CHECK(child_names(cert) == golden("certificate_data.elements"));
  CHECK(cert.children.size() == 6);
  const auto& ac = sig.find("AttributeCertificates")->children.at(0);
  CHECK(child_names(ac) == golden("attribute_certificate_data.elements"));
  CHECK(ac.children.size() == 2);
  CHECK(child_names(ac.children[1].children.at(0)) == std::vector<std::string>{"Type", "Value"});
}

TEST_CASE("report-only-user-certificate holds exactly one certificate") {
  fixtures::TestPki p;
  const auto st = full_seal(p);
  const auto& rep = st.seal.annotation.original_signatures[0];
  CHECK(rep.report_only_user_certificate);
  CHECK(rep.certificates.size() == 1);
  auto bad = rep;
  bad.certificates.push_back(bad.certificates[0]);
  CHECK_THROWS_AS(original_signature_report_from_xml(to_xml(bad)), Error);
}

TEST_CASE("qualified-certificate flag survives into the report") {
  fixtures::TestPki p;
  const auto st = full_seal(p);
  CHECK(st.seal.annotation.original_signatures[0].certificates[0].qc_statement == p.signer_cert.qc_statement);
}

TEST_CASE("document containers") {
  fixtures::TestPki p;
  const auto src = fixtures::signed_source(p, "abc", 2);
  const auto& doc = src.container;
  CHECK(doc.content.content_id == compute_content_id(to_bytes("abc")));
  CHECK(parse_document(serialize_document(doc)) == doc);
  CHECK(src.raw == serialize_document(doc));
  CHECK_THROWS_AS(DocumentContent::make(to_bytes("a"), ""), Error);

  auto tampered = doc;
  tampered.content.content_id = compute_content_id(to_bytes("abd"));
  CHECK_THROWS_AS(parse_document(serialize_document(tampered)), Error);
  CHECK_NOTHROW(parse_document(serialize_document(tampered), ParseMode::Forensic));

  for (const auto& sig : doc.signatures)
    CHECK(pki::verify_ed25519(sig.certificate_chain[0].public_key, content_signing_input(doc.content),
                              sig.signature_value));
}

TEST_CASE("embedded source is the verbatim container") {
  fixtures::TestPki p;
  const auto st = full_seal(p);
  const auto& embedded = st.seal.annotation.original_document;
  CHECK(embedded.raw == serialize_document(embedded.container));
  const auto out = pki::verify_signature(content_signing_input(embedded.container.content),
                                         embedded.container.signatures.at(0), p.anchors(), p.registry,
                                         fixtures::t0());
  CHECK(out.result == pki::ValidationResult::Valid);
}

TEST_CASE("seal serialisation round trip") {
  fixtures::TestPki p;
  const auto st = full_seal(p);
  const auto bytes = serialize_seal(st);
  const auto back = parse_seal(bytes);
  CHECK(back == st);
  CHECK(serialize_seal(back) == bytes);
  CHECK(parse_seal(bytes, ParseMode::Forensic) == st);
}

TEST_CASE("language specification validation") {
  LanguageSpecification spec{"en", "de", {}, std::nullopt};
  CHECK_NOTHROW(spec.validate());
  spec.target_language = "EN";
  CHECK_THROWS_AS(spec.validate(), Error);
  spec.target_language = "d1";
  CHECK_THROWS_AS(spec.validate(), Error);
  spec = {"en", "de", {{"Greek", "ISO 843"}}, "buddhist-gregorian-th"};
  CHECK(language_specification_from_xml(to_xml(spec)) == spec);
}

TEST_CASE("strict parsing enforces cross-field invariants") {
  fixtures::TestPki p;
  const auto st = full_seal(p);

  SUBCASE("target digest") {
    auto t = st;
    t.target_content = DocumentContent::make(to_bytes("other"), t.target_content.format_id);
    CHECK(parse_error_code(serialize_seal(t)) == ErrorCode::InvariantViolation);
    CHECK_NOTHROW(parse_seal(serialize_seal(t), ParseMode::Forensic));
  }
  SUBCASE("report source id") {
    auto t = st;
    t.seal.workflow_report.source_content_id = compute_content_id(to_bytes("x"));
    CHECK(parse_error_code(serialize_seal(t)) == ErrorCode::InvariantViolation);
  }
  SUBCASE("unsigned record") {
    auto t = st;
    t.seal.workflow_report.records[2].signature.reset();
    CHECK(parse_error_code(serialize_seal(t)) == ErrorCode::InvariantViolation);
  }
  SUBCASE("translator role") {
    auto t = st;
    t.seal.annotation.translator_role = "judge";
    CHECK(parse_error_code(serialize_seal(t)) == ErrorCode::InvariantViolation);
  }
  SUBCASE("original signature count") {
    auto t = st;
    t.seal.annotation.original_signatures.clear();
    CHECK(parse_error_code(serialize_seal(t)) == ErrorCode::InvariantViolation);
  }
  SUBCASE("empty attestation") {
    auto t = st;
    t.seal.annotation.accuracy_attestation.clear();
    CHECK(parse_error_code(serialize_seal(t)) == ErrorCode::InvariantViolation);
    CHECK(parse_error_code(serialize_seal(t), ParseMode::Forensic) == ErrorCode::InvariantViolation);
  }
  SUBCASE("garbage") {
    CHECK(parse_error_code(to_bytes("not xml")) == ErrorCode::ParseError);
    CHECK(parse_error_code(to_bytes("<SignedDocument></SignedDocument>")) == ErrorCode::ParseError);
  }
  SUBCASE("elements out of order") {
    auto root = to_xml(st);
    std::swap(root.children[0], root.children[1]);
    CHECK(parse_error_code(canonicalize(root)) == ErrorCode::ParseError);
  }
}

TEST_CASE("activity digest chains over full records") {
  fixtures::TestPki p;
  const auto st = full_seal(p);
  const auto& recs = st.seal.workflow_report.records;
  REQUIRE(recs.size() == 5);
  CHECK(recs[0].prev_hash.empty());
  for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i].prev_hash == activity_digest(recs[i - 1]));
  CHECK(activity_digest(recs[0]) == compute_content_id(canonicalize(to_xml(recs[0]))));
}
