#include <doctest.h>

#include "support/fixtures.hpp"
#include "transeal/verify_seal.hpp"

using namespace transeal;
using fixtures::t0;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("phases run strictly in order") {
  fixtures::TestPki p;
  const auto src = fixtures::signed_source(p, "a");
  const auto in = fixtures::operator_input(src);
  WorkflowSession s(src, RuleSet::defaults(), p.sealer(), p.anchors(), p.registry, fixtures::stepping_clock());
  CHECK(s.next_activity() == Activity::Classification);
  CHECK(code_of([&] { s.extract_signatures(); }) == ErrorCode::PhaseOrder);
  CHECK(code_of([&] { s.transformation_assay(in); }) == ErrorCode::PhaseOrder);
  s.classify(in);
  CHECK(code_of([&] { s.classify(in); }) == ErrorCode::PhaseOrder);
  s.extract_signatures();
  CHECK(code_of([&] { s.conversion_assay(in); }) == ErrorCode::PhaseOrder);
  s.record_conversion(in);
  s.conversion_assay(in);
  const auto st = s.transformation_assay(in);
  CHECK_FALSE(s.next_activity().has_value());
  CHECK(s.report() == st.seal.workflow_report);
  CHECK(verify_seal(st, p.anchors(), p.registry).all_ok());
}

TEST_CASE("records are chained, signed and timed") {
  fixtures::TestPki p;
  const auto src = fixtures::signed_source(p, "a");
  const auto st = fixtures::make_seal(p, src, fixtures::operator_input(src));
  const auto& recs = st.seal.workflow_report.records;
  REQUIRE(recs.size() == 5);
  CHECK(check_report_chain(st.seal.workflow_report, &p.translator_key.public_key).ok);
  for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i].start_time >= recs[i - 1].end_time);
  CHECK(recs[0].performer_id == "operator:anna+component:transeal");
  CHECK(recs[1].performer_id == "component:transeal");
  CHECK(recs[2].performer_id == "operator:anna");
  CHECK(recs[3].performer_id == "operator:anna");
  CHECK(st.seal.annotation.sealing_time.time == recs[4].end_time);
  CHECK(st.seal.seal_signature.signing_time == st.seal.annotation.sealing_time);
}

TEST_CASE("conversion record") {
  fixtures::TestPki p;
  const auto src = fixtures::signed_source(p, "a");
  auto in = fixtures::operator_input(src);
  in.defects = std::vector<std::string>{"coffee stain"};
  const auto st = fixtures::make_seal(p, src, in);
  const auto* conv = st.seal.workflow_report.find(Activity::Conversion);
  REQUIRE(conv);
  CHECK(conv->payload.find("TargetContentId")->text == st.seal.target_digest);
  CHECK(conv->payload.find("ConversionProtocol")->find("Method")->text == "human translation");
  CHECK(conv->payload.find("ErrorLog")->children.at(0).text == "coffee stain");
}

TEST_CASE("empty target and declined assay abort the workflow") {
  fixtures::TestPki p;
  const auto src = fixtures::signed_source(p, "a");
  auto in = fixtures::operator_input(src);
  in.target = DocumentContent::make({}, "text/plain;charset=utf-8");
  CHECK(code_of([&] { fixtures::make_seal(p, src, in); }) == ErrorCode::EmptyTarget);
  in = fixtures::operator_input(src);
  in.conversion_assay_confirmed = false;
  try {
    fixtures::make_seal(p, src, in);
    FAIL("sealed without confirmation");
  } catch (const WorkflowAborted& e) {
    CHECK(e.code() == ErrorCode::AssayDeclined);
    CHECK(e.partial_report().records.size() == 3);
  }
}

TEST_CASE("invalid language input is rejected before any record") {
  fixtures::TestPki p;
  const auto src = fixtures::signed_source(p, "a");
  try {
    fixtures::make_seal(p, src, fixtures::operator_input(src, "x", "en", "en"));
    FAIL("accepted equal languages");
  } catch (const WorkflowAborted& e) {
    CHECK(e.code() == ErrorCode::InvalidLanguageTag);
    CHECK(e.partial_report().records.empty());
  }
  CHECK(code_of([&] { fixtures::make_seal(p, src, fixtures::operator_input(src, "x", "q1", "en")); }) ==
        ErrorCode::InvalidLanguageTag);
}

TEST_CASE("source signature problems are carried, not fatal") {
  fixtures::TestPki p;
  const auto src = fixtures::signed_source(p, "a", 1);
  auto reg = p.registry;
  reg.revoke(p.signer_cert.issuer, p.signer_cert.serial, t0() - std::chrono::hours(2));
  const auto st = run_translation_workflow(src, fixtures::operator_input(src), RuleSet::defaults(), p.sealer(),
                                           p.anchors(), reg, fixtures::stepping_clock());
  const auto& rep = st.seal.annotation.original_signatures.at(0);
  CHECK(rep.validation_result == pki::ValidationResult::Invalid);
  CHECK(rep.certificates.at(0).status == pki::CertificateStatus::Revoked);
  CHECK(verify_seal(st, p.anchors(), reg).all_ok());
}

TEST_CASE("unsigned sources seal with an empty signature list") {
  fixtures::TestPki p;
  const auto src = fixtures::signed_source(p, "a", 0);
  const auto st = fixtures::make_seal(p, src, fixtures::operator_input(src));
  CHECK(st.seal.annotation.original_signatures.empty());
  CHECK(verify_seal(st, p.anchors(), p.registry).all_ok());
}

TEST_CASE("sealing time source label is recorded") {
  fixtures::TestPki p;
  const auto src = fixtures::signed_source(p, "a");
  auto in = fixtures::operator_input(src);
  in.sealing_time_source = "tsa.example.org";
  const auto st = fixtures::make_seal(p, src, in);
  CHECK(st.seal.annotation.sealing_time.source == "tsa.example.org");
  CHECK(verify_seal(parse_seal(serialize_seal(st)), p.anchors(), p.registry).all_ok());
}

TEST_CASE("rule-set configuration") {
  const auto rs = RuleSet::defaults();
  CHECK_NOTHROW(rs.validate());
  const auto text = xml::write(to_xml(rs));
  CHECK(load_rule_set(text) == rs);
  CHECK(load_rule_set(text).digest() == rs.digest());
  CHECK(rs.digest().rfind("sha-256:", 0) == 0);

  auto changed = rs;
  changed.activities[0].rules[1].parameters["allowedFormats"].push_back("image/png");
  CHECK(changed.digest() != rs.digest());

  auto missing = rs;
  missing.activities[4].rules.pop_back();
  CHECK(code_of([&] { missing.validate(); }) == ErrorCode::ConfigError);

  auto misfiled = rs;
  misfiled.activities[2].rules.push_back(misfiled.activities[0].rules[0]);
  CHECK(code_of([&] { misfiled.validate(); }) == ErrorCode::ConfigError);

  auto reordered = rs;
  std::swap(reordered.activities[0], reordered.activities[1]);
  CHECK(code_of([&] { reordered.validate(); }) == ErrorCode::ConfigError);

  auto unknown = rs;
  unknown.activities[0].rules.push_back({"RULE_CLASSIFICATION_Unknown", {}});
  CHECK(code_of([&] { unknown.validate(); }) == ErrorCode::ConfigError);

  CHECK(code_of([&] { load_rule_set("<RuleSet><Name>x</Name></RuleSet>"); }) != ErrorCode::RuleFailure);
}

TEST_CASE("optional rules can be left out") {
  fixtures::TestPki p;
  const auto src = fixtures::signed_source(p, "a");
  auto rules = RuleSet::defaults();
  rules.activities[0].rules.erase(rules.activities[0].rules.begin() + 1, rules.activities[0].rules.end());
  rules.activities[1].rules.clear();
  const auto st = fixtures::make_seal(p, src, fixtures::operator_input(src), rules);
  CHECK(st.seal.annotation.original_signatures.at(0).validation_result == pki::ValidationResult::Indeterminate);
  CHECK(verify_seal(st, p.anchors(), p.registry).all_ok());
}
