#pragma once

// Test-only PKI and document builders with seeded keys and a stepping clock.

#include <cstdint>
#include <memory>
#include <random>
#include <string>

#include "transeal/pki.hpp"
#include "transeal/rule_set.hpp"
#include "transeal/seal_model.hpp"
#include "transeal/workflow.hpp"

namespace fixtures {

using namespace transeal;

inline pki::KeyPair seeded_key(std::uint64_t n) {
  pki::Seed seed{};
  std::mt19937_64 rng(n * 0x9E3779B97F4A7C15ull + 1);
  for (auto& b : seed) b = static_cast<std::uint8_t>(rng());
  return pki::KeyPair::from_seed(seed);
}

inline Timestamp t0() { return make_utc(2026, 3, 1, 9, 0, 0); }

// Each call returns one second later than the previous one.
inline Clock stepping_clock(Timestamp start = t0()) {
  auto next = std::make_shared<Timestamp>(start);
  return [next] {
    const auto t = *next;
    *next += std::chrono::seconds(1);
    return t;
  };
}

inline pki::ValidityPeriod years(Timestamp from, int n) {
  return {from - std::chrono::hours(24), from + std::chrono::hours(24 * 365 * n)};
}

// Root CA, attribute authority, a translator with identity certificate and
// role attribute certificate, and a source signer.
struct TestPki {
  pki::CertificateAuthority root;
  pki::CertificateAuthority aa;
  pki::KeyPair translator_key;
  pki::Certificate translator_cert;
  pki::AttributeCertificate translator_ac;
  pki::KeyPair signer_key;
  pki::Certificate signer_cert;
  pki::AttributeCertificate signer_ac;
  pki::RevocationRegistry registry;

  explicit TestPki(std::uint64_t seed = 1, std::string authority = "District Court Vienna")
      : root(pki::CertificateAuthority::create_root("CN=Test Root CA,O=Test", years(t0(), 10),
                                                    seeded_key(seed * 100 + 1))),
        aa(pki::CertificateAuthority::create_root("CN=Test Attribute Authority,O=Test",
                                                  years(t0(), 10), seeded_key(seed * 100 + 2))),
        translator_key(seeded_key(seed * 100 + 3)),
        signer_key(seeded_key(seed * 100 + 4)) {
    translator_cert = root.issue("CN=Anna Translator,O=Sworn Translators", translator_key.public_key,
                                 years(t0(), 2), true, t0());
    translator_ac = aa.issue_attribute(
        translator_cert,
        {{std::string(pki::kRoleAttribute), "authorised translator"},
         {std::string(pki::kAuthorityAttribute), authority}},
        years(t0(), 1), registry, t0());
    signer_cert = root.issue("CN=Bert Notary,O=Notaries", signer_key.public_key, years(t0(), 2),
                             true, t0());
    signer_ac = aa.issue_attribute(signer_cert,
                                   {{std::string(pki::kRoleAttribute), "notary"},
                                    {std::string(pki::kAuthorityAttribute), "Chamber of Notaries"}},
                                   years(t0(), 1), registry, t0());
  }

  pki::TrustAnchors anchors() const {
    return pki::TrustAnchors({root.certificate(), aa.certificate()});
  }

  Sealer sealer() const {
    Sealer s;
    s.key = translator_key;
    s.chain = {translator_cert, root.certificate()};
    s.attribute_certificates = {translator_ac};
    return s;
  }
};

inline DocumentContent text_document(std::string text) {
  return DocumentContent::make(to_bytes(text), "text/plain;charset=utf-8");
}

// A source container signed `signatures` times by the test signer.
inline SourceDocument signed_source(const TestPki& p, std::string text, int signatures = 1,
                                    bool with_ac = true) {
  SignedDocumentContainer doc;
  doc.content = text_document(std::move(text));
  for (int i = 0; i < signatures; ++i) {
    std::vector<pki::AttributeCertificate> acs;
    if (with_ac) acs.push_back(p.signer_ac);
    doc.signatures.push_back(sign_content(doc.content, p.signer_key,
                                          {p.signer_cert, p.root.certificate()}, std::move(acs),
                                          {t0() - std::chrono::hours(1) + std::chrono::minutes(i), {}}));
  }
  return SourceDocument::from_bytes(serialize_document(doc));
}

inline OperatorInput operator_input(const SourceDocument& source, std::string translation = "Hallo Welt",
                                    std::string src = "en", std::string dst = "de") {
  OperatorInput in;
  in.operator_id = "anna";
  in.classification.source_format = source.container.content.format_id;
  in.classification.target_format = "text/plain;charset=utf-8";
  in.classification.language.source_language = std::move(src);
  in.classification.language.target_language = std::move(dst);
  in.target = text_document(std::move(translation));
  in.accuracy_attestation = "I hereby certify the completeness and accuracy of this translation.";
  in.sealing_location = "Vienna";
  in.conversion_assay_confirmed = true;
  return in;
}

inline SealedTranslation make_seal(const TestPki& p, const SourceDocument& source,
                                   const OperatorInput& input,
                                   const RuleSet& rules = RuleSet::defaults()) {
  return run_translation_workflow(source, input, rules, p.sealer(), p.anchors(), p.registry,
                                  stepping_clock());
}

}  // namespace fixtures
