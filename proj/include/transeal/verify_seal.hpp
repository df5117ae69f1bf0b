#pragma once

// Independent verification of a sealed translation. Never throws for a
// well-formed SealedTranslation; every problem is reported.

#include <string>
#include <vector>

#include "transeal/pki.hpp"
#include "transeal/seal_model.hpp"

namespace transeal {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SealVerificationReport {
  // Validated as of the annotation's sealing time.
  pki::ValidationOutcome seal_signature;
  bool binding_ok = false;
  bool report_chain_ok = false;
  bool authorisation_ok = false;
  std::vector<pki::AttributeCertificateData> authorisation;
  // Individual checks behind the three flags, in evaluation order.
  std::vector<CheckResult> checks;
  // Rule outcomes recorded in the workflow report.
  std::vector<RuleOutcome> per_rule;
  Timestamp sealing_time{};
  std::string signer;

  bool all_ok() const {
    return seal_signature.result == pki::ValidationResult::Valid && binding_ok &&
           report_chain_ok && authorisation_ok;
  }
};

SealVerificationReport verify_seal(const SealedTranslation& sealed, const pki::TrustAnchors& anchors,
                                   const pki::RevocationRegistry& registry);

}  // namespace transeal
