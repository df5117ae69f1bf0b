#pragma once

// Self-contained mini-PKI: Ed25519 keys, identity certificates, attribute
// certificates, time-stamped revocation and signature validation with path
// checking. Certificates are a minimal bespoke format, serialised with the
// same canonical XML as everything else.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "transeal/encoding.hpp"
#include "transeal/time.hpp"
#include "transeal/xml.hpp"

namespace transeal::pki {

inline constexpr std::string_view kEd25519 = "ed25519";

using PublicKey = std::array<std::uint8_t, 32>;
using Seed = std::array<std::uint8_t, 32>;

struct KeyPair {
  Seed seed{};
  PublicKey public_key{};
  std::array<std::uint8_t, 64> secret_key{};
  std::string key_id;  // content id of the public key

  static KeyPair generate();
  static KeyPair from_seed(const Seed& seed);

  Bytes sign(ByteView message) const;
};

bool verify_ed25519(const PublicKey& key, ByteView message, ByteView signature);
std::string key_id_of(const PublicKey& key);

// Key files hold the 32-byte seed, base64, on one line.
std::string encode_key_file(const KeyPair& key);
KeyPair decode_key_file(std::string_view text);
// "ed25519 <base64 public key> <key id>"
std::string encode_public_key_file(const PublicKey& key);
PublicKey decode_public_key_file(std::string_view text);

struct ValidityPeriod {
  Timestamp not_before;
  Timestamp not_after;

  bool contains(Timestamp t) const { return not_before <= t && t <= not_after; }
  bool operator==(const ValidityPeriod&) const = default;
};

struct Certificate {
  std::string subject;
  std::string issuer;
  std::string serial;  // decimal
  PublicKey public_key{};
  ValidityPeriod validity;
  bool qc_statement = false;
  Bytes issuer_signature;

  bool self_issued() const { return subject == issuer; }
  bool operator==(const Certificate&) const = default;
};

struct CertificateRef {
  std::string issuer;
  std::string serial;
  bool operator==(const CertificateRef&) const = default;
};

struct Attribute {
  std::string type;
  std::string value;
  bool operator==(const Attribute&) const = default;
};

inline constexpr std::string_view kRoleAttribute = "role";
inline constexpr std::string_view kAuthorityAttribute = "authority";

struct AttributeCertificate {
  std::string issuer;
  std::string serial;
  CertificateRef holder;
  std::vector<Attribute> attributes;
  ValidityPeriod validity;
  Bytes issuer_signature;

  std::optional<std::string> attribute(std::string_view type) const;
  bool operator==(const AttributeCertificate&) const = default;
};

struct RevocationEntry {
  std::string issuer;
  std::string serial;
  Timestamp revocation_time;
  bool operator==(const RevocationEntry&) const = default;
};

enum class RevokeResult { Revoked, AlreadyRevoked };

// Append-only. A serial revoked at t is revoked at every time >= t; queries
// are "as of" a time so material used before revocation stays verifiable.
class RevocationRegistry {
 public:
  RevokeResult revoke(std::string issuer, std::string serial, Timestamp when);
  std::optional<Timestamp> revoked_since(std::string_view issuer, std::string_view serial) const;
  bool is_revoked(std::string_view issuer, std::string_view serial, Timestamp at) const;
  const std::vector<RevocationEntry>& entries() const { return entries_; }

  bool operator==(const RevocationRegistry&) const = default;

 private:
  std::vector<RevocationEntry> entries_;
};

class TrustAnchors {
 public:
  TrustAnchors() = default;
  // Each anchor must be self-issued and verify under its own key.
  explicit TrustAnchors(std::vector<Certificate> roots);

  const std::vector<Certificate>& roots() const { return roots_; }
  const Certificate* find_by_subject(std::string_view subject) const;
  bool contains(const Certificate& cert) const;

 private:
  std::vector<Certificate> roots_;
};

// Signing state of an issuing authority. Serial numbers strictly increase
// and are shared between identity and attribute certificates.
class CertificateAuthority {
 public:
  CertificateAuthority(KeyPair key, Certificate certificate, std::uint64_t next_serial);

  static CertificateAuthority create_root(std::string subject, ValidityPeriod validity,
                                          KeyPair key = KeyPair::generate());

  // Throws InvalidValidity, CAExpired.
  Certificate issue(std::string subject, const PublicKey& subject_key, ValidityPeriod validity,
                    bool qc_statement, Timestamp now);

  // Throws EmptyAttributes, HolderRevoked, HolderExpired, InvalidValidity, CAExpired.
  AttributeCertificate issue_attribute(const Certificate& holder, std::vector<Attribute> attributes,
                                       ValidityPeriod validity, const RevocationRegistry& registry,
                                       Timestamp now);

  const KeyPair& key() const { return key_; }
  const Certificate& certificate() const { return certificate_; }
  std::uint64_t next_serial() const { return next_serial_; }

 private:
  void check_issuable(const ValidityPeriod& validity, Timestamp now) const;

  KeyPair key_;
  Certificate certificate_;
  std::uint64_t next_serial_;
};

struct EmbeddedSignature {
  Bytes signature_value;
  std::string algorithm_id;
  TimeStamp signing_time;
  std::vector<Certificate> certificate_chain;  // signer first
  std::vector<AttributeCertificate> attribute_certificates;

  bool operator==(const EmbeddedSignature&) const = default;
};

// Throws KeyMismatch when the chain is empty or its first certificate does
// not carry the key's public half.
EmbeddedSignature sign(ByteView message, const KeyPair& key, std::vector<Certificate> chain,
                       std::vector<AttributeCertificate> attribute_certificates,
                       TimeStamp signing_time);

enum class ValidationResult { Valid, Invalid, Indeterminate };
enum class CertificateStatus { Valid, Revoked, Expired, Unknown };

std::string_view to_string(ValidationResult r);
std::string_view to_string(CertificateStatus s);
ValidationResult parse_validation_result(std::string_view s);
CertificateStatus parse_certificate_status(std::string_view s);

// Reported data of one certificate on a verification path.
struct CertificateData {
  std::string subject;
  std::string issuer;
  std::string serial;
  ValidityPeriod validity;
  bool qc_statement = false;
  CertificateStatus status = CertificateStatus::Unknown;
  bool operator==(const CertificateData&) const = default;
};

struct AttributeCertificateData {
  std::string issuer;
  std::vector<Attribute> attributes;
  bool operator==(const AttributeCertificateData&) const = default;
};

struct ValidationOutcome {
  ValidationResult result = ValidationResult::Indeterminate;
  std::vector<CertificateData> path_report;
  std::vector<AttributeCertificateData> attr_report;
  std::string detail;
};

struct VerifyOptions {
  bool report_only_user_certificate = false;
};

// valid: signature verifies under chain[0], every certificate is within its
// validity period and unrevoked at `at`, and the chain reaches an anchor.
// indeterminate: the chain does not reach any anchor (statuses Unknown).
// invalid: everything else, including a broken attached attribute
// certificate from a known issuer.
ValidationOutcome verify_signature(ByteView message, const EmbeddedSignature& signature,
                                   const TrustAnchors& anchors,
                                   const RevocationRegistry& registry, Timestamp at,
                                   VerifyOptions options = {});

struct AttributeCertificateCheck {
  bool issuer_known = false;
  bool signature_ok = false;
  CertificateStatus status = CertificateStatus::Unknown;
  std::string detail;
  bool ok() const { return issuer_known && signature_ok && status == CertificateStatus::Valid; }
};

// Checks the issuer signature (issuer must be a trust anchor), the validity
// period and revocation of the attribute certificate and of its holder
// reference, all as of `at`.
AttributeCertificateCheck check_attribute_certificate(const AttributeCertificate& ac,
                                                      const TrustAnchors& anchors,
                                                      const RevocationRegistry& registry,
                                                      Timestamp at);

CertificateData report_certificate(const Certificate& cert, CertificateStatus status);
AttributeCertificateData report_attribute_certificate(const AttributeCertificate& ac);

// Display name for a distinguished name: the CN value if present, else the DN.
std::string display_name(std::string_view dn);

// Canonical XML forms.
xml::Element to_xml(const Certificate& cert);
xml::Element to_xml(const AttributeCertificate& ac);
xml::Element to_xml(const RevocationRegistry& registry);
// `element_name` lets the same structure appear as <Signature>,
// <SealSignature> or <ActivitySignature>.
xml::Element to_xml(const EmbeddedSignature& sig, std::string element_name);
xml::Element to_xml(const ValidityPeriod& validity);

Certificate certificate_from_xml(const xml::Element& e);
AttributeCertificate attribute_certificate_from_xml(const xml::Element& e);
RevocationRegistry revocation_registry_from_xml(const xml::Element& e);
EmbeddedSignature embedded_signature_from_xml(const xml::Element& e);
ValidityPeriod validity_from_xml(const xml::Element& e);

// Bytes covered by the issuer signature: the canonical element without
// <IssuerSignature>.
Bytes certificate_body(const Certificate& cert);
Bytes attribute_certificate_body(const AttributeCertificate& ac);

// Shared field codecs.
std::string encode_bool(bool b);
bool decode_bool(std::string_view text);
void append_time_stamp(xml::Element& parent, const TimeStamp& ts, std::string_view time_name);
TimeStamp read_time_stamp(xml::ChildReader& reader, std::string_view time_name);

}  // namespace transeal::pki
