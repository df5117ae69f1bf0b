#include "transeal/pki.hpp"

#include <sodium.h>

#include <algorithm>

#include "transeal/digest.hpp"
#include "transeal/error.hpp"

namespace transeal::pki {

// ---------------------------------------------------------------- keys

KeyPair KeyPair::generate() {
  ensure_crypto_ready();
  Seed seed{};
  randombytes_buf(seed.data(), seed.size());
  return from_seed(seed);
}

KeyPair KeyPair::from_seed(const Seed& seed) {
  ensure_crypto_ready();
  KeyPair kp;
  kp.seed = seed;
  if (crypto_sign_seed_keypair(kp.public_key.data(), kp.secret_key.data(), seed.data()) != 0)
    fail(ErrorCode::EntropyFailure, "key derivation failed");
  kp.key_id = key_id_of(kp.public_key);
  return kp;
}

Bytes KeyPair::sign(ByteView message) const {
  Bytes sig(crypto_sign_BYTES);
  crypto_sign_detached(sig.data(), nullptr, message.data(), message.size(), secret_key.data());
  return sig;
}

bool verify_ed25519(const PublicKey& key, ByteView message, ByteView signature) {
  ensure_crypto_ready();
  if (signature.size() != crypto_sign_BYTES) return false;
  return crypto_sign_verify_detached(signature.data(), message.data(), message.size(),
                                     key.data()) == 0;
}

std::string key_id_of(const PublicKey& key) { return compute_content_id(key); }

namespace {

template <std::size_t N>
std::array<std::uint8_t, N> fixed_bytes(std::string_view b64, std::string_view what) {
  const Bytes raw = base64_decode(b64);
  if (raw.size() != N)
    fail(ErrorCode::ParseError, std::string(what) + " must be " + std::to_string(N) + " bytes");
  std::array<std::uint8_t, N> out{};
  std::copy(raw.begin(), raw.end(), out.begin());
  return out;
}

std::string_view strip_line(std::string_view text) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' '))
    text.remove_suffix(1);
  return text;
}

}  // namespace

std::string encode_key_file(const KeyPair& key) { return base64_encode(key.seed) + "\n"; }

KeyPair decode_key_file(std::string_view text) {
  return KeyPair::from_seed(fixed_bytes<32>(strip_line(text), "key seed"));
}

std::string encode_public_key_file(const PublicKey& key) {
  return std::string(kEd25519) + " " + base64_encode(key) + " " + key_id_of(key) + "\n";
}

PublicKey decode_public_key_file(std::string_view text) {
  text = strip_line(text);
  const auto first = text.find(' ');
  if (first == std::string_view::npos || text.substr(0, first) != kEd25519)
    fail(ErrorCode::ParseError, "public key file must start with 'ed25519 '");
  auto rest = text.substr(first + 1);
  const auto second = rest.find(' ');
  const auto key = fixed_bytes<32>(rest.substr(0, second), "public key");
  if (second != std::string_view::npos && rest.substr(second + 1) != key_id_of(key))
    fail(ErrorCode::InvariantViolation, "public key file key id does not match the key");
  return key;
}

// ---------------------------------------------------------------- codecs

std::string encode_bool(bool b) { return b ? "true" : "false"; }

bool decode_bool(std::string_view text) {
  if (text == "true") return true;
  if (text == "false") return false;
  fail(ErrorCode::ParseError, "expected 'true' or 'false', got '" + std::string(text) + "'");
}

namespace {

std::string checked_serial(std::string text) {
  const bool digits_only =
      !text.empty() && std::all_of(text.begin(), text.end(), [](char c) { return c >= '0' && c <= '9'; });
  if (!digits_only || (text.size() > 1 && text.front() == '0'))
    fail(ErrorCode::ParseError, "serial must be a canonical decimal number: '" + text + "'");
  return text;
}

std::string non_empty(std::string text, std::string_view what) {
  if (text.empty()) fail(ErrorCode::ParseError, std::string(what) + " must not be empty");
  return text;
}

xml::Element attributes_to_xml(const std::vector<Attribute>& attributes) {
  xml::Element list("Attributes");
  for (const auto& a : attributes) {
    auto& e = list.add("Attribute");
    e.add("Type", a.type);
    e.add("Value", a.value);
  }
  return list;
}

std::vector<Attribute> attributes_from_xml(const xml::Element& e) {
  xml::ChildReader r(e);
  std::vector<Attribute> out;
  for (const auto* a : r.repeated("Attribute")) {
    xml::ChildReader ar(*a);
    Attribute attr{non_empty(ar.required_text("Type"), "attribute type"), ar.required_text("Value")};
    ar.finish();
    out.push_back(std::move(attr));
  }
  r.finish();
  if (out.empty()) fail(ErrorCode::InvariantViolation, "attribute list must not be empty");
  return out;
}

}  // namespace

void append_time_stamp(xml::Element& parent, const TimeStamp& ts, std::string_view time_name) {
  parent.add(std::string(time_name), format_utc(ts.time));
  if (ts.source) parent.add("TimeSource", *ts.source);
}

TimeStamp read_time_stamp(xml::ChildReader& reader, std::string_view time_name) {
  TimeStamp ts;
  ts.time = parse_timestamp(reader.required_text(time_name));
  if (const auto* src = reader.optional("TimeSource")) ts.source = xml::leaf_text(*src);
  return ts;
}

xml::Element to_xml(const ValidityPeriod& validity) {
  xml::Element e("ValidityPeriod");
  e.add("NotBefore", format_utc(validity.not_before));
  e.add("NotAfter", format_utc(validity.not_after));
  return e;
}

ValidityPeriod validity_from_xml(const xml::Element& e) {
  xml::ChildReader r(e);
  ValidityPeriod v{parse_timestamp(r.required_text("NotBefore")),
                   parse_timestamp(r.required_text("NotAfter"))};
  r.finish();
  if (!(v.not_before < v.not_after))
    fail(ErrorCode::InvariantViolation, "validity period must have NotBefore < NotAfter");
  return v;
}

namespace {

xml::Element certificate_element(const Certificate& cert, bool with_signature) {
  xml::Element e("Certificate");
  e.add("Subject", cert.subject);
  e.add("Issuer", cert.issuer);
  e.add("Serial", cert.serial);
  e.add("PublicKey", base64_encode(cert.public_key));
  e.add(to_xml(cert.validity));
  e.add("QCStatement", encode_bool(cert.qc_statement));
  if (with_signature) e.add("IssuerSignature", base64_encode(cert.issuer_signature));
  return e;
}

xml::Element attribute_certificate_element(const AttributeCertificate& ac, bool with_signature) {
  xml::Element e("AttributeCertificate");
  e.add("Issuer", ac.issuer);
  e.add("Serial", ac.serial);
  auto& holder = e.add("Holder");
  holder.add("Issuer", ac.holder.issuer);
  holder.add("Serial", ac.holder.serial);
  e.add(attributes_to_xml(ac.attributes));
  e.add(to_xml(ac.validity));
  if (with_signature) e.add("IssuerSignature", base64_encode(ac.issuer_signature));
  return e;
}

}  // namespace

xml::Element to_xml(const Certificate& cert) { return certificate_element(cert, true); }
xml::Element to_xml(const AttributeCertificate& ac) { return attribute_certificate_element(ac, true); }

Bytes certificate_body(const Certificate& cert) {
  return to_bytes(xml::write(certificate_element(cert, false)));
}

Bytes attribute_certificate_body(const AttributeCertificate& ac) {
  return to_bytes(xml::write(attribute_certificate_element(ac, false)));
}

Certificate certificate_from_xml(const xml::Element& e) {
  if (e.name != "Certificate") fail(ErrorCode::ParseError, "expected <Certificate>, got <" + e.name + ">");
  xml::ChildReader r(e);
  Certificate c;
  c.subject = non_empty(r.required_text("Subject"), "certificate subject");
  c.issuer = non_empty(r.required_text("Issuer"), "certificate issuer");
  c.serial = checked_serial(r.required_text("Serial"));
  c.public_key = fixed_bytes<32>(r.required_text("PublicKey"), "public key");
  c.validity = validity_from_xml(r.required("ValidityPeriod"));
  c.qc_statement = decode_bool(r.required_text("QCStatement"));
  c.issuer_signature = base64_decode(r.required_text("IssuerSignature"));
  r.finish();
  return c;
}

AttributeCertificate attribute_certificate_from_xml(const xml::Element& e) {
  if (e.name != "AttributeCertificate")
    fail(ErrorCode::ParseError, "expected <AttributeCertificate>, got <" + e.name + ">");
  xml::ChildReader r(e);
  AttributeCertificate ac;
  ac.issuer = non_empty(r.required_text("Issuer"), "attribute certificate issuer");
  ac.serial = checked_serial(r.required_text("Serial"));
  {
    xml::ChildReader hr(r.required("Holder"));
    ac.holder.issuer = non_empty(hr.required_text("Issuer"), "holder issuer");
    ac.holder.serial = checked_serial(hr.required_text("Serial"));
    hr.finish();
  }
  ac.attributes = attributes_from_xml(r.required("Attributes"));
  ac.validity = validity_from_xml(r.required("ValidityPeriod"));
  ac.issuer_signature = base64_decode(r.required_text("IssuerSignature"));
  r.finish();
  return ac;
}

xml::Element to_xml(const RevocationRegistry& registry) {
  xml::Element e("RevocationRegistry");
  for (const auto& entry : registry.entries()) {
    auto& r = e.add("Revocation");
    r.add("Issuer", entry.issuer);
    r.add("Serial", entry.serial);
    r.add("RevocationTime", format_utc(entry.revocation_time));
  }
  return e;
}

RevocationRegistry revocation_registry_from_xml(const xml::Element& e) {
  if (e.name != "RevocationRegistry")
    fail(ErrorCode::ParseError, "expected <RevocationRegistry>, got <" + e.name + ">");
  xml::ChildReader r(e);
  RevocationRegistry registry;
  for (const auto* entry : r.repeated("Revocation")) {
    xml::ChildReader er(*entry);
    auto issuer = er.required_text("Issuer");
    auto serial = checked_serial(er.required_text("Serial"));
    const auto when = parse_timestamp(er.required_text("RevocationTime"));
    er.finish();
    registry.revoke(std::move(issuer), std::move(serial), when);
  }
  r.finish();
  return registry;
}

xml::Element to_xml(const EmbeddedSignature& sig, std::string element_name) {
  xml::Element e(std::move(element_name));
  e.add("Algorithm", sig.algorithm_id);
  append_time_stamp(e, sig.signing_time, "SigningTime");
  e.add("Value", base64_encode(sig.signature_value));
  auto& chain = e.add("CertificateChain");
  for (const auto& c : sig.certificate_chain) chain.add(to_xml(c));
  if (!sig.attribute_certificates.empty()) {
    auto& acs = e.add("AttributeCertificates");
    for (const auto& ac : sig.attribute_certificates) acs.add(to_xml(ac));
  }
  return e;
}

EmbeddedSignature embedded_signature_from_xml(const xml::Element& e) {
  xml::ChildReader r(e);
  EmbeddedSignature sig;
  sig.algorithm_id = non_empty(r.required_text("Algorithm"), "signature algorithm");
  sig.signing_time = read_time_stamp(r, "SigningTime");
  sig.signature_value = base64_decode(r.required_text("Value"));
  {
    const auto& chain = r.required("CertificateChain");
    xml::ChildReader cr(chain);
    for (const auto* c : cr.repeated("Certificate")) sig.certificate_chain.push_back(certificate_from_xml(*c));
    cr.finish();
  }
  if (const auto* acs = r.optional("AttributeCertificates")) {
    xml::ChildReader ar(*acs);
    for (const auto* ac : ar.repeated("AttributeCertificate"))
      sig.attribute_certificates.push_back(attribute_certificate_from_xml(*ac));
    ar.finish();
    if (sig.attribute_certificates.empty())
      fail(ErrorCode::ParseError, "<AttributeCertificates> present but empty");
  }
  r.finish();
  if (sig.certificate_chain.empty())
    fail(ErrorCode::InvariantViolation, "signature certificate chain must not be empty");
  return sig;
}

// ---------------------------------------------------------------- registry

RevokeResult RevocationRegistry::revoke(std::string issuer, std::string serial, Timestamp when) {
  if (revoked_since(issuer, serial)) return RevokeResult::AlreadyRevoked;
  entries_.push_back({std::move(issuer), std::move(serial), when});
  return RevokeResult::Revoked;
}

std::optional<Timestamp> RevocationRegistry::revoked_since(std::string_view issuer,
                                                           std::string_view serial) const {
  for (const auto& e : entries_)
    if (e.issuer == issuer && e.serial == serial) return e.revocation_time;
  return std::nullopt;
}

bool RevocationRegistry::is_revoked(std::string_view issuer, std::string_view serial,
                                    Timestamp at) const {
  const auto since = revoked_since(issuer, serial);
  return since && *since <= at;
}

// ---------------------------------------------------------------- anchors

TrustAnchors::TrustAnchors(std::vector<Certificate> roots) : roots_(std::move(roots)) {
  for (const auto& r : roots_) {
    if (!r.self_issued() ||
        !verify_ed25519(r.public_key, certificate_body(r), r.issuer_signature))
      fail(ErrorCode::InvariantViolation,
           "trust anchor '" + r.subject + "' is not a valid self-signed certificate");
  }
}

const Certificate* TrustAnchors::find_by_subject(std::string_view subject) const {
  for (const auto& r : roots_)
    if (r.subject == subject) return &r;
  return nullptr;
}

bool TrustAnchors::contains(const Certificate& cert) const {
  return std::find(roots_.begin(), roots_.end(), cert) != roots_.end();
}

// ---------------------------------------------------------------- CA

CertificateAuthority::CertificateAuthority(KeyPair key, Certificate certificate,
                                           std::uint64_t next_serial)
    : key_(std::move(key)), certificate_(std::move(certificate)), next_serial_(next_serial) {
  if (certificate_.public_key != key_.public_key)
    fail(ErrorCode::KeyMismatch, "CA certificate does not match the CA key");
}

CertificateAuthority CertificateAuthority::create_root(std::string subject, ValidityPeriod validity,
                                                       KeyPair key) {
  if (!(validity.not_before < validity.not_after))
    fail(ErrorCode::InvalidValidity, "NotBefore must precede NotAfter");
  Certificate root;
  root.subject = subject;
  root.issuer = std::move(subject);
  root.serial = "1";
  root.public_key = key.public_key;
  root.validity = validity;
  root.issuer_signature = key.sign(certificate_body(root));
  return CertificateAuthority(std::move(key), std::move(root), 2);
}

void CertificateAuthority::check_issuable(const ValidityPeriod& validity, Timestamp now) const {
  if (!(validity.not_before < validity.not_after))
    fail(ErrorCode::InvalidValidity, "NotBefore must precede NotAfter");
  if (!certificate_.validity.contains(now))
    fail(ErrorCode::CAExpired, "CA certificate '" + certificate_.subject + "' is not valid at " +
                                   format_utc(now));
}

Certificate CertificateAuthority::issue(std::string subject, const PublicKey& subject_key,
                                        ValidityPeriod validity, bool qc_statement, Timestamp now) {
  check_issuable(validity, now);
  Certificate c;
  c.subject = std::move(subject);
  c.issuer = certificate_.subject;
  c.serial = std::to_string(next_serial_++);
  c.public_key = subject_key;
  c.validity = validity;
  c.qc_statement = qc_statement;
  c.issuer_signature = key_.sign(certificate_body(c));
  return c;
}

AttributeCertificate CertificateAuthority::issue_attribute(const Certificate& holder,
                                                           std::vector<Attribute> attributes,
                                                           ValidityPeriod validity,
                                                           const RevocationRegistry& registry,
                                                           Timestamp now) {
  if (attributes.empty()) fail(ErrorCode::EmptyAttributes, "attribute list must not be empty");
  if (registry.is_revoked(holder.issuer, holder.serial, now))
    fail(ErrorCode::HolderRevoked, "holder certificate '" + holder.subject + "' is revoked");
  if (!holder.validity.contains(now))
    fail(ErrorCode::HolderExpired, "holder certificate '" + holder.subject + "' is not valid at " +
                                       format_utc(now));
  check_issuable(validity, now);
  AttributeCertificate ac;
  ac.issuer = certificate_.subject;
  ac.serial = std::to_string(next_serial_++);
  ac.holder = {holder.issuer, holder.serial};
  ac.attributes = std::move(attributes);
  ac.validity = validity;
  ac.issuer_signature = key_.sign(attribute_certificate_body(ac));
  return ac;
}

std::optional<std::string> AttributeCertificate::attribute(std::string_view type) const {
  for (const auto& a : attributes)
    if (a.type == type) return a.value;
  return std::nullopt;
}

// ---------------------------------------------------------------- signatures

EmbeddedSignature sign(ByteView message, const KeyPair& key, std::vector<Certificate> chain,
                       std::vector<AttributeCertificate> attribute_certificates,
                       TimeStamp signing_time) {
  if (chain.empty()) fail(ErrorCode::KeyMismatch, "certificate chain is empty");
  if (chain.front().public_key != key.public_key)
    fail(ErrorCode::KeyMismatch,
         "signing key does not match certificate '" + chain.front().subject + "'");
  EmbeddedSignature sig;
  sig.signature_value = key.sign(message);
  sig.algorithm_id = std::string(kEd25519);
  sig.signing_time = std::move(signing_time);
  sig.certificate_chain = std::move(chain);
  sig.attribute_certificates = std::move(attribute_certificates);
  return sig;
}

std::string_view to_string(ValidationResult r) {
  switch (r) {
    case ValidationResult::Valid: return "valid";
    case ValidationResult::Invalid: return "invalid";
    case ValidationResult::Indeterminate: return "indeterminate";
  }
  return "invalid";
}

std::string_view to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::Valid: return "valid";
    case CertificateStatus::Revoked: return "revoked";
    case CertificateStatus::Expired: return "expired";
    case CertificateStatus::Unknown: return "unknown";
  }
  return "unknown";
}

ValidationResult parse_validation_result(std::string_view s) {
  for (auto r : {ValidationResult::Valid, ValidationResult::Invalid, ValidationResult::Indeterminate})
    if (to_string(r) == s) return r;
  fail(ErrorCode::ParseError, "unknown validation result '" + std::string(s) + "'");
}

CertificateStatus parse_certificate_status(std::string_view s) {
  for (auto st : {CertificateStatus::Valid, CertificateStatus::Revoked, CertificateStatus::Expired,
                  CertificateStatus::Unknown})
    if (to_string(st) == s) return st;
  fail(ErrorCode::ParseError, "unknown certificate status '" + std::string(s) + "'");
}

CertificateData report_certificate(const Certificate& cert, CertificateStatus status) {
  return {cert.subject, cert.issuer, cert.serial, cert.validity, cert.qc_statement, status};
}

AttributeCertificateData report_attribute_certificate(const AttributeCertificate& ac) {
  return {ac.issuer, ac.attributes};
}

std::string display_name(std::string_view dn) {
  std::size_t pos = 0;
  while (pos < dn.size()) {
    const auto comma = dn.find(',', pos);
    auto part = dn.substr(pos, comma == std::string_view::npos ? dn.size() - pos : comma - pos);
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    if (part.size() > 3 && (part.substr(0, 3) == "CN=" || part.substr(0, 3) == "cn="))
      return std::string(part.substr(3));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return std::string(dn);
}

namespace {

CertificateStatus status_at(const Certificate& cert, const RevocationRegistry& registry,
                            Timestamp at) {
  if (registry.is_revoked(cert.issuer, cert.serial, at)) return CertificateStatus::Revoked;
  if (!cert.validity.contains(at)) return CertificateStatus::Expired;
  return CertificateStatus::Valid;
}

}  // namespace

ValidationOutcome verify_signature(ByteView message, const EmbeddedSignature& signature,
                                   const TrustAnchors& anchors,
                                   const RevocationRegistry& registry, Timestamp at,
                                   VerifyOptions options) {
  ValidationOutcome out;
  const auto& chain = signature.certificate_chain;
  std::vector<std::string> problems;

  bool crypto_ok = false;
  if (signature.algorithm_id != kEd25519) {
    problems.push_back("unsupported algorithm '" + signature.algorithm_id + "'");
  } else if (chain.empty()) {
    problems.push_back("empty certificate chain");
  } else {
    crypto_ok = verify_ed25519(chain.front().public_key, message, signature.signature_value);
    if (!crypto_ok) problems.push_back("signature value does not verify");
  }

  // Walk the path towards a trust anchor. `linked` stays false when the
  // issuer of the last certificate is not an anchor.
  bool linked = false;
  bool links_ok = true;
  std::vector<bool> cert_sig_ok(chain.size(), true);
  for (std::size_t i = 0; i < chain.size(); ++i) {
    const Certificate& cert = chain[i];
    if (anchors.contains(cert)) {
      linked = true;
      break;
    }
    const PublicKey* issuer_key = nullptr;
    if (i + 1 < chain.size()) {
      if (chain[i + 1].subject != cert.issuer) {
        problems.push_back("certificate '" + cert.subject + "' is not issued by the next chain entry");
        links_ok = false;
        cert_sig_ok[i] = false;
        break;
      }
      issuer_key = &chain[i + 1].public_key;
    } else if (const Certificate* anchor = anchors.find_by_subject(cert.issuer)) {
      issuer_key = &anchor->public_key;
      linked = true;
    } else {
      break;
    }
    if (!verify_ed25519(*issuer_key, certificate_body(cert), cert.issuer_signature)) {
      problems.push_back("issuer signature on certificate '" + cert.subject + "' does not verify");
      links_ok = false;
      cert_sig_ok[i] = false;
    }
  }
  if (!linked && links_ok) problems.push_back("certificate chain does not reach a trust anchor");

  bool statuses_ok = true;
  for (std::size_t i = 0; i < chain.size(); ++i) {
    CertificateStatus status = CertificateStatus::Unknown;
    if (linked && cert_sig_ok[i]) status = status_at(chain[i], registry, at);
    if (linked && status != CertificateStatus::Valid) {
      statuses_ok = false;
      problems.push_back("certificate '" + chain[i].subject + "' status " +
                         std::string(to_string(status)));
    }
    out.path_report.push_back(report_certificate(chain[i], status));
  }
  if (options.report_only_user_certificate && out.path_report.size() > 1)
    out.path_report.resize(1);

  bool attrs_ok = true;
  for (const auto& ac : signature.attribute_certificates) {
    out.attr_report.push_back(report_attribute_certificate(ac));
    const Certificate* issuer = anchors.find_by_subject(ac.issuer);
    if (issuer && !verify_ed25519(issuer->public_key, attribute_certificate_body(ac),
                                  ac.issuer_signature)) {
      attrs_ok = false;
      problems.push_back("issuer signature on attribute certificate " + ac.serial +
                         " does not verify");
    }
  }

  if (!crypto_ok || !links_ok || !attrs_ok) {
    out.result = ValidationResult::Invalid;
  } else if (!linked) {
    out.result = ValidationResult::Indeterminate;
  } else {
    out.result = statuses_ok ? ValidationResult::Valid : ValidationResult::Invalid;
  }
  for (std::size_t i = 0; i < problems.size(); ++i) {
    if (i) out.detail += "; ";
    out.detail += problems[i];
  }
  return out;
}

AttributeCertificateCheck check_attribute_certificate(const AttributeCertificate& ac,
                                                      const TrustAnchors& anchors,
                                                      const RevocationRegistry& registry,
                                                      Timestamp at) {
  AttributeCertificateCheck check;
  const Certificate* issuer = anchors.find_by_subject(ac.issuer);
  if (!issuer) {
    check.detail = "attribute certificate issuer '" + ac.issuer + "' is not a trust anchor";
    return check;
  }
  check.issuer_known = true;
  check.signature_ok =
      verify_ed25519(issuer->public_key, attribute_certificate_body(ac), ac.issuer_signature);
  if (!check.signature_ok) {
    check.detail = "attribute certificate signature does not verify";
    return check;
  }
  if (registry.is_revoked(ac.issuer, ac.serial, at)) {
    check.status = CertificateStatus::Revoked;
    check.detail = "attribute certificate " + ac.serial + " is revoked";
  } else if (registry.is_revoked(ac.holder.issuer, ac.holder.serial, at)) {
    check.status = CertificateStatus::Revoked;
    check.detail = "holder certificate " + ac.holder.serial + " is revoked";
  } else if (!ac.validity.contains(at)) {
    check.status = CertificateStatus::Expired;
    check.detail = "attribute certificate " + ac.serial + " is outside its validity period";
  } else {
    check.status = CertificateStatus::Valid;
  }
  return check;
}

}  // namespace transeal::pki
