#pragma once

// Translator registry and sealing service. The service holds one signing
// key and seals on behalf of authorised translators, attaching the
// attribute certificate it obtained for them from its attribute authority.
// State lives in a data directory: PKI material under pki/, a snapshot
// plus an append-only journal, and one file per produced seal.

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "transeal/pki.hpp"
#include "transeal/rule_set.hpp"
#include "transeal/verify_seal.hpp"
#include "transeal/workflow.hpp"

namespace transeal::service {

struct LanguagePair {
  std::string source;
  std::string target;
  bool operator==(const LanguagePair&) const = default;
};

enum class TranslatorStatus { Pending, Authorised, Revoked };
std::string_view to_string(TranslatorStatus s);
TranslatorStatus parse_translator_status(std::string_view s);

struct TranslatorRecord {
  std::string id;
  std::string name;
  std::vector<LanguagePair> languages;
  std::string district_court;
  TranslatorStatus status = TranslatorStatus::Pending;
  std::string credential_digest;  // content id of the shared secret
  std::optional<pki::CertificateRef> attr_cert_ref;
  std::optional<pki::Certificate> identity_certificate;
  std::optional<pki::AttributeCertificate> attribute_certificate;

  bool operator==(const TranslatorRecord&) const = default;
};

struct DirectoryEntry {
  std::string name;
  std::vector<LanguagePair> languages;
  bool operator==(const DirectoryEntry&) const = default;
};

// Simulated district-court directory: authority name -> entries.
class CourtDirectory {
 public:
  void add(const std::string& authority, DirectoryEntry entry);
  bool remove(const std::string& authority, std::string_view name);
  // The entry must list every language pair of the request.
  bool authorises(const std::string& authority, std::string_view name,
                  const std::vector<LanguagePair>& languages) const;
  const std::map<std::string, std::vector<DirectoryEntry>, std::less<>>& entries() const {
    return entries_;
  }
  bool operator==(const CourtDirectory&) const = default;

 private:
  std::map<std::string, std::vector<DirectoryEntry>, std::less<>> entries_;
};

struct ServiceConfig {
  std::filesystem::path data_dir;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string admin_token;
  std::optional<std::filesystem::path> rule_set_path;
  std::string service_name = "CN=Translation Seal Service,O=transeal";
  std::string component_id = "transeal-service";
};

// Reads {dataDir, host, port, adminToken, ruleSet?, serviceName?}. Throws ConfigError.
ServiceConfig parse_service_config(std::string_view json_text);

// Seal request: operator inputs plus the translator's shared secret.
struct SealRequest {
  std::string translator_id;
  std::string credential;
  Bytes source_container;
  OperatorInput input;
};

struct SealJob {
  std::string job_id;
  std::string translator_id;
  Bytes tseal;
};

class Service {
 public:
  explicit Service(ServiceConfig config, Clock clock = system_clock());

  TranslatorRecord register_translator(std::string name, std::vector<LanguagePair> languages,
                                       std::string district_court, std::string_view credential);
  // Throws NotInDirectory (status unchanged) for a pending translator the
  // directory does not list; an authorised translator no longer listed is
  // revoked instead.
  TranslatorRecord authorise(std::string_view id);
  TranslatorRecord revoke(std::string_view id);

  // Throws Unauthorised, RevokedTranslator, NotFound and workflow errors.
  SealJob create_seal(const SealRequest& request);
  SealJob fetch_seal(std::string_view job_id) const;

  // Throws ParseError only.
  SealVerificationReport verify(ByteView tseal) const;

  // By id, else by name. Throws NotFound.
  TranslatorRecord lookup(std::string_view id_or_name) const;

  void directory_add(const std::string& authority, DirectoryEntry entry);
  void directory_remove(const std::string& authority, std::string_view name);

  // Writes the snapshot atomically and truncates the journal.
  void flush();

  pki::TrustAnchors anchors() const;
  pki::RevocationRegistry registry() const;
  CourtDirectory directory() const;
  std::vector<TranslatorRecord> translators() const;
  const pki::Certificate& service_certificate() const { return service_cert_; }
  const ServiceConfig& config() const { return config_; }
  const RuleSet& rules() const { return rules_; }

 private:
  void init_pki();
  void load_state();
  void apply_event(const nlohmann::json& event);
  void journal(const nlohmann::json& event);
  nlohmann::json snapshot_json() const;
  TranslatorRecord& record_for(std::string_view id);
  const TranslatorRecord* find(std::string_view id_or_name) const;
  void revoke_locked(TranslatorRecord& rec, Timestamp now);
  std::string new_id(std::string_view prefix) const;

  ServiceConfig config_;
  Clock clock_;
  RuleSet rules_;
  std::optional<pki::CertificateAuthority> root_;
  std::optional<pki::CertificateAuthority> attribute_authority_;
  pki::KeyPair service_key_;
  pki::Certificate service_cert_;

  mutable std::shared_mutex mutex_;
  std::map<std::string, TranslatorRecord, std::less<>> translators_;
  std::map<std::string, std::string, std::less<>> seal_owners_;  // job id -> translator id
  CourtDirectory directory_;
  pki::RevocationRegistry registry_;
};

// Public view: never includes the credential digest.
nlohmann::json public_view(const TranslatorRecord& rec);

}  // namespace transeal::service
