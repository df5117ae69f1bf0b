#include "transeal/service.hpp"

#include <sodium.h>

#include <algorithm>
#include <fstream>
#include <mutex>
#include <sstream>

#include "transeal/digest.hpp"
#include "transeal/i18n.hpp"

namespace transeal::service {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

inline constexpr std::string_view kTranslatorRole = "authorised translator";

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Write to a sibling temporary, then rename over the target.
void write_file_atomic(const fs::path& path, std::string_view data) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::IoError, "cannot write " + tmp.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    out.flush();
    if (!out) fail(ErrorCode::IoError, "cannot write " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::IoError, "cannot replace " + path.string() + ": " + ec.message());
}

json to_json(const LanguagePair& p) { return {{"source", p.source}, {"target", p.target}}; }

std::vector<LanguagePair> pairs_from_json(const json& j) {
  std::vector<LanguagePair> out;
  for (const auto& p : j) out.push_back({p.at("source").get<std::string>(), p.at("target").get<std::string>()});
  return out;
}

json pairs_to_json(const std::vector<LanguagePair>& pairs) {
  json out = json::array();
  for (const auto& p : pairs) out.push_back(to_json(p));
  return out;
}

json record_to_json(const TranslatorRecord& r) {
  json j = {{"id", r.id},
            {"name", r.name},
            {"languages", pairs_to_json(r.languages)},
            {"districtCourt", r.district_court},
            {"status", to_string(r.status)},
            {"credentialDigest", r.credential_digest}};
  if (r.attr_cert_ref) j["attrCertRef"] = {{"issuer", r.attr_cert_ref->issuer}, {"serial", r.attr_cert_ref->serial}};
  if (r.identity_certificate) j["identityCertificate"] = xml::write(pki::to_xml(*r.identity_certificate));
  if (r.attribute_certificate)
    j["attributeCertificate"] = xml::write(pki::to_xml(*r.attribute_certificate));
  return j;
}

TranslatorRecord record_from_json(const json& j) {
  TranslatorRecord r;
  r.id = j.at("id").get<std::string>();
  r.name = j.at("name").get<std::string>();
  r.languages = pairs_from_json(j.at("languages"));
  r.district_court = j.at("districtCourt").get<std::string>();
  r.status = parse_translator_status(j.at("status").get<std::string>());
  r.credential_digest = j.at("credentialDigest").get<std::string>();
  if (j.contains("attrCertRef"))
    r.attr_cert_ref = pki::CertificateRef{j["attrCertRef"].at("issuer").get<std::string>(),
                                          j["attrCertRef"].at("serial").get<std::string>()};
  if (j.contains("identityCertificate"))
    r.identity_certificate = pki::certificate_from_xml(xml::parse(j["identityCertificate"].get<std::string>()));
  if (j.contains("attributeCertificate"))
    r.attribute_certificate =
        pki::attribute_certificate_from_xml(xml::parse(j["attributeCertificate"].get<std::string>()));
  return r;
}

json directory_entries_json(const std::vector<DirectoryEntry>& entries) {
  json out = json::array();
  for (const auto& e : entries) out.push_back({{"name", e.name}, {"languages", pairs_to_json(e.languages)}});
  return out;
}

std::vector<DirectoryEntry> directory_entries_from_json(const json& j) {
  std::vector<DirectoryEntry> out;
  for (const auto& e : j) out.push_back({e.at("name").get<std::string>(), pairs_from_json(e.at("languages"))});
  return out;
}

pki::KeyPair load_or_create_key(const fs::path& path) {
  if (fs::exists(path)) return pki::decode_key_file(read_file(path));
  auto key = pki::KeyPair::generate();
  write_file_atomic(path, pki::encode_key_file(key));
  fs::permissions(path, fs::perms::owner_read | fs::perms::owner_write, fs::perm_options::replace);
  return key;
}

pki::ValidityPeriod years_from(Timestamp now, int years) {
  return {now - std::chrono::minutes(5), now + std::chrono::hours(24 * 365 * years)};
}

bool credential_matches(const std::string& digest, std::string_view credential) {
  const std::string presented = compute_content_id(as_bytes(credential));
  return presented.size() == digest.size() &&
         sodium_memcmp(presented.data(), digest.data(), digest.size()) == 0;
}

}  // namespace

std::string_view to_string(TranslatorStatus s) {
  switch (s) {
    case TranslatorStatus::Pending: return "pending";
    case TranslatorStatus::Authorised: return "authorised";
    case TranslatorStatus::Revoked: return "revoked";
  }
  return "pending";
}

TranslatorStatus parse_translator_status(std::string_view s) {
  if (s == "pending") return TranslatorStatus::Pending;
  if (s == "authorised") return TranslatorStatus::Authorised;
  if (s == "revoked") return TranslatorStatus::Revoked;
  fail(ErrorCode::ParseError, "unknown translator status '" + std::string(s) + "'");
}

// ---------------------------------------------------------------- directory

void CourtDirectory::add(const std::string& authority, DirectoryEntry entry) {
  auto& list = entries_[authority];
  auto it = std::find_if(list.begin(), list.end(), [&](const auto& e) { return e.name == entry.name; });
  if (it != list.end()) *it = std::move(entry);
  else list.push_back(std::move(entry));
}

bool CourtDirectory::remove(const std::string& authority, std::string_view name) {
  auto it = entries_.find(authority);
  if (it == entries_.end()) return false;
  auto& list = it->second;
  const auto before = list.size();
  std::erase_if(list, [&](const auto& e) { return e.name == name; });
  return list.size() != before;
}

bool CourtDirectory::authorises(const std::string& authority, std::string_view name,
                                const std::vector<LanguagePair>& languages) const {
  auto it = entries_.find(authority);
  if (it == entries_.end()) return false;
  for (const auto& entry : it->second) {
    if (entry.name != name) continue;
    return std::all_of(languages.begin(), languages.end(), [&](const LanguagePair& want) {
      return std::any_of(entry.languages.begin(), entry.languages.end(), [&](const LanguagePair& have) {
        return i18n::same_language(have.source, want.source) && i18n::same_language(have.target, want.target);
      });
    });
  }
  return false;
}

// ---------------------------------------------------------------- config

ServiceConfig parse_service_config(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) fail(ErrorCode::ConfigError, "config must be a JSON object");
  ServiceConfig c;
  try {
    if (!j.contains("dataDir")) fail(ErrorCode::ConfigError, "config needs dataDir");
    c.data_dir = j.at("dataDir").get<std::string>();
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
    c.admin_token = j.value("adminToken", std::string{});
    if (j.contains("ruleSet")) c.rule_set_path = j["ruleSet"].get<std::string>();
    c.service_name = j.value("serviceName", c.service_name);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, std::string("config field has the wrong type: ") + e.what());
  }
  if (c.data_dir.empty()) fail(ErrorCode::ConfigError, "dataDir must not be empty");
  if (c.admin_token.empty()) fail(ErrorCode::ConfigError, "adminToken must not be empty");
  if (c.port < 0 || c.port > 65535) fail(ErrorCode::ConfigError, "port out of range");
  return c;
}

// ---------------------------------------------------------------- service

Service::Service(ServiceConfig config, Clock clock)
    : config_(std::move(config)), clock_(std::move(clock)), rules_(RuleSet::defaults()) {
  if (config_.rule_set_path) rules_ = load_rule_set(read_file(*config_.rule_set_path));
  rules_.validate();
  std::error_code ec;
  fs::create_directories(config_.data_dir / "pki", ec);
  fs::create_directories(config_.data_dir / "seals", ec);
  if (ec) fail(ErrorCode::IoError, "cannot create " + config_.data_dir.string() + ": " + ec.message());
  init_pki();
  load_state();
}

void Service::init_pki() {
  const fs::path dir = config_.data_dir / "pki";
  const Timestamp now = clock_();
  const auto root_key = load_or_create_key(dir / "root.key");
  const auto aa_key = load_or_create_key(dir / "attribute-authority.key");
  service_key_ = load_or_create_key(dir / "service.key");

  auto load_root = [&](const fs::path& path, const pki::KeyPair& key, const std::string& subject) {
    if (fs::exists(path)) {
      auto cert = pki::certificate_from_xml(xml::parse(read_file(path)));
      return pki::CertificateAuthority(key, std::move(cert), 2);
    }
    auto ca = pki::CertificateAuthority::create_root(subject, years_from(now, 20), key);
    write_file_atomic(path, xml::write(pki::to_xml(ca.certificate())));
    return ca;
  };
  root_.emplace(load_root(dir / "root.cert", root_key, "CN=transeal Root CA,O=transeal"));
  attribute_authority_.emplace(
      load_root(dir / "attribute-authority.cert", aa_key, "CN=transeal Attribute Authority,O=transeal"));

  const fs::path service_cert = dir / "service.cert";
  if (fs::exists(service_cert)) {
    service_cert_ = pki::certificate_from_xml(xml::parse(read_file(service_cert)));
  } else {
    service_cert_ = root_->issue(config_.service_name, service_key_.public_key, years_from(now, 10),
                                 false, now);
    write_file_atomic(service_cert, xml::write(pki::to_xml(service_cert_)));
    journal({{"type", "ca"}, {"root", root_->next_serial()}, {"aa", attribute_authority_->next_serial()}});
  }
}

void Service::load_state() {
  const fs::path snap = config_.data_dir / "snapshot.json";
  if (fs::exists(snap)) {
    json j;
    try {
      j = json::parse(read_file(snap));
    } catch (const json::exception& e) {
      fail(ErrorCode::IoError, std::string("snapshot is corrupt: ") + e.what());
    }
    apply_event({{"type", "ca"}, {"root", j.at("ca").at("root")}, {"aa", j.at("ca").at("aa")}});
    for (const auto& r : j.at("translators")) apply_event({{"type", "translator"}, {"record", r}});
    for (const auto& [authority, entries] : j.at("directory").items())
      apply_event({{"type", "directory"}, {"authority", authority}, {"entries", entries}});
    for (const auto& r : j.at("revocations")) {
      json ev = r;
      ev["type"] = "revocation";
      apply_event(ev);
    }
    for (const auto& [job, owner] : j.at("seals").items())
      apply_event({{"type", "seal"}, {"jobId", job}, {"translatorId", owner}});
  }
  const fs::path log = config_.data_dir / "journal.log";
  if (!fs::exists(log)) return;
  std::ifstream in(log);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json ev;
    try {
      ev = json::parse(line);
    } catch (const json::exception&) {
      if (in.peek() == std::char_traits<char>::eof()) break;  // torn final append
      fail(ErrorCode::IoError, "journal is corrupt");
    }
    apply_event(ev);
  }
}

void Service::apply_event(const json& ev) {
  const auto type = ev.at("type").get<std::string>();
  if (type == "ca") {
    auto root_key = root_->key();
    auto root_cert = root_->certificate();
    auto aa_key = attribute_authority_->key();
    auto aa_cert = attribute_authority_->certificate();
    root_.emplace(std::move(root_key), std::move(root_cert), ev.at("root").get<std::uint64_t>());
    attribute_authority_.emplace(std::move(aa_key), std::move(aa_cert), ev.at("aa").get<std::uint64_t>());
  } else if (type == "translator") {
    auto rec = record_from_json(ev.at("record"));
    const std::string id = rec.id;
    translators_[id] = std::move(rec);
  } else if (type == "revocation") {
    registry_.revoke(ev.at("issuer").get<std::string>(), ev.at("serial").get<std::string>(),
                     parse_timestamp(ev.at("time").get<std::string>()));
  } else if (type == "directory") {
    const auto authority = ev.at("authority").get<std::string>();
    auto entries = directory_entries_from_json(ev.at("entries"));
    for (const auto& e : directory_.entries().count(authority) ? directory_.entries().at(authority)
                                                                : std::vector<DirectoryEntry>{})
      directory_.remove(authority, e.name);
    for (auto& e : entries) directory_.add(authority, std::move(e));
  } else if (type == "seal") {
    seal_owners_[ev.at("jobId").get<std::string>()] = ev.at("translatorId").get<std::string>();
  } else {
    fail(ErrorCode::IoError, "unknown journal event '" + type + "'");
  }
}

void Service::journal(const json& event) {
  std::ofstream out(config_.data_dir / "journal.log", std::ios::app);
  out << event.dump() << '\n';
  out.flush();
  if (!out) fail(ErrorCode::IoError, "cannot append to journal");
}

json Service::snapshot_json() const {
  json translators = json::array();
  for (const auto& [id, rec] : translators_) translators.push_back(record_to_json(rec));
  json directory = json::object();
  for (const auto& [authority, entries] : directory_.entries())
    directory[authority] = directory_entries_json(entries);
  json revocations = json::array();
  for (const auto& e : registry_.entries())
    revocations.push_back({{"issuer", e.issuer}, {"serial", e.serial}, {"time", format_utc(e.revocation_time)}});
  json seals = json::object();
  for (const auto& [job, owner] : seal_owners_) seals[job] = owner;
  return {{"version", 1},
          {"ca", {{"root", root_->next_serial()}, {"aa", attribute_authority_->next_serial()}}},
          {"translators", std::move(translators)},
          {"directory", std::move(directory)},
          {"revocations", std::move(revocations)},
          {"seals", std::move(seals)}};
}

void Service::flush() {
  std::unique_lock lock(mutex_);
  write_file_atomic(config_.data_dir / "snapshot.json", snapshot_json().dump(2) + "\n");
  std::ofstream(config_.data_dir / "journal.log", std::ios::trunc);
}

std::string Service::new_id(std::string_view prefix) const {
  ensure_crypto_ready();
  std::array<std::uint8_t, 12> raw{};
  randombytes_buf(raw.data(), raw.size());
  return std::string(prefix) + hex_encode(raw);
}

const TranslatorRecord* Service::find(std::string_view id_or_name) const {
  if (auto it = translators_.find(id_or_name); it != translators_.end()) return &it->second;
  for (const auto& [id, rec] : translators_)
    if (rec.name == id_or_name) return &rec;
  return nullptr;
}

TranslatorRecord& Service::record_for(std::string_view id) {
  auto it = translators_.find(id);
  if (it == translators_.end()) fail(ErrorCode::NotFound, "no translator '" + std::string(id) + "'");
  return it->second;
}

TranslatorRecord Service::register_translator(std::string name, std::vector<LanguagePair> languages,
                                              std::string district_court, std::string_view credential) {
  if (name.empty()) fail(ErrorCode::InvariantViolation, "name must not be empty");
  if (district_court.empty()) fail(ErrorCode::InvariantViolation, "districtCourt must not be empty");
  if (credential.empty()) fail(ErrorCode::InvariantViolation, "credential must not be empty");
  if (languages.empty()) fail(ErrorCode::InvariantViolation, "at least one language pair is required");
  for (const auto& p : languages) {
    i18n::validate_language_tag(p.source);
    i18n::validate_language_tag(p.target);
  }

  std::unique_lock lock(mutex_);
  for (const auto& [id, rec] : translators_)
    if (rec.name == name) fail(ErrorCode::DuplicateName, "a translator named '" + name + "' is registered");
  TranslatorRecord rec;
  rec.id = new_id("tr-");
  rec.name = std::move(name);
  rec.languages = std::move(languages);
  rec.district_court = std::move(district_court);
  rec.credential_digest = compute_content_id(as_bytes(credential));
  journal({{"type", "translator"}, {"record", record_to_json(rec)}});
  translators_[rec.id] = rec;
  return rec;
}

void Service::revoke_locked(TranslatorRecord& rec, Timestamp now) {
  if (rec.attr_cert_ref) {
    registry_.revoke(rec.attr_cert_ref->issuer, rec.attr_cert_ref->serial, now);
    journal({{"type", "revocation"},
             {"issuer", rec.attr_cert_ref->issuer},
             {"serial", rec.attr_cert_ref->serial},
             {"time", format_utc(now)}});
  }
  rec.status = TranslatorStatus::Revoked;
  journal({{"type", "translator"}, {"record", record_to_json(rec)}});
}

TranslatorRecord Service::authorise(std::string_view id) {
  std::unique_lock lock(mutex_);
  auto& rec = record_for(id);
  if (rec.status == TranslatorStatus::Revoked) return rec;
  const Timestamp now = clock_();
  const bool listed = directory_.authorises(rec.district_court, rec.name, rec.languages);
  if (!listed) {
    if (rec.status == TranslatorStatus::Authorised) {
      revoke_locked(rec, now);
      return rec;
    }
    fail(ErrorCode::NotInDirectory,
         "'" + rec.name + "' is not listed by " + rec.district_court + " for the requested languages");
  }
  if (rec.status == TranslatorStatus::Authorised) return rec;

  // The identity certificate only anchors the attribute certificate; its
  // private key is never kept.
  const auto identity_key = pki::KeyPair::generate();
  auto identity = root_->issue("CN=" + rec.name + ",O=Registered Translators", identity_key.public_key,
                               years_from(now, 5), false, now);
  auto ac = attribute_authority_->issue_attribute(
      identity,
      {{std::string(pki::kRoleAttribute), std::string(kTranslatorRole)},
       {std::string(pki::kAuthorityAttribute), rec.district_court}},
      years_from(now, 1), registry_, now);
  journal({{"type", "ca"}, {"root", root_->next_serial()}, {"aa", attribute_authority_->next_serial()}});
  rec.attr_cert_ref = pki::CertificateRef{ac.issuer, ac.serial};
  rec.identity_certificate = std::move(identity);
  rec.attribute_certificate = std::move(ac);
  rec.status = TranslatorStatus::Authorised;
  journal({{"type", "translator"}, {"record", record_to_json(rec)}});
  return rec;
}

TranslatorRecord Service::revoke(std::string_view id) {
  std::unique_lock lock(mutex_);
  auto& rec = record_for(id);
  if (rec.status != TranslatorStatus::Revoked) revoke_locked(rec, clock_());
  return rec;
}

SealJob Service::create_seal(const SealRequest& request) {
  Sealer sealer;
  pki::RevocationRegistry registry;
  pki::AttributeCertificate ac;
  {
    std::shared_lock lock(mutex_);
    const auto it = translators_.find(request.translator_id);
    if (it == translators_.end() || !credential_matches(it->second.credential_digest, request.credential))
      fail(ErrorCode::Unauthorised, "unknown translator or wrong credential");
    const auto& rec = it->second;
    if (rec.status == TranslatorStatus::Revoked)
      fail(ErrorCode::RevokedTranslator, "translator '" + rec.name + "' is revoked");
    if (rec.status != TranslatorStatus::Authorised || !rec.attribute_certificate || !rec.identity_certificate)
      fail(ErrorCode::Unauthorised, "translator '" + rec.name + "' is not authorised");
    const auto& lang = request.input.classification.language;
    lang.validate();
    const bool pair_ok = std::any_of(rec.languages.begin(), rec.languages.end(), [&](const LanguagePair& p) {
      return i18n::same_language(p.source, lang.source_language) &&
             i18n::same_language(p.target, lang.target_language);
    });
    if (!pair_ok)
      fail(ErrorCode::Unauthorised, "translator '" + rec.name + "' is not authorised for " +
                                        lang.source_language + " -> " + lang.target_language);
    ac = *rec.attribute_certificate;
    if (registry_.is_revoked(ac.issuer, ac.serial, clock_()))
      fail(ErrorCode::RevokedTranslator, "attribute certificate of '" + rec.name + "' is revoked");
    registry = registry_;
    sealer.key = service_key_;
    sealer.chain = {service_cert_, root_->certificate()};
    sealer.attribute_certificates = {ac};
    sealer.principal = pki::CertificateRef{rec.identity_certificate->issuer, rec.identity_certificate->serial};
    sealer.component_id = config_.component_id;
  }

  auto source = SourceDocument::from_bytes(request.source_container);
  OperatorInput input = request.input;
  input.operator_id = request.translator_id;
  if (input.classification.source_format.empty())
    input.classification.source_format = source.container.content.format_id;
  const auto sealed = run_translation_workflow(source, input, rules_, sealer, anchors(), registry, clock_);
  const Timestamp sealed_at = sealed.seal.annotation.sealing_time.time;

  std::unique_lock lock(mutex_);
  const auto& rec = record_for(request.translator_id);
  if (rec.status != TranslatorStatus::Authorised || registry_.is_revoked(ac.issuer, ac.serial, sealed_at))
    fail(ErrorCode::RevokedTranslator, "translator '" + rec.name + "' was revoked while sealing");
  SealJob job{new_id("job-"), request.translator_id, serialize_seal(sealed)};
  write_file_atomic(config_.data_dir / "seals" / (job.job_id + ".tseal"), transeal::to_string(job.tseal));
  journal({{"type", "seal"}, {"jobId", job.job_id}, {"translatorId", job.translator_id}});
  seal_owners_[job.job_id] = job.translator_id;
  return job;
}

SealJob Service::fetch_seal(std::string_view job_id) const {
  std::shared_lock lock(mutex_);
  const auto it = seal_owners_.find(job_id);
  if (it == seal_owners_.end()) fail(ErrorCode::NotFound, "no seal job '" + std::string(job_id) + "'");
  return {it->first, it->second, to_bytes(read_file(config_.data_dir / "seals" / (it->first + ".tseal")))};
}

SealVerificationReport Service::verify(ByteView tseal) const {
  const auto sealed = parse_seal(tseal, ParseMode::Forensic);
  return verify_seal(sealed, anchors(), registry());
}

TranslatorRecord Service::lookup(std::string_view id_or_name) const {
  std::shared_lock lock(mutex_);
  const auto* rec = find(id_or_name);
  if (!rec) fail(ErrorCode::NotFound, "no translator '" + std::string(id_or_name) + "'");
  return *rec;
}

void Service::directory_add(const std::string& authority, DirectoryEntry entry) {
  if (authority.empty() || entry.name.empty())
    fail(ErrorCode::InvariantViolation, "directory entries need an authority and a name");
  for (const auto& p : entry.languages) {
    i18n::validate_language_tag(p.source);
    i18n::validate_language_tag(p.target);
  }
  std::unique_lock lock(mutex_);
  directory_.add(authority, std::move(entry));
  journal({{"type", "directory"},
           {"authority", authority},
           {"entries", directory_entries_json(directory_.entries().at(authority))}});
}

void Service::directory_remove(const std::string& authority, std::string_view name) {
  std::unique_lock lock(mutex_);
  if (!directory_.remove(authority, name))
    fail(ErrorCode::NotFound, "'" + std::string(name) + "' is not listed by " + authority);
  journal({{"type", "directory"},
           {"authority", authority},
           {"entries", directory_entries_json(directory_.entries().at(authority))}});
}

pki::TrustAnchors Service::anchors() const {
  return pki::TrustAnchors({root_->certificate(), attribute_authority_->certificate()});
}

pki::RevocationRegistry Service::registry() const {
  std::shared_lock lock(mutex_);
  return registry_;
}

CourtDirectory Service::directory() const {
  std::shared_lock lock(mutex_);
  return directory_;
}

std::vector<TranslatorRecord> Service::translators() const {
  std::shared_lock lock(mutex_);
  std::vector<TranslatorRecord> out;
  for (const auto& [id, rec] : translators_) out.push_back(rec);
  return out;
}

json public_view(const TranslatorRecord& rec) {
  json j = {{"translatorId", rec.id},
            {"name", rec.name},
            {"languages", pairs_to_json(rec.languages)},
            {"districtCourt", rec.district_court},
            {"status", to_string(rec.status)}};
  if (rec.attr_cert_ref) {
    j["attrCertIssuer"] = rec.attr_cert_ref->issuer;
    j["attrCertSerial"] = rec.attr_cert_ref->serial;
  }
  if (rec.attribute_certificate) {
    j["attrCertValidity"] = {{"notBefore", format_utc(rec.attribute_certificate->validity.not_before)},
                             {"notAfter", format_utc(rec.attribute_certificate->validity.not_after)}};
  }
  return j;
}

}  // namespace transeal::service
