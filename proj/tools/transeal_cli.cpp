// transeal: command-line front end.
//
// Exit codes: 0 success, 1 verification ran and a check failed,
// 2 usage / validation / parse error, 3 I/O or configuration error.

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "transeal/http_api.hpp"
#include "transeal/report_json.hpp"
#include "transeal/service.hpp"
#include "transeal/verify_seal.hpp"
#include "transeal/workflow.hpp"

using namespace transeal;
namespace fs = std::filesystem;

namespace {

constexpr int kExitCheckFailed = 1;
constexpr int kExitValidation = 2;
constexpr int kExitIo = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, std::string_view data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) fail(ErrorCode::IoError, "cannot write " + path);
}

pki::Certificate load_certificate(const std::string& path) {
  return pki::certificate_from_xml(xml::parse(read_file(path)));
}

pki::AttributeCertificate load_attribute_certificate(const std::string& path) {
  return pki::attribute_certificate_from_xml(xml::parse(read_file(path)));
}

pki::RevocationRegistry load_registry(const std::string& path) {
  if (path.empty() || !fs::exists(path)) return {};
  return pki::revocation_registry_from_xml(xml::parse(read_file(path)));
}

pki::TrustAnchors load_anchors(const std::vector<std::string>& paths) {
  std::vector<pki::Certificate> roots;
  for (const auto& p : paths) roots.push_back(load_certificate(p));
  return pki::TrustAnchors(std::move(roots));
}

std::vector<pki::Certificate> load_chain(const std::vector<std::string>& paths) {
  std::vector<pki::Certificate> chain;
  for (const auto& p : paths) chain.push_back(load_certificate(p));
  return chain;
}

// The issuing state of a CA lives next to its certificate.
std::string serial_path(const std::string& ca_cert) { return ca_cert + ".serial"; }

pki::CertificateAuthority load_ca(const std::string& cert_path, const std::string& key_path) {
  auto cert = load_certificate(cert_path);
  auto key = pki::decode_key_file(read_file(key_path));
  if (key.public_key != cert.public_key)
    fail(ErrorCode::KeyMismatch, "CA key does not match " + cert_path);
  std::uint64_t next = 2;
  if (fs::exists(serial_path(cert_path))) next = std::stoull(read_file(serial_path(cert_path)));
  return pki::CertificateAuthority(std::move(key), std::move(cert), next);
}

void save_ca_state(const std::string& cert_path, const pki::CertificateAuthority& ca) {
  write_file(serial_path(cert_path), std::to_string(ca.next_serial()) + "\n");
}

pki::ValidityPeriod validity_from_now(Timestamp now, int days) {
  return {now, now + std::chrono::hours(24 * days)};
}

Timestamp now_or(const std::string& text) {
  return text.empty() ? std::chrono::time_point_cast<std::chrono::seconds>(std::chrono::system_clock::now())
                      : parse_timestamp(text);
}

std::pair<std::string, std::string> split_pair(const std::string& text, const char* what) {
  const auto eq = text.find('=');
  if (eq == std::string::npos || eq == 0)
    fail(ErrorCode::ParseError, std::string(what) + " must be written as key=value: '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

void print_report(const SealVerificationReport& rep) {
  std::cout << "seal signature: " << pki::to_string(rep.seal_signature.result) << '\n'
            << "signer:         " << rep.signer << '\n'
            << "sealing time:   " << format_utc(rep.sealing_time) << '\n'
            << "binding:        " << (rep.binding_ok ? "ok" : "FAILED") << '\n'
            << "report chain:   " << (rep.report_chain_ok ? "ok" : "FAILED") << '\n'
            << "authorisation:  " << (rep.authorisation_ok ? "ok" : "FAILED") << '\n';
  for (const auto& c : rep.checks)
    std::cout << "  [" << (c.passed ? "pass" : "FAIL") << "] " << c.name << ": " << c.detail << '\n';
  for (const auto& a : rep.authorisation) {
    std::cout << "attribute certificate from " << a.issuer << ':';
    for (const auto& attr : a.attributes) std::cout << ' ' << attr.type << '=' << attr.value;
    std::cout << '\n';
  }
  std::cout << (rep.all_ok() ? "seal verified" : "seal NOT verified") << '\n';
}

std::atomic<bool> g_stop{false};
extern "C" void on_signal(int) { g_stop = true; }

int serve(const std::string& config_path) {
  service::ServiceConfig config;
  std::unique_ptr<service::Service> svc;
  try {
    config = service::parse_service_config(read_file(config_path));
    svc = std::make_unique<service::Service>(config);
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return kExitIo;
  }
  http::Server server(*svc);
  int port = 0;
  try {
    port = server.bind(config.host, config.port);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  std::thread watcher([&] {
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(50));
    server.stop();
  });
  std::cout << "listening on " << config.host << ':' << port << std::endl;
  server.run();
  g_stop = true;
  watcher.join();
  svc->flush();
  std::cout << "stopped; state flushed" << std::endl;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Electronic authorised translations: PKI, sealing and verification"};
  app.require_subcommand(1);
  int exit_code = 0;

  // keygen
  std::string out;
  auto* keygen = app.add_subcommand("keygen", "Generate an Ed25519 key pair (<out>.key, <out>.pub)");
  keygen->add_option("--out", out, "Output path prefix")->required();
  keygen->callback([&] {
    const auto key = pki::KeyPair::generate();
    write_file(out + ".key", pki::encode_key_file(key));
    fs::permissions(out + ".key", fs::perms::owner_read | fs::perms::owner_write, fs::perm_options::replace);
    write_file(out + ".pub", pki::encode_public_key_file(key.public_key));
    std::cout << key.key_id << '\n';
  });

  // ca-init
  std::string subject, key_path, ca_cert, ca_key, time_text;
  int days = 3650;
  auto* ca_init = app.add_subcommand("ca-init", "Create a self-signed root certificate");
  ca_init->add_option("--subject", subject, "Distinguished name")->required();
  ca_init->add_option("--key", key_path, "Key file")->required();
  ca_init->add_option("--out", out, "Certificate file")->required();
  ca_init->add_option("--days", days, "Validity in days");
  ca_init->add_option("--time", time_text, "Issue time (default now)");
  ca_init->callback([&] {
    const auto now = now_or(time_text);
    auto ca = pki::CertificateAuthority::create_root(subject, validity_from_now(now, days),
                                                     pki::decode_key_file(read_file(key_path)));
    write_file(out, xml::write(pki::to_xml(ca.certificate())));
    save_ca_state(out, ca);
  });

  // ca-issue
  std::string public_key_path;
  bool qc = false;
  auto* ca_issue = app.add_subcommand("ca-issue", "Issue an identity certificate");
  ca_issue->add_option("--ca-cert", ca_cert, "Issuing CA certificate")->required();
  ca_issue->add_option("--ca-key", ca_key, "Issuing CA key")->required();
  ca_issue->add_option("--subject", subject, "Distinguished name")->required();
  ca_issue->add_option("--public-key", public_key_path, "Subject public key file")->required();
  ca_issue->add_option("--out", out, "Certificate file")->required();
  ca_issue->add_option("--days", days, "Validity in days");
  ca_issue->add_option("--time", time_text, "Issue time (default now)");
  ca_issue->add_flag("--qc", qc, "Mark as qualified certificate");
  ca_issue->callback([&] {
    auto ca = load_ca(ca_cert, ca_key);
    const auto now = now_or(time_text);
    const auto pk = pki::decode_public_key_file(read_file(public_key_path));
    const auto cert = ca.issue(subject, pk, validity_from_now(now, days), qc, now);
    write_file(out, xml::write(pki::to_xml(cert)));
    save_ca_state(ca_cert, ca);
    std::cout << cert.serial << '\n';
  });

  // ca-issue-attr
  std::string holder_path, role, authority, revocations_path;
  std::vector<std::string> extra_attrs;
  auto* ca_attr = app.add_subcommand("ca-issue-attr", "Issue an attribute certificate");
  ca_attr->add_option("--ca-cert", ca_cert, "Attribute authority certificate")->required();
  ca_attr->add_option("--ca-key", ca_key, "Attribute authority key")->required();
  ca_attr->add_option("--holder", holder_path, "Holder identity certificate")->required();
  ca_attr->add_option("--role", role, "Role attribute");
  ca_attr->add_option("--authority", authority, "Authority attribute");
  ca_attr->add_option("--attr", extra_attrs, "Further attribute type=value");
  ca_attr->add_option("--revocations", revocations_path, "Revocation registry file");
  ca_attr->add_option("--out", out, "Attribute certificate file")->required();
  ca_attr->add_option("--days", days, "Validity in days");
  ca_attr->add_option("--time", time_text, "Issue time (default now)");
  ca_attr->callback([&] {
    auto ca = load_ca(ca_cert, ca_key);
    const auto now = now_or(time_text);
    std::vector<pki::Attribute> attrs;
    if (!role.empty()) attrs.push_back({std::string(pki::kRoleAttribute), role});
    if (!authority.empty()) attrs.push_back({std::string(pki::kAuthorityAttribute), authority});
    for (const auto& a : extra_attrs) {
      auto [type, value] = split_pair(a, "--attr");
      attrs.push_back({type, value});
    }
    const auto ac = ca.issue_attribute(load_certificate(holder_path), std::move(attrs),
                                       validity_from_now(now, days), load_registry(revocations_path), now);
    write_file(out, xml::write(pki::to_xml(ac)));
    save_ca_state(ca_cert, ca);
    std::cout << ac.serial << '\n';
  });

  // ca-revoke
  std::string serial;
  auto* ca_revoke = app.add_subcommand("ca-revoke", "Record a revocation in a registry file");
  ca_revoke->add_option("--ca-cert", ca_cert, "Issuer certificate")->required();
  ca_revoke->add_option("--serial", serial, "Serial number to revoke")->required();
  ca_revoke->add_option("--revocations", revocations_path, "Revocation registry file")->required();
  ca_revoke->add_option("--time", time_text, "Revocation time (default now)");
  ca_revoke->callback([&] {
    const auto issuer = load_certificate(ca_cert);
    auto registry = load_registry(revocations_path);
    const auto result = registry.revoke(issuer.subject, serial, now_or(time_text));
    write_file(revocations_path, xml::write(pki::to_xml(registry)));
    std::cout << (result == pki::RevokeResult::Revoked ? "revoked" : "already revoked") << '\n';
  });

  // sign-doc
  std::string content_path, format;
  std::vector<std::string> chain_paths, attr_cert_paths;
  auto* sign_doc = app.add_subcommand("sign-doc", "Wrap content in a signed document container");
  sign_doc->add_option("--content", content_path, "Content file")->required();
  sign_doc->add_option("--format", format, "Content format")->required();
  sign_doc->add_option("--key", key_path, "Signing key (omit for an unsigned container)");
  sign_doc->add_option("--chain", chain_paths, "Certificate chain, signer first");
  sign_doc->add_option("--attr-cert", attr_cert_paths, "Attribute certificates to embed");
  sign_doc->add_option("--time", time_text, "Signing time (default now)");
  sign_doc->add_option("--out", out, "Output .sdoc")->required();
  sign_doc->callback([&] {
    SignedDocumentContainer doc;
    doc.content = DocumentContent::make(to_bytes(read_file(content_path)), format);
    if (!key_path.empty()) {
      std::vector<pki::AttributeCertificate> acs;
      for (const auto& p : attr_cert_paths) acs.push_back(load_attribute_certificate(p));
      doc.signatures.push_back(sign_content(doc.content, pki::decode_key_file(read_file(key_path)),
                                            load_chain(chain_paths), std::move(acs), {now_or(time_text), {}}));
    }
    write_file(out, to_string(serialize_document(doc)));
    std::cout << doc.content.content_id << '\n';
  });

  // seal
  std::string source_path, target_path, target_format, source_lang, target_lang, attestation, location,
      comments, calendar, rule_set_path, operator_id = "operator", time_source;
  std::vector<std::string> defects, transliterations, anchor_paths;
  bool no_confirm = false;
  auto* seal = app.add_subcommand("seal", "Run the translation workflow and seal the target");
  seal->add_option("--source", source_path, "Source .sdoc")->required();
  seal->add_option("--target", target_path, "Translated document")->required();
  seal->add_option("--target-format", target_format, "Target format")->default_val("text/plain;charset=utf-8");
  seal->add_option("--source-lang", source_lang, "Source language tag")->required();
  seal->add_option("--target-lang", target_lang, "Target language tag")->required();
  seal->add_option("--attestation", attestation, "Accuracy attestation")->required();
  seal->add_option("--location", location, "Sealing location")->required();
  seal->add_option("--comments", comments, "Comments");
  seal->add_option("--defect", defects, "Defect of the source (repeatable)");
  seal->add_option("--transliteration", transliterations, "script=standard (repeatable)");
  seal->add_option("--calendar", calendar, "Calendar conversion method label");
  seal->add_option("--key", key_path, "Translator key")->required();
  seal->add_option("--chain", chain_paths, "Translator certificate chain, leaf first")->required();
  seal->add_option("--attr-cert", attr_cert_paths, "Translator attribute certificate")->required();
  seal->add_option("--anchor", anchor_paths, "Trust anchor certificate (repeatable)");
  seal->add_option("--revocations", revocations_path, "Revocation registry file");
  seal->add_option("--rule-set", rule_set_path, "Rule-set file");
  seal->add_option("--operator", operator_id, "Operator id recorded as performer");
  seal->add_option("--time-source", time_source, "Label of the sealing time source");
  seal->add_flag("--no-confirm", no_confirm, "Decline the conversion assay");
  seal->add_option("--out", out, "Output .tseal")->required();
  seal->callback([&] {
    const auto source = SourceDocument::from_bytes(to_bytes(read_file(source_path)));
    OperatorInput in;
    in.operator_id = operator_id;
    in.classification.source_format = source.container.content.format_id;
    in.classification.target_format = target_format;
    in.classification.language.source_language = source_lang;
    in.classification.language.target_language = target_lang;
    for (const auto& t : transliterations) {
      auto [script, standard] = split_pair(t, "--transliteration");
      in.classification.language.transliterations.push_back({script, standard});
    }
    if (!calendar.empty()) in.classification.language.calendar_conversion = calendar;
    in.target = DocumentContent::make(to_bytes(read_file(target_path)), target_format);
    if (!defects.empty()) in.defects = defects;
    if (!comments.empty()) in.comments = comments;
    in.accuracy_attestation = attestation;
    in.sealing_location = location;
    in.conversion_assay_confirmed = !no_confirm;
    if (!time_source.empty()) in.sealing_time_source = time_source;

    Sealer sealer;
    sealer.key = pki::decode_key_file(read_file(key_path));
    sealer.chain = load_chain(chain_paths);
    for (const auto& p : attr_cert_paths) sealer.attribute_certificates.push_back(load_attribute_certificate(p));
    const RuleSet rules = rule_set_path.empty() ? RuleSet::defaults() : load_rule_set(read_file(rule_set_path));
    const auto sealed = run_translation_workflow(source, in, rules, sealer, load_anchors(anchor_paths),
                                                 load_registry(revocations_path));
    write_file(out, to_string(serialize_seal(sealed)));
    std::cout << sealed.seal.target_digest << '\n';
  });

  // verify
  std::string tseal_path;
  bool as_json = false;
  auto* verify = app.add_subcommand("verify", "Verify a sealed translation");
  verify->add_option("tseal", tseal_path, "Sealed translation file")->required();
  verify->add_option("--anchor", anchor_paths, "Trust anchor certificate (repeatable)");
  verify->add_option("--revocations", revocations_path, "Revocation registry file");
  verify->add_flag("--json", as_json, "Emit the report as JSON");
  verify->callback([&] {
    const auto bytes = to_bytes(read_file(tseal_path));
    const auto anchors = load_anchors(anchor_paths);
    const auto registry = load_registry(revocations_path);
    const auto report = verify_seal(parse_seal(bytes, ParseMode::Forensic), anchors, registry);
    if (as_json) std::cout << to_json(report).dump(2) << '\n';
    else print_report(report);
    exit_code = report.all_ok() ? 0 : kExitCheckFailed;
  });

  // serve
  std::string config_path;
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  serve_cmd->add_option("--config", config_path, "Service configuration (JSON)")->required();
  serve_cmd->callback([&] { exit_code = serve(config_path); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << '\n';
    return e.code() == ErrorCode::IoError ? kExitIo : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  }
  return exit_code;
}
