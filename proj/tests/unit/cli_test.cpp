#include <doctest.h>

#include <fcntl.h>
#include <httplib.h>
#include <signal.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "support/service_fixtures.hpp"
#include "transeal/report_json.hpp"
#include "transeal/xml.hpp"

using namespace transeal;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

class Cli {
 public:
  Cli() : dir_() {}
  std::string path(const std::string& name) const { return (dir_.path() / name).string(); }

  Run operator()(const std::string& args) const {
    const std::string cmd = std::string(TRANSEAL_CLI) + " " + args + " 2>" + path("stderr.txt");
    Run r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  std::string stderr_text() const { return read(path("stderr.txt")); }

  static std::string read(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
  }

 private:
  fixtures::TempDir dir_;
};

// Root CA, attribute authority, translator and a signed source, all via the CLI.
// Returns the serial of the translator's attribute certificate.
std::string bootstrap(const Cli& cli) {
  const std::string t = " --time 2026-03-01T08:00:00Z";
  for (const char* k : {"root", "aa", "anna", "bert"}) REQUIRE(cli("keygen --out " + cli.path(k)).exit_code == 0);
  REQUIRE(cli("ca-init --subject 'CN=CLI Root' --key " + cli.path("root.key") + " --out " + cli.path("root.cert") + t)
              .exit_code == 0);
  REQUIRE(cli("ca-init --subject 'CN=CLI AA' --key " + cli.path("aa.key") + " --out " + cli.path("aa.cert") + t)
              .exit_code == 0);
  REQUIRE(cli("ca-issue --qc --ca-cert " + cli.path("root.cert") + " --ca-key " + cli.path("root.key") +
              " --subject 'CN=Anna' --public-key " + cli.path("anna.pub") + " --out " + cli.path("anna.cert") + t)
              .exit_code == 0);
  REQUIRE(cli("ca-issue --ca-cert " + cli.path("root.cert") + " --ca-key " + cli.path("root.key") +
              " --subject 'CN=Bert' --public-key " + cli.path("bert.pub") + " --out " + cli.path("bert.cert") + t)
              .exit_code == 0);
  const auto ac = cli("ca-issue-attr --ca-cert " + cli.path("aa.cert") + " --ca-key " + cli.path("aa.key") +
                      " --holder " + cli.path("anna.cert") +
                      " --role 'authorised translator' --authority 'District Court Linz' --out " +
                      cli.path("anna.ac") + t);
  REQUIRE(ac.exit_code == 0);
  cli.write("source.txt", "Kaufvertrag");
  cli.write("target.txt", "Deed of sale");
  REQUIRE(cli("sign-doc --content " + cli.path("source.txt") + " --format 'text/plain;charset=utf-8' --key " +
              cli.path("bert.key") + " --chain " + cli.path("bert.cert") + " --chain " + cli.path("root.cert") +
              " --out " + cli.path("source.sdoc") + t)
              .exit_code == 0);
  return ac.out.substr(0, ac.out.find('\n'));
}

std::string seal_args(const Cli& cli, const std::string& out = "out.tseal") {
  return "seal --source " + cli.path("source.sdoc") + " --target " + cli.path("target.txt") +
         " --source-lang de --target-lang en --attestation 'Complete and accurate.' --location Linz --key " +
         cli.path("anna.key") + " --chain " + cli.path("anna.cert") + " --chain " + cli.path("root.cert") +
         " --attr-cert " + cli.path("anna.ac") + " --anchor " + cli.path("root.cert") + " --anchor " +
         cli.path("aa.cert") + " --out " + cli.path(out);
}

std::string anchors(const Cli& cli) {
  return " --anchor " + cli.path("root.cert") + " --anchor " + cli.path("aa.cert");
}

}  // namespace

TEST_CASE("cli: seal and verify end to end") {
  Cli cli;
  bootstrap(cli);
  const auto sealed = cli(seal_args(cli));
  REQUIRE(sealed.exit_code == 0);
  CHECK(sealed.out.rfind("sha-256:", 0) == 0);

  const auto text = cli("verify " + cli.path("out.tseal") + anchors(cli));
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("seal verified") != std::string::npos);

  const auto as_json = cli("verify --json " + cli.path("out.tseal") + anchors(cli));
  REQUIRE(as_json.exit_code == 0);
  const auto st = parse_seal(to_bytes(Cli::read(cli.path("out.tseal"))));
  const pki::TrustAnchors lib_anchors(
      {pki::certificate_from_xml(xml::parse(Cli::read(cli.path("root.cert")))),
       pki::certificate_from_xml(xml::parse(Cli::read(cli.path("aa.cert"))))});
  CHECK(nlohmann::json::parse(as_json.out) == to_json(verify_seal(st, lib_anchors, {})));
  CHECK(st.seal.annotation.translator_authority == "District Court Linz");

  SUBCASE("unknown anchors are indeterminate") {
    REQUIRE(cli("keygen --out " + cli.path("other")).exit_code == 0);
    REQUIRE(cli("ca-init --subject 'CN=Other Root' --key " + cli.path("other.key") + " --out " +
                cli.path("other.cert"))
                .exit_code == 0);
    const auto r = cli("verify --json " + cli.path("out.tseal") + " --anchor " + cli.path("other.cert"));
    CHECK(nlohmann::json::parse(r.out).at("sealSignature").at("result") == "indeterminate");
    CHECK(r.exit_code == 1);
  }
  SUBCASE("a tampered file fails verification") {
    auto bytes = Cli::read(cli.path("out.tseal"));
    const auto at = bytes.find("Linz</SealingLocation>");
    REQUIRE(at != std::string::npos);
    bytes.replace(at, 4, "Graz");
    cli.write("out.tseal", bytes);
    CHECK(cli("verify " + cli.path("out.tseal") + anchors(cli)).exit_code == 1);
  }
  SUBCASE("a tampered target breaks the binding") {
    auto bytes = Cli::read(cli.path("out.tseal"));
    const auto open = bytes.find("<TargetContent>") + 15;
    bytes[open] = bytes[open] == 'A' ? 'B' : 'A';
    cli.write("out.tseal", bytes);
    const auto r = cli("verify --json " + cli.path("out.tseal") + anchors(cli));
    CHECK(r.exit_code == 1);
    CHECK(nlohmann::json::parse(r.out).at("bindingOk") == false);
  }
  SUBCASE("garbage is a parse error") {
    cli.write("junk.tseal", "<<<");
    CHECK(cli("verify " + cli.path("junk.tseal")).exit_code == 2);
    CHECK(cli.stderr_text().find("ParseError") != std::string::npos);
  }
}

TEST_CASE("cli: errors and exit codes") {
  Cli cli;
  const auto ac_serial = bootstrap(cli);
  CHECK(cli("").exit_code == 2);
  CHECK(cli("seal --source x").exit_code == 2);
  auto no_attestation = seal_args(cli);
  no_attestation.replace(no_attestation.find("--attestation 'Complete and accurate.' "), 39, "");
  CHECK(cli(no_attestation).exit_code == 2);
  CHECK(cli.stderr_text().find("--attestation") != std::string::npos);
  CHECK(cli("verify " + cli.path("missing.tseal")).exit_code == 3);

  auto same_language = seal_args(cli);
  same_language.replace(same_language.find("--target-lang en"), 16, "--target-lang de");
  CHECK(cli(same_language).exit_code == 2);
  CHECK(cli.stderr_text().find("InvalidLanguageTag") != std::string::npos);

  REQUIRE(cli("ca-revoke --ca-cert " + cli.path("aa.cert") + " --serial " + ac_serial + " --revocations " +
              cli.path("rev.xml") + " --time 2026-03-01T08:30:00Z")
              .exit_code == 0);
  const auto refused = cli(seal_args(cli) + " --revocations " + cli.path("rev.xml"));
  CHECK(refused.exit_code == 2);
  CHECK(cli.stderr_text().find("RULE_TRANSFORMATIONASSAY_CreateSignature") != std::string::npos);

  CHECK(cli(seal_args(cli) + " --no-confirm").exit_code == 2);
  CHECK(cli.stderr_text().find("AssayDeclined") != std::string::npos);

  cli.write("bad.json", "{\"port\": 1}");
  CHECK(cli("serve --config " + cli.path("bad.json")).exit_code == 3);
}

TEST_CASE("cli: serve answers health checks and flushes on stop") {
  Cli cli;
  const auto data = cli.path("data");
  cli.write("service.json", nlohmann::json{{"dataDir", data}, {"port", 0}, {"adminToken", "t"}}.dump());

  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  const auto log = cli.path("serve.log");
  posix_spawn_file_actions_addopen(&actions, 1, log.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0600);
  posix_spawn_file_actions_addopen(&actions, 2, "/dev/null", O_WRONLY, 0);
  const std::string bin = TRANSEAL_CLI, config = cli.path("service.json");
  std::vector<char*> argv{const_cast<char*>(bin.c_str()), const_cast<char*>("serve"),
                          const_cast<char*>("--config"), const_cast<char*>(config.c_str()), nullptr};
  pid_t pid = 0;
  REQUIRE(posix_spawn(&pid, bin.c_str(), &actions, nullptr, argv.data(), environ) == 0);
  posix_spawn_file_actions_destroy(&actions);

  int port = 0;
  for (int i = 0; i < 200 && port == 0; ++i) {
    const auto text = Cli::read(log);
    const auto at = text.find("listening on 127.0.0.1:");
    if (at != std::string::npos && text.find('\n', at) != std::string::npos)
      port = std::stoi(text.substr(at + 23));
    else std::this_thread::sleep_for(std::chrono::milliseconds(25));
  }
  REQUIRE(port > 0);
  httplib::Client client("127.0.0.1", port);
  const auto health = client.Get("/healthz");
  REQUIRE(health);
  CHECK(health->status == 200);

  kill(pid, SIGTERM);
  int status = 0;
  waitpid(pid, &status, 0);
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(Cli::read(log).find("state flushed") != std::string::npos);
  CHECK(std::filesystem::exists(std::filesystem::path(data) / "snapshot.json"));
}
