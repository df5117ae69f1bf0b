#include <doctest.h>

#include "support/fixtures.hpp"
#include "transeal/verify_seal.hpp"

using namespace transeal;

TEST_CASE("happy path seal verifies") {
  fixtures::TestPki p;
  const auto source = fixtures::signed_source(p, "Hello world", 2);
  const auto st = fixtures::make_seal(p, source, fixtures::operator_input(source));
  const auto back = parse_seal(serialize_seal(st));
  CHECK(back == st);
  const auto rep = verify_seal(back, p.anchors(), p.registry);
  for (const auto& c : rep.checks) {
    INFO(c.name << ": " << c.detail);
    CHECK(c.passed);
  }
  CHECK(rep.all_ok());
}
