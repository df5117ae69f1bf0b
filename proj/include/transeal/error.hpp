#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace transeal {

enum class ErrorCode {
  ParseError,
  InvariantViolation,
  InvalidLanguageTag,
  OutOfDomain,
  InvalidValidity,
  CAExpired,
  HolderRevoked,
  HolderExpired,
  EmptyAttributes,
  KeyMismatch,
  EntropyFailure,
  RuleFailure,
  MissingAttributeCertificate,
  EmptyTarget,
  AssayDeclined,
  PhaseOrder,
  DuplicateName,
  NotInDirectory,
  Unauthorised,
  RevokedTranslator,
  NotFound,
  IoError,
  ConfigError,
};

std::string_view to_string(ErrorCode code);

// Single exception type for the library. `rule_id` is set for rule failures
// (and for errors raised while a rule is executing); `position` is set for
// parse and language-tag errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, std::string message, std::string rule_id = {},
        std::optional<std::size_t> position = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  const std::string& rule_id() const noexcept { return rule_id_; }
  const std::optional<std::size_t>& position() const noexcept { return position_; }

 private:
  ErrorCode code_;
  std::string rule_id_;
  std::optional<std::size_t> position_;
};

[[noreturn]] void fail(ErrorCode code, std::string message);
[[noreturn]] void fail_parse(std::string message, std::size_t position);

}  // namespace transeal
