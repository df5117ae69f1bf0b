#include "transeal/error.hpp"

namespace transeal {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::InvariantViolation: return "InvariantViolation";
    case ErrorCode::InvalidLanguageTag: return "InvalidLanguageTag";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::InvalidValidity: return "InvalidValidity";
    case ErrorCode::CAExpired: return "CAExpired";
    case ErrorCode::HolderRevoked: return "HolderRevoked";
    case ErrorCode::HolderExpired: return "HolderExpired";
    case ErrorCode::EmptyAttributes: return "EmptyAttributes";
    case ErrorCode::KeyMismatch: return "KeyMismatch";
    case ErrorCode::EntropyFailure: return "EntropyFailure";
    case ErrorCode::RuleFailure: return "RuleFailure";
    case ErrorCode::MissingAttributeCertificate: return "MissingAttributeCertificate";
    case ErrorCode::EmptyTarget: return "EmptyTarget";
    case ErrorCode::AssayDeclined: return "AssayDeclined";
    case ErrorCode::PhaseOrder: return "PhaseOrder";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::NotInDirectory: return "NotInDirectory";
    case ErrorCode::Unauthorised: return "Unauthorised";
    case ErrorCode::RevokedTranslator: return "RevokedTranslator";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ConfigError: return "ConfigError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, std::string message, std::string rule_id,
             std::optional<std::size_t> position)
    : std::runtime_error(std::move(message)),
      code_(code),
      rule_id_(std::move(rule_id)),
      position_(position) {}

void fail(ErrorCode code, std::string message) { throw Error(code, std::move(message)); }

void fail_parse(std::string message, std::size_t position) {
  throw Error(ErrorCode::ParseError, message + " at offset " + std::to_string(position), {},
              position);
}

}  // namespace transeal
