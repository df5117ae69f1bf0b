#include "transeal/digest.hpp"

#include <sodium.h>

namespace transeal {

Sha256 sha256(ByteView data) {
  ensure_crypto_ready();
  Sha256 out{};
  crypto_hash_sha256(out.data(), data.data(), data.size());
  return out;
}

std::string compute_content_id(ByteView data) {
  const auto digest = sha256(data);
  return std::string(kDigestPrefix) + hex_encode(digest);
}

}  // namespace transeal
