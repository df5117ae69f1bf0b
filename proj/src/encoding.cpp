#include "transeal/encoding.hpp"

#include <sodium.h>

#include "transeal/error.hpp"

namespace transeal {

namespace {

struct SodiumInit {
  SodiumInit() {
    if (sodium_init() < 0) fail(ErrorCode::EntropyFailure, "libsodium initialisation failed");
  }
};

}  // namespace

void ensure_crypto_ready() { static const SodiumInit init; }

std::string base64_encode(ByteView data) {
  ensure_crypto_ready();
  const std::size_t len = sodium_base64_encoded_len(data.size(), sodium_base64_VARIANT_ORIGINAL);
  std::string out(len, '\0');
  sodium_bin2base64(out.data(), out.size(), data.data(), data.size(),
                    sodium_base64_VARIANT_ORIGINAL);
  out.resize(len - 1);  // drop terminator
  return out;
}

Bytes base64_decode(std::string_view text) {
  ensure_crypto_ready();
  if (text.size() % 4 != 0) fail_parse("base64 length is not a multiple of 4", 0);
  Bytes out(text.size() / 4 * 3);
  std::size_t written = 0;
  const char* end = nullptr;
  if (sodium_base642bin(out.data(), out.size(), text.data(), text.size(), nullptr, &written, &end,
                        sodium_base64_VARIANT_ORIGINAL) != 0 ||
      end != text.data() + text.size()) {
    const auto pos = end ? static_cast<std::size_t>(end - text.data()) : 0;
    fail_parse("malformed base64", pos);
  }
  out.resize(written);
  // The decoder tolerates some bytes outside the alphabet; only the
  // canonical encoding is accepted.
  const auto canonical = base64_encode(out);
  if (canonical != text) {
    std::size_t pos = 0;
    while (pos < text.size() && pos < canonical.size() && text[pos] == canonical[pos]) ++pos;
    fail_parse("malformed base64", pos);
  }
  return out;
}

std::string hex_encode(ByteView data) {
  static constexpr char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(data.size() * 2);
  for (auto b : data) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

}  // namespace transeal
