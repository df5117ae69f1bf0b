#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace transeal {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

inline Bytes to_bytes(std::string_view s) { return Bytes(s.begin(), s.end()); }
inline std::string to_string(ByteView b) { return std::string(b.begin(), b.end()); }
inline ByteView as_bytes(std::string_view s) {
  return {reinterpret_cast<const std::uint8_t*>(s.data()), s.size()};
}

// Standard alphabet, padded, no line breaks.
std::string base64_encode(ByteView data);
// Strict: rejects whitespace, bad padding and non-zero trailing bits.
// Throws Error(ParseError) on malformed input.
Bytes base64_decode(std::string_view text);

std::string hex_encode(ByteView data);

// Initialises libsodium once; every entry point that uses it calls this.
void ensure_crypto_ready();

}  // namespace transeal
