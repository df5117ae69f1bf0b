#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "transeal/encoding.hpp"

namespace transeal {

inline constexpr std::string_view kDigestPrefix = "sha-256:";

using Sha256 = std::array<std::uint8_t, 32>;

Sha256 sha256(ByteView data);

// "sha-256:" followed by the lowercase hex SHA-256 of `data`.
std::string compute_content_id(ByteView data);

}  // namespace transeal
