#pragma once

#include <span>
#include <string>

namespace groma::detail {

/// Lower-case hex SHA-256 of the bytes.
std::string sha256_hex(std::span<const unsigned char> bytes);

}  // namespace groma::detail
