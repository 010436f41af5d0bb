#pragma once

#include <string>

namespace qdr {

// SHA-256 of the byte string, as 64 lowercase hex digits.
std::string sha256_hex(const std::string& data);

}  // namespace qdr
