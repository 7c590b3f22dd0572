#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace hbnqm {

/// SHA-256 of a byte buffer, lowercase hex. Used to pin input files in
/// output artifacts.
std::string sha256_hex(std::span<const std::uint8_t> data);
std::string sha256_hex(const std::string& data);

/// Digest of a whole file. Throws IoError when unreadable.
std::string sha256_file(const std::string& path);

} // namespace hbnqm
