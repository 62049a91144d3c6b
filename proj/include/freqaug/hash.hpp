#pragma once

#include <span>
#include <string>

#include "freqaug/field.hpp"

namespace freqaug {

/// Lowercase hex SHA-256.
std::string sha256_hex(std::span<const unsigned char> bytes);

/// SHA-256 over the shape (three little-endian int32) followed by every value
/// as a little-endian IEEE-754 double. Equal hashes mean bitwise-equal fields.
std::string field_sha256(const Field& field);

}  // namespace freqaug
