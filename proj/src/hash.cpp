#include "freqaug/hash.hpp"

#include <openssl/evp.h>

#include <bit>
#include <cstdint>
#include <memory>
#include <vector>

#include "freqaug/error.hpp"

namespace freqaug {

std::string sha256_hex(std::span<const unsigned char> bytes) {
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1) {
        throw Error("SHA-256 computation failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string hex;
    hex.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        hex.push_back(kHex[digest[i] >> 4]);
        hex.push_back(kHex[digest[i] & 0xf]);
    }
    return hex;
}

std::string field_sha256(const Field& field) {
    std::vector<unsigned char> bytes;
    bytes.reserve(12 + 8 * field.size());
    const auto put = [&](std::uint64_t v, int n) {
        for (int i = 0; i < n; ++i) {
            bytes.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
        }
    };
    put(static_cast<std::uint32_t>(field.channels()), 4);
    put(static_cast<std::uint32_t>(field.height()), 4);
    put(static_cast<std::uint32_t>(field.width()), 4);
    for (double v : field.values()) {
        put(std::bit_cast<std::uint64_t>(v), 8);
    }
    return sha256_hex(bytes);
}

}  // namespace freqaug
