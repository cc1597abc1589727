#include "wsn/sbox.hpp"

namespace wsn {

std::vector<std::uint8_t> encrypt_payload(std::span<const std::uint8_t> plain, KeyByte key) {
    if (plain.size() > 255) throw PayloadTooLongError(plain.size());
    std::vector<std::uint8_t> out;
    out.reserve(plain.size());
    for (std::uint8_t b : plain) out.push_back(encrypt_byte(b, key));
    return out;
}

std::vector<std::uint8_t> decrypt_payload(std::span<const std::uint8_t> cipher, KeyByte key) {
    if (cipher.size() > 255) throw PayloadTooLongError(cipher.size());
    std::vector<std::uint8_t> out;
    out.reserve(cipher.size());
    for (std::uint8_t b : cipher) out.push_back(decrypt_byte(b, key));
    return out;
}

} // namespace wsn
