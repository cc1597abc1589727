#include <doctest.h>

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

#include "wsn/sbox.hpp"

using namespace wsn;

TEST_CASE("substitution table spot checks") {
    CHECK(substitute(0x00) == 0x63);
    CHECK(substitute(0x01) == 0x7C);
    CHECK(substitute(0xD5) == 0x03);
    CHECK(substitute(0xFF) == 0x16);
    CHECK(substitute(0x10) == 0xCA);
    CHECK(substitute(0xA0) == 0xE0);
    CHECK(substitute(0x4C) == 0x29);
    CHECK(substitute(0x7F) == 0xD2);
    CHECK(substitute(0x53) == 0xED);
}

TEST_CASE("forward table is a bijection on 0..255") {
    std::array<std::uint8_t, 256> sorted = kSBoxForward;
    std::sort(sorted.begin(), sorted.end());
    for (int i = 0; i < 256; ++i) CHECK(sorted[i] == i);
}

TEST_CASE("inverse composed with forward is the identity") {
    for (int x = 0; x < 256; ++x) {
        CHECK(inverse_substitute(substitute(static_cast<std::uint8_t>(x))) == x);
    }
    CHECK(inverse_substitute(0x03) == 0xD5);
    CHECK(inverse_substitute(0x63) == 0x00);
}

TEST_CASE("byte encryption golden vector") {
    CHECK(encrypt_byte(0xD5, 0x08) == 0x0B);
    CHECK(decrypt_byte(0x0B, 0x08) == 0xD5);
    CHECK(encrypt_byte(0x00, 0x00) == 0x63);
    CHECK(decrypt_byte(0x63, 0x00) == 0x00);
    CHECK(encrypt_byte(0x53, 0xED) == 0x00);
}

TEST_CASE("every (plaintext, key) pair round-trips") {
    for (int p = 0; p < 256; ++p) {
        for (int k = 0; k < 256; ++k) {
            const auto plain = static_cast<std::uint8_t>(p);
            const auto key = static_cast<KeyByte>(k);
            REQUIRE(decrypt_byte(encrypt_byte(plain, key), key) == plain);
        }
    }
}

TEST_CASE("ciphertext XOR substituted plaintext recovers the key") {
    for (int p = 0; p < 256; ++p) {
        for (int k = 0; k < 256; ++k) {
            const auto plain = static_cast<std::uint8_t>(p);
            const auto key = static_cast<KeyByte>(k);
            REQUIRE((substitute(plain) ^ encrypt_byte(plain, key)) == key);
        }
    }
}

TEST_CASE("payload encryption is per-byte under one key") {
    const std::uint8_t single[] = {0xD5};
    CHECK(encrypt_payload(single, 0x08) == std::vector<std::uint8_t>{0x0B});

    CHECK(encrypt_payload({}, 0x42).empty());

    const std::uint8_t two[] = {0x00, 0xFF};
    CHECK(encrypt_payload(two, 0x00) == std::vector<std::uint8_t>{0x63, 0x16});
}

TEST_CASE("payload length is capped at 255") {
    const std::vector<std::uint8_t> max(255, 0xAB);
    CHECK(encrypt_payload(max, 0x01).size() == 255);
    const std::vector<std::uint8_t> over(256, 0xAB);
    CHECK_THROWS_AS(encrypt_payload(over, 0x01), PayloadTooLongError);
    CHECK_THROWS_AS(decrypt_payload(over, 0x01), PayloadTooLongError);
}

TEST_CASE("payload decryption inverts encryption") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int trial = 0; trial < 50; ++trial) {
        const auto len = static_cast<std::size_t>(rng() % 256);
        std::vector<std::uint8_t> plain(len);
        for (auto& b : plain) b = static_cast<std::uint8_t>(byte(rng));
        const auto key = static_cast<KeyByte>(byte(rng));
        CHECK(decrypt_payload(encrypt_payload(plain, key), key) == plain);
    }
}

TEST_CASE("forward table occupies exactly 2048 bits") {
    static_assert(sizeof(kSBoxForward) == 256);
    CHECK(kSBoxForward.size() * 8 == 2048);
}
