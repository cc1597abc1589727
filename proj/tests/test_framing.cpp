#include <doctest.h>

#include <random>

#include "wsn/framing.hpp"

using namespace wsn;

namespace {

Frame sample_frame() {
    Frame f;
    f.flags = 0x00;
    f.source_mac = 0x0008000800080008ull;
    f.source_short = 0x0008;
    f.timestamp = 0;
    f.payload = {0x0B};
    return f;
}

Frame random_frame(std::mt19937_64& rng, std::size_t max_payload = 255) {
    Frame f;
    f.flags = static_cast<std::uint8_t>(rng());
    f.source_mac = rng();
    f.source_short = static_cast<std::uint16_t>(rng());
    f.timestamp = static_cast<std::uint32_t>(rng());
    f.payload.resize(rng() % (max_payload + 1));
    for (auto& b : f.payload) b = static_cast<std::uint8_t>(rng());
    return f;
}

} // namespace

TEST_CASE("encoding matches the wire layout byte for byte") {
    const auto bytes = encode_frame(sample_frame());
    const std::vector<std::uint8_t> expected = {
        0x57, 0x53, 0x01, 0x00,                         // magic, version, flags
        0x00, 0x08, 0x00, 0x08, 0x00, 0x08, 0x00, 0x08, // MAC
        0x00, 0x08,                                     // short address
        0x00, 0x00, 0x00, 0x00,                         // timestamp
        0x01, 0x0B,                                     // length, payload
        0x07,                                           // XOR checksum
    };
    CHECK(bytes == expected);
}

TEST_CASE("decoding the golden frame recovers every field") {
    const auto bytes = encode_frame(sample_frame());
    const auto decoded = decode_frame(bytes);
    REQUIRE(std::holds_alternative<Frame>(decoded));
    CHECK(std::get<Frame>(decoded) == sample_frame());
}

TEST_CASE("empty payload still makes a 20-byte frame") {
    Frame f = sample_frame();
    f.payload.clear();
    CHECK(encode_frame(f).size() == 20);
}

TEST_CASE("encoded length is always 20 plus the payload") {
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        const auto f = random_frame(rng);
        CHECK(encode_frame(f).size() == 20 + f.payload.size());
    }
}

TEST_CASE("random frames round-trip") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 300; ++i) {
        const auto f = random_frame(rng);
        const auto decoded = decode_frame(encode_frame(f));
        REQUIRE(std::holds_alternative<Frame>(decoded));
        CHECK(std::get<Frame>(decoded) == f);
    }
}

TEST_CASE("payloads over 255 bytes cannot be framed") {
    Frame f = sample_frame();
    f.payload.assign(256, 0x00);
    CHECK_THROWS_AS(encode_frame(f), PayloadTooLongError);
}

TEST_CASE("malformed inputs are classified") {
    const auto bytes = encode_frame(sample_frame());

    SUBCASE("short input") {
        const std::vector<std::uint8_t> small(bytes.begin(), bytes.begin() + 19);
        const auto r = decode_frame(small);
        REQUIRE(std::holds_alternative<FrameError>(r));
        CHECK(std::get<FrameError>(r) == FrameError::TruncatedFrame);
        CHECK(std::holds_alternative<FrameError>(decode_frame({})));
    }
    SUBCASE("payload cut off") {
        const std::vector<std::uint8_t> cut(bytes.begin(), bytes.begin() + 20);
        const auto r = decode_frame(cut);
        REQUIRE(std::holds_alternative<FrameError>(r));
        CHECK(std::get<FrameError>(r) == FrameError::TruncatedFrame);
    }
    SUBCASE("bad magic") {
        auto bad = bytes;
        bad[0] = 0x00;
        const auto r = decode_frame(bad);
        REQUIRE(std::holds_alternative<FrameError>(r));
        CHECK(std::get<FrameError>(r) == FrameError::BadMagic);
    }
    SUBCASE("bad version") {
        auto bad = bytes;
        bad[2] = 0x02;
        const auto r = decode_frame(bad);
        REQUIRE(std::holds_alternative<FrameError>(r));
        CHECK(std::get<FrameError>(r) == FrameError::BadVersion);
    }
    SUBCASE("trailing bytes") {
        auto bad = bytes;
        bad.push_back(0x00);
        const auto r = decode_frame(bad);
        REQUIRE(std::holds_alternative<FrameError>(r));
        CHECK(std::get<FrameError>(r) == FrameError::LengthMismatch);
    }
    SUBCASE("flipped checksum") {
        auto bad = bytes;
        bad.back() ^= 0xFF;
        const auto r = decode_frame(bad);
        REQUIRE(std::holds_alternative<FrameError>(r));
        CHECK(std::get<FrameError>(r) == FrameError::ChecksumMismatch);
    }
}

TEST_CASE("no single-bit flip passes unnoticed") {
    // XOR checksum property: any one-bit change must either fail to decode
    // or decode to a different frame, never silently return the original.
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const auto f = random_frame(rng, 16);
        const auto bytes = encode_frame(f);
        for (std::size_t bit = 0; bit < bytes.size() * 8; ++bit) {
            auto tampered = bytes;
            tampered[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
            const auto r = decode_frame(tampered);
            if (const auto* decoded = std::get_if<Frame>(&r)) {
                REQUIRE(*decoded != f);
            }
        }
    }
}
