#ifndef WSN_FRAMING_HPP
#define WSN_FRAMING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wsn/errors.hpp"

namespace wsn {

inline constexpr std::uint8_t kFrameMagic0 = 0x57; // 'W'
inline constexpr std::uint8_t kFrameMagic1 = 0x53; // 'S'
inline constexpr std::uint8_t kFrameVersion = 0x01;
inline constexpr std::size_t kFrameOverhead = 20; // header (19) + checksum (1)

/// Wire packet. Layout (all offsets in bytes, multi-byte fields big-endian):
///
///   off  0-1   magic 0x57 0x53
///   off  2     version (0x01)
///   off  3     flags (keying layout)
///   off  4-11  source MAC, 64-bit
///   off 12-13  source short address, 16-bit
///   off 14-17  timestamp, epoch seconds, 32-bit
///   off 18     payload length N (0-255)
///   off 19..   N ciphertext bytes
///   off 19+N   checksum: XOR of all preceding bytes
///
/// Headers travel in clear; only the payload is encrypted.
struct Frame {
    std::uint8_t version = kFrameVersion;
    std::uint8_t flags = 0;
    std::uint64_t source_mac = 0;
    std::uint16_t source_short = 0;
    std::uint32_t timestamp = 0;
    std::vector<std::uint8_t> payload;

    bool operator==(const Frame&) const = default;
};

enum class FrameError {
    BadMagic,
    BadVersion,
    TruncatedFrame,
    LengthMismatch,
    ChecksumMismatch,
};

std::string to_string(FrameError e);

/// Serializes a frame. Deterministic: the same frame always yields the
/// same bytes. Throws PayloadTooLongError above 255 payload bytes.
std::vector<std::uint8_t> encode_frame(const Frame& frame);

/// Parses an encoded frame, rejecting malformed input with a
/// distinguishable error. Corrupted frames are dropped and counted by
/// callers, never repaired.
std::variant<Frame, FrameError> decode_frame(std::span<const std::uint8_t> bytes);

/// XOR of a byte range; the frame checksum over bytes 0..len-2.
std::uint8_t xor_checksum(std::span<const std::uint8_t> bytes);

} // namespace wsn

#endif // WSN_FRAMING_HPP
