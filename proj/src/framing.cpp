#include "wsn/framing.hpp"

namespace wsn {

std::string to_string(FrameError e) {
    switch (e) {
        case FrameError::BadMagic: return "bad-magic";
        case FrameError::BadVersion: return "bad-version";
        case FrameError::TruncatedFrame: return "truncated-frame";
        case FrameError::LengthMismatch: return "length-mismatch";
        case FrameError::ChecksumMismatch: return "checksum-mismatch";
    }
    return "?";
}

std::uint8_t xor_checksum(std::span<const std::uint8_t> bytes) {
    std::uint8_t ck = 0;
    for (std::uint8_t b : bytes) ck ^= b;
    return ck;
}

std::vector<std::uint8_t> encode_frame(const Frame& frame) {
    if (frame.payload.size() > 255) throw PayloadTooLongError(frame.payload.size());
    std::vector<std::uint8_t> out;
    out.reserve(kFrameOverhead + frame.payload.size());
    out.push_back(kFrameMagic0);
    out.push_back(kFrameMagic1);
    out.push_back(frame.version);
    out.push_back(frame.flags);
    for (int shift = 56; shift >= 0; shift -= 8) {
        out.push_back(static_cast<std::uint8_t>(frame.source_mac >> shift));
    }
    out.push_back(static_cast<std::uint8_t>(frame.source_short >> 8));
    out.push_back(static_cast<std::uint8_t>(frame.source_short));
    for (int shift = 24; shift >= 0; shift -= 8) {
        out.push_back(static_cast<std::uint8_t>(frame.timestamp >> shift));
    }
    out.push_back(static_cast<std::uint8_t>(frame.payload.size()));
    out.insert(out.end(), frame.payload.begin(), frame.payload.end());
    out.push_back(xor_checksum(out));
    return out;
}

std::variant<Frame, FrameError> decode_frame(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kFrameOverhead) return FrameError::TruncatedFrame;
    if (bytes[0] != kFrameMagic0 || bytes[1] != kFrameMagic1) return FrameError::BadMagic;
    if (bytes[2] != kFrameVersion) return FrameError::BadVersion;
    const std::size_t payload_len = bytes[18];
    const std::size_t expected = kFrameOverhead + payload_len;
    if (bytes.size() < expected) return FrameError::TruncatedFrame;
    if (bytes.size() > expected) return FrameError::LengthMismatch;
    if (xor_checksum(bytes.first(expected - 1)) != bytes[expected - 1]) {
        return FrameError::ChecksumMismatch;
    }
    Frame frame;
    frame.version = bytes[2];
    frame.flags = bytes[3];
    frame.source_mac = 0;
    for (std::size_t i = 4; i < 12; ++i) {
        frame.source_mac = (frame.source_mac << 8) | bytes[i];
    }
    frame.source_short = static_cast<std::uint16_t>((bytes[12] << 8) | bytes[13]);
    frame.timestamp = 0;
    for (std::size_t i = 14; i < 18; ++i) {
        frame.timestamp = (frame.timestamp << 8) | bytes[i];
    }
    frame.payload.assign(bytes.begin() + 19, bytes.begin() + 19 + payload_len);
    return frame;
}

} // namespace wsn
