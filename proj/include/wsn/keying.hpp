#ifndef WSN_KEYING_HPP
#define WSN_KEYING_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "wsn/sbox.hpp"

namespace wsn {

struct NodeDescriptor;

/// Where the XOR key byte comes from.
enum class KeyMode : std::uint8_t {
    MacTail = 0,  ///< least-significant byte of the node's MAC address
    NodeName = 1, ///< low byte of the 4-hex-digit node name
    Timestamp = 2 ///< one calendar field of the frame timestamp
};

/// Which timestamp field feeds the key when KeyMode::Timestamp is active.
enum class TsField : std::uint8_t { Hours = 0, Minutes = 1, Seconds = 2 };

/// Key-source selection. ts_field is present exactly when mode is Timestamp.
struct KeySpec {
    KeyMode mode = KeyMode::MacTail;
    std::optional<TsField> ts_field;

    static KeySpec mac_tail() { return {KeyMode::MacTail, std::nullopt}; }
    static KeySpec node_name() { return {KeyMode::NodeName, std::nullopt}; }
    static KeySpec timestamp(TsField field) { return {KeyMode::Timestamp, field}; }

    bool valid() const { return ts_field.has_value() == (mode == KeyMode::Timestamp); }

    bool operator==(const KeySpec&) const = default;
};

/// Calendar date-time at one-second resolution. Travels on the wire as
/// unsigned 32-bit epoch seconds (UTC, no leap seconds).
struct Timestamp {
    int year = 1970;
    unsigned month = 1; ///< 1..12
    unsigned day = 1;   ///< 1..31
    unsigned hour = 0;  ///< 0..23
    unsigned minute = 0;
    unsigned second = 0;

    bool valid() const;
    std::uint32_t to_epoch() const;
    static Timestamp from_epoch(std::uint32_t seconds);

    /// Parses "YYYY-MM-DD HH:MM:SS"; nullopt on malformed or out-of-range input.
    static std::optional<Timestamp> parse(std::string_view text);
    std::string format() const;

    bool operator==(const Timestamp&) const = default;
};

/// Derives the single key byte for a node at a point in time.
///   MacTail   -> low byte of the MAC
///   NodeName  -> low byte of the name parsed as a 16-bit hex number
///   Timestamp -> the selected field value (hours 0-23, minutes/seconds 0-59)
/// Throws InvalidNodeNameError when NodeName mode meets a name that is not
/// exactly four hex digits.
KeyByte derive_key(const KeySpec& spec, const NodeDescriptor& node, const Timestamp& ts);

/// Packs the key spec into the frame flags byte:
///   bits 7-6  mode      (00 MacTail, 01 NodeName, 10 Timestamp, 11 reserved)
///   bits 5-4  ts_field  (00 Hours, 01 Minutes, 10 Seconds, 11 reserved;
///                        00 when mode is not Timestamp)
///   bits 3-0  zero
/// This layout is a wire contract shared with the framing module.
std::uint8_t encode_flags(const KeySpec& spec);

/// Inverse of encode_flags on its image. Returns nullopt (reserved flag
/// bits) when the mode is 11, the ts_field is 11, or the low nibble is
/// nonzero — any of which marks a corrupted or unknown frame. Field bits
/// under a non-Timestamp mode are ignored.
std::optional<KeySpec> decode_flags(std::uint8_t b);

/// Config/CLI spellings: mac | name | ts-hours | ts-minutes | ts-seconds.
std::optional<KeySpec> parse_key_spec(std::string_view text);
std::string to_string(const KeySpec& spec);

} // namespace wsn

#endif // WSN_KEYING_HPP
