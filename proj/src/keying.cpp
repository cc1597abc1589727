#include "wsn/keying.hpp"

#include <chrono>
#include <cstdio>

#include "wsn/errors.hpp"
#include "wsn/registry.hpp"
#include "wsn/textutil.hpp"

namespace wsn {

bool Timestamp::valid() const {
    if (year < 1970 || month < 1 || month > 12 || day < 1 || hour > 23 ||
        minute > 59 || second > 59) {
        return false;
    }
    const std::chrono::year_month_day ymd{std::chrono::year{year},
                                          std::chrono::month{month},
                                          std::chrono::day{day}};
    if (!ymd.ok()) return false;
    // must fit the 32-bit wire field
    const auto secs = std::chrono::sys_days{ymd}.time_since_epoch().count() * 86400LL +
                      hour * 3600LL + minute * 60LL + second;
    return secs <= 0xFFFFFFFFLL;
}

std::uint32_t Timestamp::to_epoch() const {
    const std::chrono::year_month_day ymd{std::chrono::year{year},
                                          std::chrono::month{month},
                                          std::chrono::day{day}};
    const long long days = std::chrono::sys_days{ymd}.time_since_epoch().count();
    return static_cast<std::uint32_t>(days * 86400LL + hour * 3600LL + minute * 60LL + second);
}

Timestamp Timestamp::from_epoch(std::uint32_t seconds) {
    const auto days = std::chrono::sys_days{
        std::chrono::days{static_cast<long>(seconds / 86400)}};
    const std::chrono::year_month_day ymd{days};
    const std::uint32_t rem = seconds % 86400;
    Timestamp ts;
    ts.year = static_cast<int>(ymd.year());
    ts.month = static_cast<unsigned>(ymd.month());
    ts.day = static_cast<unsigned>(ymd.day());
    ts.hour = rem / 3600;
    ts.minute = (rem / 60) % 60;
    ts.second = rem % 60;
    return ts;
}

std::optional<Timestamp> Timestamp::parse(std::string_view text) {
    // YYYY-MM-DD HH:MM:SS
    Timestamp ts;
    int n = 0;
    const std::string buf(text);
    if (std::sscanf(buf.c_str(), "%4d-%2u-%2u %2u:%2u:%2u%n", &ts.year, &ts.month,
                    &ts.day, &ts.hour, &ts.minute, &ts.second, &n) != 6 ||
        static_cast<std::size_t>(n) != buf.size()) {
        return std::nullopt;
    }
    if (!ts.valid()) return std::nullopt;
    return ts;
}

std::string Timestamp::format() const {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u %02u:%02u:%02u", year, month, day,
                  hour, minute, second);
    return buf;
}

KeyByte derive_key(const KeySpec& spec, const NodeDescriptor& node, const Timestamp& ts) {
    switch (spec.mode) {
        case KeyMode::MacTail:
            return static_cast<KeyByte>(node.mac & 0xFF);
        case KeyMode::NodeName: {
            const auto value = is_hex_name(node.name) ? parse_hex(node.name, 4)
                                                      : std::nullopt;
            if (!value) throw InvalidNodeNameError(node.name);
            return static_cast<KeyByte>(*value & 0xFF);
        }
        case KeyMode::Timestamp:
            switch (spec.ts_field.value()) {
                case TsField::Hours: return static_cast<KeyByte>(ts.hour);
                case TsField::Minutes: return static_cast<KeyByte>(ts.minute);
                case TsField::Seconds: return static_cast<KeyByte>(ts.second);
            }
    }
    throw DomainError("invalid key spec");
}

std::uint8_t encode_flags(const KeySpec& spec) {
    const auto mode = static_cast<std::uint8_t>(spec.mode);
    const std::uint8_t field =
        spec.ts_field ? static_cast<std::uint8_t>(*spec.ts_field) : 0;
    return static_cast<std::uint8_t>((mode << 6) | (field << 4));
}

std::optional<KeySpec> decode_flags(std::uint8_t b) {
    const std::uint8_t mode = b >> 6;
    const std::uint8_t field = (b >> 4) & 0x3;
    if (mode == 3 || field == 3 || (b & 0x0F) != 0) return std::nullopt;
    KeySpec spec;
    spec.mode = static_cast<KeyMode>(mode);
    if (spec.mode == KeyMode::Timestamp) spec.ts_field = static_cast<TsField>(field);
    return spec;
}

std::optional<KeySpec> parse_key_spec(std::string_view text) {
    if (text == "mac") return KeySpec::mac_tail();
    if (text == "name") return KeySpec::node_name();
    if (text == "ts-hours") return KeySpec::timestamp(TsField::Hours);
    if (text == "ts-minutes") return KeySpec::timestamp(TsField::Minutes);
    if (text == "ts-seconds") return KeySpec::timestamp(TsField::Seconds);
    return std::nullopt;
}

std::string to_string(const KeySpec& spec) {
    switch (spec.mode) {
        case KeyMode::MacTail: return "mac";
        case KeyMode::NodeName: return "name";
        case KeyMode::Timestamp:
            switch (spec.ts_field.value()) {
                case TsField::Hours: return "ts-hours";
                case TsField::Minutes: return "ts-minutes";
                case TsField::Seconds: return "ts-seconds";
            }
    }
    return "?";
}

} // namespace wsn
