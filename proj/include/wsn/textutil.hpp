#ifndef WSN_TEXTUTIL_HPP
#define WSN_TEXTUTIL_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wsn {

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

/// Case-insensitive hex with no 0x prefix; nullopt on bad digits, empty
/// input, or overflow past max_digits.
std::optional<std::uint64_t> parse_hex(std::string_view s, std::size_t max_digits = 16);

/// Uppercase hex, zero-padded to the given width.
std::string to_hex(std::uint64_t value, int width);

/// Byte strings like "0B D5 63": hex pairs separated by spaces, commas or
/// nothing at all.
std::optional<std::vector<std::uint8_t>> parse_hex_bytes(std::string_view s);

bool is_hex_name(std::string_view name); ///< exactly 4 hex digits

} // namespace wsn

#endif // WSN_TEXTUTIL_HPP
