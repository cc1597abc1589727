#include "wsn/textutil.hpp"

#include <cctype>

namespace wsn {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = s.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(s.substr(start));
            return out;
        }
        out.push_back(s.substr(start, pos - start));
        start = pos + 1;
    }
}

static int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

std::optional<std::uint64_t> parse_hex(std::string_view s, std::size_t max_digits) {
    if (s.empty() || s.size() > max_digits) return std::nullopt;
    std::uint64_t value = 0;
    for (char c : s) {
        int d = hex_digit(c);
        if (d < 0) return std::nullopt;
        value = (value << 4) | static_cast<std::uint64_t>(d);
    }
    return value;
}

std::string to_hex(std::uint64_t value, int width) {
    static const char digits[] = "0123456789ABCDEF";
    std::string out(static_cast<std::size_t>(width), '0');
    for (int i = width - 1; i >= 0; --i) {
        out[static_cast<std::size_t>(i)] = digits[value & 0xF];
        value >>= 4;
    }
    return out;
}

std::optional<std::vector<std::uint8_t>> parse_hex_bytes(std::string_view s) {
    std::vector<std::uint8_t> out;
    int nibble = -1;
    for (char c : s) {
        if (c == ' ' || c == ',' || c == '\t') {
            if (nibble >= 0) return std::nullopt; // separator inside a pair
            continue;
        }
        int d = hex_digit(c);
        if (d < 0) return std::nullopt;
        if (nibble < 0) {
            nibble = d;
        } else {
            out.push_back(static_cast<std::uint8_t>((nibble << 4) | d));
            nibble = -1;
        }
    }
    if (nibble >= 0) return std::nullopt; // odd digit count
    return out;
}

bool is_hex_name(std::string_view name) {
    if (name.size() != 4) return false;
    for (char c : name) {
        if (hex_digit(c) < 0) return false;
    }
    return true;
}

} // namespace wsn
