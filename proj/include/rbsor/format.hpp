#ifndef RBSOR_FORMAT_HPP
#define RBSOR_FORMAT_HPP

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace rbsor {

/// Shortest decimal text that parses back to exactly `v`.
inline std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

/// Parses the whole of `text` as a double; surrounding blanks are allowed.
inline std::optional<double> parse_double(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) text.remove_suffix(1);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double v = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) return std::nullopt;
    return v;
}

}  // namespace rbsor

#endif  // RBSOR_FORMAT_HPP
