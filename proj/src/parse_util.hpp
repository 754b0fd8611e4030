#pragma once

#include <charconv>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

namespace rootsim::detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
  return v;
}

// Shortest decimal that round-trips (finite values only).
inline std::string shortest(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

// "name:key=value" -> value when name and key match; the suffix is optional.
inline std::optional<double> keyed_param(std::string_view text, std::string_view name,
                                         std::string_view key, double fallback) {
  if (text == name) return fallback;
  if (text.size() <= name.size() || text.substr(0, name.size()) != name ||
      text[name.size()] != ':')
    return std::nullopt;
  auto rest = text.substr(name.size() + 1);
  if (rest.size() <= key.size() || rest.substr(0, key.size()) != key || rest[key.size()] != '=')
    return std::nullopt;
  return parse_double(rest.substr(key.size() + 1));
}

}  // namespace rootsim::detail
