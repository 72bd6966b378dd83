#pragma once

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>

namespace mabench {

/// Shortest decimal that parses back to exactly `value`.
inline std::string to_decimal(double value) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

/// Strict parse of a whole string as T; throws std::invalid_argument.
template <class T>
T parse_number(std::string_view text) {
  T value{};
  const auto* end = text.data() + text.size();
  const auto res = std::from_chars(text.data(), end, value);
  if (res.ec != std::errc() || res.ptr != end || text.empty()) {
    throw std::invalid_argument("not a valid number: '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace mabench
