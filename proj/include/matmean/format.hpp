#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace matmean {

/// Shortest decimal that round-trips to the same double; the numeric format
/// of every CSV and matrix file this project writes.
inline std::string format_double(double v) {
  char buf[64];
  const std::to_chars_result res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline bool parse_double(std::string_view text, double& out) {
  const std::from_chars_result res = std::from_chars(text.data(), text.data() + text.size(), out);
  return res.ec == std::errc() && res.ptr == text.data() + text.size();
}

}  // namespace matmean
