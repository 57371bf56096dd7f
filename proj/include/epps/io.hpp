#pragma once

#include <charconv>
#include <cmath>
#include <istream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "epps/error.hpp"

namespace epps::io {

inline std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// Parses the whole token as a finite double.
inline bool parse_double(std::string_view token, double& out) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  return ec == std::errc() && ptr == token.data() + token.size() && std::isfinite(out);
}

// One observation per line. Blank lines and lines starting with '#' are
// skipped; the first remaining line may be a non-numeric header. Anything
// else that is not a finite number is an InputError naming the line.
inline std::vector<double> read_observations(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t lineno = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    double v = 0.0;
    if (parse_double(t, v)) {
      values.push_back(v);
    } else if (!seen_content) {
      // header
    } else {
      throw InputError("line " + std::to_string(lineno) + ": cannot parse '" + std::string(t) +
                           "' as a finite number",
                       lineno);
    }
    seen_content = true;
  }
  return values;
}

// Shortest representation that round-trips.
inline std::string format_number(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

}  // namespace epps::io
