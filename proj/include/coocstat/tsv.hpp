#pragma once

// Small helpers for the tab-separated formats used throughout the toolkit.

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "coocstat/types.hpp"

namespace coocstat::tsv {

inline std::vector<std::string_view> split(std::string_view line, char sep = '\t') {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

inline void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

inline std::uint64_t parse_uint(std::string_view s, std::uint64_t line, std::string_view what) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError("invalid " + std::string(what) + " '" + std::string(s) + "'", line);
  return value;
}

inline double parse_double(std::string_view s, std::uint64_t line, std::string_view what) {
  if (s == "NA") return std::nan("");
  if (s == "inf") return HUGE_VAL;
  if (s == "-inf") return -HUGE_VAL;
  // GCC 11 has floating-point from_chars.
  double value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError("invalid " + std::string(what) + " '" + std::string(s) + "'", line);
  return value;
}

inline bool parse_bool01(std::string_view s, std::uint64_t line, std::string_view what) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw ParseError("invalid " + std::string(what) + " '" + std::string(s) + "'", line);
}

/// Locale-independent %g formatting; NaN is written as NA.
inline std::string fmt(double x, int precision = 12) {
  if (std::isnan(x)) return "NA";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, x);
  return buf;
}

inline std::string fixed(double x, int decimals) {
  if (std::isnan(x)) return "NA";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  std::string s = buf;
  // no "-0.00"
  if (s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

/// Reads non-comment, non-empty lines; calls fn(fields, line_no).
/// A first line whose first field equals `header_first` is skipped.
template <class Fn>
void for_each_row(std::istream& in, std::string_view header_first, Fn&& fn) {
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line);
    if (line_no == 1 && !header_first.empty() && fields[0] == header_first) continue;
    fn(fields, line_no);
  }
}

inline std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return in;
}

inline std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace coocstat::tsv
