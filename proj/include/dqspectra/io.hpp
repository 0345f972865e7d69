#pragma once

// DQMAT text format.
//
//   DQMAT <m> <n>
//   st.w st.x st.y st.z inf.w inf.x inf.y inf.z     (m*n records, row-major)
//
// Lines starting with '#' are comments. Values are written with 17
// significant digits, which round-trips every binary64 value exactly.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "dqspectra/error.hpp"
#include "dqspectra/linalg.hpp"

namespace dqspectra {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t j = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > j) out.push_back(line.substr(j, i - j));
  }
  return out;
}

[[noreturn]] inline void parse_fail(std::size_t line_no, const std::string& msg) {
  throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": " + msg);
}

inline double parse_real(std::string_view tok, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    parse_fail(line_no, "invalid number '" + std::string(tok) + "'");
  }
  if (!std::isfinite(v)) parse_fail(line_no, "non-finite value '" + std::string(tok) + "'");
  return v;
}

inline std::size_t parse_count(std::string_view tok, std::size_t line_no) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
    parse_fail(line_no, "invalid dimension '" + std::string(tok) + "'");
  }
  return v;
}

inline void write_real(std::ostream& os, double v) {
  char buf[40];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", v);
  os.write(buf, len);
}

}  // namespace detail

inline DQMatrix parse_dqmat(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t m = 0;
  std::size_t n = 0;
  std::size_t filled = 0;
  DQMatrix a;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') continue;
    const auto tok = detail::split_ws(line);
    if (tok.empty()) continue;
    if (!have_header) {
      if (tok.size() != 3 || tok[0] != "DQMAT") detail::parse_fail(line_no, "expected header 'DQMAT <m> <n>'");
      m = detail::parse_count(tok[1], line_no);
      n = detail::parse_count(tok[2], line_no);
      a = DQMatrix(m, n);
      have_header = true;
      continue;
    }
    if (tok.size() != 8) {
      detail::parse_fail(line_no, "expected 8 values per record, got " + std::to_string(tok.size()));
    }
    if (filled >= m * n) {
      throw Error(ErrorKind::DimensionError, "more records than the header's " + std::to_string(m) + "x" +
                                                 std::to_string(n) + " (line " + std::to_string(line_no) + ")");
    }
    double v[8];
    for (int k = 0; k < 8; ++k) v[k] = detail::parse_real(tok[k], line_no);
    const std::size_t i = filled / n;
    const std::size_t j = filled % n;
    a.set(i, j, {Quaternion(v[0], v[1], v[2], v[3]), Quaternion(v[4], v[5], v[6], v[7])});
    ++filled;
  }
  if (!have_header) detail::parse_fail(line_no, "missing DQMAT header");
  if (filled != m * n) {
    throw Error(ErrorKind::DimensionError, "header declares " + std::to_string(m * n) + " records, found " +
                                               std::to_string(filled));
  }
  return a;
}

inline DQMatrix parse_dqmat(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_dqmat(in);
}

inline void write_dqmat(std::ostream& os, const DQMatrix& a) {
  os << "DQMAT " << a.rows() << ' ' << a.cols() << '\n';
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Quaternion& s = a.st()(i, j);
      const Quaternion& e = a.inf()(i, j);
      const double v[8] = {s.w(), s.x(), s.y(), s.z(), e.w(), e.x(), e.y(), e.z()};
      for (int k = 0; k < 8; ++k) {
        if (k) os.put(' ');
        detail::write_real(os, v[k]);
      }
      os.put('\n');
    }
  }
}

inline std::string to_dqmat(const DQMatrix& a) {
  std::ostringstream os;
  write_dqmat(os, a);
  return os.str();
}

}  // namespace dqspectra
