#pragma once

// Per-iteration CSV export/import. Format: '.' decimal, ',' separator,
// mandatory header, numbers at 17 significant digits (lossless for doubles),
// empty cells where a value is undefined (e.g. coordinates evicted from a
// windowed trace).

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "altproj/errors.hpp"
#include "altproj/iterate.hpp"
#include "altproj/point.hpp"

namespace altproj {

namespace detail {

inline std::string format_scalar(Scalar v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v,
                           std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline Scalar parse_scalar(std::string_view sv, const std::string& where) {
  Scalar v = 0.0;
  auto res = std::from_chars(sv.data(), sv.data() + sv.size(), v);
  if (res.ec != std::errc() || res.ptr != sv.data() + sv.size())
    throw ConfigError(where + ": bad number '" + std::string(sv) + "'");
  return v;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace detail

/// Writes one row per iterate: n, role in {start, P1, P2}, coordinates,
/// norm, gap_odd (odd rows), gap_even and ar_residual (even rows >= 2).
inline void write_trace_csv(std::ostream& os, const Trace& t) {
  const std::size_t d = t.set1().dim();
  os << "n,role";
  for (std::size_t i = 0; i < d; ++i) os << ",x" << i;
  os << ",norm,gap_odd,gap_even,ar_residual\n";

  for (std::size_t n = 0; n < t.size(); ++n) {
    os << n << ',';
    os << (n == 0 ? "start" : (n % 2 == 1 ? "P1" : "P2"));
    const Point* p = t.point(n);
    for (std::size_t i = 0; i < d; ++i) {
      os << ',';
      if (p) os << detail::format_scalar((*p)[i]);
    }
    os << ',' << detail::format_scalar(t.norms()[n]);
    os << ',';
    if (n % 2 == 1) os << detail::format_scalar(t.gap_odd()[(n - 1) / 2]);
    os << ',';
    if (n >= 2 && n % 2 == 0)
      os << detail::format_scalar(t.gap_even()[n / 2 - 1]);
    os << ',';
    if (n >= 2 && n % 2 == 0)
      os << detail::format_scalar(t.regularity()[n / 2 - 1]);
    os << '\n';
  }
}

inline void write_trace_csv(const std::filesystem::path& path, const Trace& t) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open for writing: " + path.string());
  write_trace_csv(os, t);
}

/// A trace re-read from CSV. Coordinates may be absent for evicted rows.
struct LoadedTrace {
  std::size_t dimension = 0;
  std::vector<std::optional<Point>> points;
  std::vector<std::string> roles;
  std::vector<Scalar> norms;
  std::vector<Scalar> gap_odd;
  std::vector<Scalar> gap_even;
  std::vector<Scalar> regularity;
};

inline LoadedTrace load_trace_csv(std::istream& is,
                                  const std::string& source = "trace.csv") {
  LoadedTrace out;
  std::string line;
  if (!std::getline(is, line))
    throw ConfigError(source + ": missing header row");
  std::vector<std::string> header = detail::split_csv_line(line);
  if (header.size() < 7 || header[0] != "n" || header[1] != "role")
    throw ConfigError(source + ": unexpected header");
  out.dimension = header.size() - 6;

  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::string where = source + ":" + std::to_string(lineno);
    std::vector<std::string> cells = detail::split_csv_line(line);
    if (cells.size() != header.size())
      throw ConfigError(where + ": wrong number of cells");
    out.roles.push_back(cells[1]);
    bool have_coords = true;
    std::vector<Scalar> coords(out.dimension);
    for (std::size_t i = 0; i < out.dimension; ++i) {
      if (cells[2 + i].empty()) {
        have_coords = false;
        break;
      }
      coords[i] = detail::parse_scalar(cells[2 + i], where);
    }
    out.points.push_back(have_coords
                             ? std::optional<Point>(Point(std::move(coords)))
                             : std::nullopt);
    out.norms.push_back(
        detail::parse_scalar(cells[2 + out.dimension], where));
    const std::string& godd = cells[3 + out.dimension];
    if (!godd.empty())
      out.gap_odd.push_back(detail::parse_scalar(godd, where));
    const std::string& geven = cells[4 + out.dimension];
    if (!geven.empty())
      out.gap_even.push_back(detail::parse_scalar(geven, where));
    const std::string& reg = cells[5 + out.dimension];
    if (!reg.empty())
      out.regularity.push_back(detail::parse_scalar(reg, where));
  }
  return out;
}

inline LoadedTrace load_trace_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open: " + path.string());
  return load_trace_csv(is, path.filename().string());
}

}  // namespace altproj
