#ifndef COINMOTIF_IO_HPP_
#define COINMOTIF_IO_HPP_

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "coinmotif/types.hpp"

namespace coinmotif {

struct MissingColumnError : std::runtime_error {
  explicit MissingColumnError(const std::string& what)
      : std::runtime_error(what) {}
};

struct EmptyFileError : std::runtime_error {
  explicit EmptyFileError(const std::string& what) : std::runtime_error(what) {}
};

/// A cell that failed to parse; `row` and `col` are 1-based, the header
/// counting as row 1.
struct ParseError : std::runtime_error {
  std::string path;
  long long row = 0;
  long long col = 0;

  ParseError(std::string path_, long long row_, long long col_,
             const std::string& what)
      : std::runtime_error(path_ + ":" + std::to_string(row_) + ":" +
                           std::to_string(col_) + ": " + what),
        path(std::move(path_)),
        row(row_),
        col(col_) {}
};

namespace detail {

inline std::string_view trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> splitCsv(std::string_view line,
                                              std::vector<std::string_view>& out) {
  out.clear();
  std::size_t pos = 0;
  for (;;) {
    const std::size_t comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      out.push_back(trimmed(line.substr(pos)));
      break;
    }
    out.push_back(trimmed(line.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  return out;
}

inline std::string stemOf(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

}  // namespace detail

/// Reads the named column of one comma-delimited run file (header row
/// required) into a TimeSeries whose id is the file's stem. Cells must be
/// finite numbers; every row must have as many cells as the header.
template <typename Scalar>
TimeSeries<Scalar> loadRun(const std::string& path, const std::string& sensor) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::string line;
  if (!std::getline(in, line))
    throw EmptyFileError(path + " is empty");
  std::vector<std::string_view> cells;
  detail::splitCsv(line, cells);
  const std::size_t width = cells.size();
  std::size_t target = width;
  for (std::size_t i = 0; i < cells.size(); ++i)
    if (cells[i] == sensor) {
      target = i;
      break;
    }
  if (target == width)
    throw MissingColumnError(path + " has no column '" + sensor + "'");

  TimeSeries<Scalar> series;
  series.id = detail::stemOf(path);
  series.sensor = sensor;
  std::vector<Scalar> values;

  long long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (detail::trimmed(line).empty()) continue;
    detail::splitCsv(line, cells);
    if (cells.size() != width)
      throw ParseError(path, row,
                       static_cast<long long>(std::min(cells.size(), width)) + 1,
                       "expected " + std::to_string(width) + " cells, got " +
                           std::to_string(cells.size()));
    const std::string_view cell = cells[target];
    double value = 0;
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    const auto res = std::from_chars(first, last, value);
    if (res.ec != std::errc() || res.ptr != last || !std::isfinite(value))
      throw ParseError(path, row, static_cast<long long>(target) + 1,
                       "not a finite number: '" + std::string(cell) + "'");
    values.push_back(static_cast<Scalar>(value));
  }
  if (values.empty()) throw EmptyFileError(path + " has no data rows");

  series.values.resize(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    series.values[static_cast<Index>(i)] = values[i];
  return series;
}

/// One series per file, file order preserved.
template <typename Scalar>
std::vector<TimeSeries<Scalar>> loadRuns(const std::vector<std::string>& paths,
                                         const std::string& sensor) {
  std::vector<TimeSeries<Scalar>> out;
  out.reserve(paths.size());
  for (const auto& path : paths) out.push_back(loadRun<Scalar>(path, sensor));
  return out;
}

/// Reads a headerless file of whitespace- or comma-separated numbers as one
/// series (for public single-channel datasets).
template <typename Scalar>
TimeSeries<Scalar> loadPlainSeries(const std::string& path,
                                   const std::string& sensor = "value") {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  TimeSeries<Scalar> series;
  series.id = detail::stemOf(path);
  series.sensor = sensor;

  std::vector<Scalar> values;
  std::string token;
  long long row = 0;
  std::string line;
  while (std::getline(in, line)) {
    ++row;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    long long col = 0;
    while (ls >> token) {
      ++col;
      try {
        std::size_t used = 0;
        const double value = std::stod(token, &used);
        if (used != token.size() || !std::isfinite(value))
          throw std::invalid_argument(token);
        values.push_back(static_cast<Scalar>(value));
      } catch (const std::exception&) {
        throw ParseError(path, row, col, "not a finite number: '" + token + "'");
      }
    }
  }
  if (values.empty()) throw EmptyFileError(path + " has no data");
  series.values.resize(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i)
    series.values[static_cast<Index>(i)] = values[i];
  return series;
}

}  // namespace coinmotif

#endif  // COINMOTIF_IO_HPP_
