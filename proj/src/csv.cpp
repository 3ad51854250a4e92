#include "sobolrank/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <string>
#include <system_error>

namespace sobolrank {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 10);
  return std::string(buf, res.ptr);
}

std::string format_number(std::size_t v) {
  return std::to_string(v);
}

std::string format_number(int v) {
  return std::to_string(v);
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

}  // namespace

double parse_number(const std::string& cell, const std::string& context) {
  const std::string t = trim(cell);
  if (t.empty()) {
    throw CsvError(context + ": empty numeric cell");
  }
  const char* begin = t.data();
  const char* end = t.data() + t.size();
  if (*begin == '+') ++begin;  // from_chars does not accept a leading '+'
  double value = 0.0;
  const auto res = std::from_chars(begin, end, value);
  if (res.ec != std::errc{} || res.ptr != end) {
    throw CsvError(context + ": cannot parse '" + t + "' as a number");
  }
  if (!std::isfinite(value)) {
    throw CsvError(context + ": non-finite value '" + t + "'");
  }
  return value;
}

PairedSample read_xy_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) {
    throw CsvError(source_name + ": empty input, expected an 'x,y' header");
  }
  ++lineno;
  if (trim(line) != "x,y") {
    throw CsvError(source_name + ":1: expected header 'x,y', got '" + trim(line) + "'");
  }

  PairedSample sample;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string context = source_name + ":" + std::to_string(lineno);
    if (trim(line).empty()) {
      // a single trailing newline is fine; anything else is a ragged row
      if (in.peek() == std::char_traits<char>::eof()) break;
      throw CsvError(context + ": blank row");
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
      throw CsvError(context + ": expected exactly two comma-separated cells");
    }
    sample.xs.push_back(parse_number(line.substr(0, comma), context));
    sample.ys.push_back(parse_number(line.substr(comma + 1), context));
  }

  if (sample.size() < 2) {
    throw CsvError(source_name + ": need at least 2 data rows, got " +
                   std::to_string(sample.size()));
  }
  return sample;
}

PairedSample read_xy_csv_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw CsvError(path + ": cannot open file");
  }
  return read_xy_csv(in, path);
}

}  // namespace sobolrank
