#pragma once

#include <iosfwd>
#include <string>

#include "sobolrank/errors.hpp"
#include "sobolrank/estimators.hpp"

namespace sobolrank {

/// CSV cell content that failed to parse, with a "source:line:" prefix.
class CsvError : public InvalidInputError {
public:
  using InvalidInputError::InvalidInputError;
};

/// Locale-independent decimal rendering, up to 10 significant digits with
/// trailing zeros trimmed. Reparsing the string reproduces the value at the
/// printed precision.
std::string format_number(double v);

/// Integer counterpart, for symmetric table writing.
std::string format_number(std::size_t v);
std::string format_number(int v);

/// Strict parser for one numeric cell: optional sign, finite decimal,
/// nothing else. Throws CsvError on anything it cannot fully consume.
double parse_number(const std::string& cell, const std::string& context);

/// Reads an "x,y" dataset: a literal "x,y" header then rows of exactly two
/// finite decimal numbers. Rejects ragged rows, non-numeric or non-finite
/// cells, and datasets with fewer than 2 rows. `source_name` seeds the
/// row-numbered diagnostics.
PairedSample read_xy_csv(std::istream& in, const std::string& source_name);

/// read_xy_csv over a file path.
PairedSample read_xy_csv_file(const std::string& path);

}  // namespace sobolrank
