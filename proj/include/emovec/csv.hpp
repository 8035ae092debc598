#pragma once

// Comma-separated values: quote doubling, LF line endings.

#include <string>
#include <string_view>
#include <vector>

namespace emovec::csv {

/// Quotes a field when it contains a comma, quote, CR or LF.
std::string quote(std::string_view field);

/// Shortest decimal text that parses back to exactly v.
std::string format_exact(double v);

/// Fixed-point text with the given number of decimals.
std::string format_fixed(double v, int decimals);

using Row = std::vector<std::string>;

/// Parses a whole document. Accepts LF or CRLF line endings; a final empty
/// line is ignored. Throws std::invalid_argument on an unterminated quote.
std::vector<Row> parse(std::string_view text);

}  // namespace emovec::csv
