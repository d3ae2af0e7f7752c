#pragma once

#include <string>
#include <vector>

namespace nmr {

// Shortest decimal form that round-trips the exact double, so files written
// from identical runs are byte-identical.
std::string format_double(double value);

// Strict double parse of a whole token (leading/trailing whitespace allowed);
// throws Error{Format} naming the context on anything else.
double parse_double(const std::string& token, const std::string& context);

// Splits on the delimiter without collapsing; "a,,b" → {"a", "", "b"}.
std::vector<std::string> split(const std::string& line, char delim);

std::string trim(const std::string& s);

}  // namespace nmr
