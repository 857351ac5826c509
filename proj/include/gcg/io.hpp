#pragma once

#include <string>
#include <vector>

namespace gcg {

// Shortest decimal form that round-trips to the same double.
std::string format_double(double x);

// Strict double parse: the whole token must be consumed.  Throws IoError
// with `context` in the message on failure.
double parse_double(const std::string& token, const std::string& context);
long long parse_int(const std::string& token, const std::string& context);

// Splits one CSV line on commas (no quoting; our files never need it) and
// trims surrounding whitespace from each field.
std::vector<std::string> split_csv_line(const std::string& line);

std::string trim(const std::string& s);

// Writes via a temp file in the same directory and renames over the target,
// so readers never observe a half-written file.
void write_atomic(const std::string& path, const std::string& contents);

std::string read_file(const std::string& path);

}  // namespace gcg
