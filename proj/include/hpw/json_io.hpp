#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

namespace hpw {

using Json = nlohmann::ordered_json;

/// Shortest form is not used: every finite double is written with 17
/// significant digits. Non-finite values become the strings "inf", "-inf", "nan".
std::string format_double(double x);

/// Serializes with fixed key order (insertion order) and 17-digit floats.
std::string dump_json(const Json& value, int indent = 2);

/// Double from a JSON number or one of the strings "inf", "-inf", "infinity".
double json_to_double(const Json& value);
Json double_to_json(double x);

void write_text_file(const std::string& path, const std::string& contents);
std::string read_text_file(const std::string& path);

/// CSV with ',' separator and '.' decimal point.
std::string csv_line(const std::vector<std::string>& cells);

/// One value per line; blank lines and a leading non-numeric header are skipped.
std::vector<double> parse_csv_column(const std::string& text);

}  // namespace hpw
