#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace uht {

// Shortest decimal form that parses back to the same double.
std::string format_double(double v);

double parse_double(std::string_view s, const std::string& context);
long long parse_int(std::string_view s, const std::string& context);

std::string read_text(const std::string& path);

// Write via a sibling temp file and rename, so readers never see a partial
// file.
void write_text_atomic(const std::string& path, const std::string& content);

std::vector<std::string_view> split_fields(std::string_view line, char sep = ',');

// Iterate lines, tolerating trailing \r and a missing final newline.
std::vector<std::string_view> split_lines(std::string_view text);

}  // namespace uht
