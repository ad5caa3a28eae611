#include "flow.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

#include "io.hpp"

namespace uht {

std::vector<FlowRecord> flows_from_csv(const std::string& text) {
  auto lines = split_lines(text);
  require(!lines.empty(), errc::io, "empty flow file");
  require(lines.front() == "start_time,duration,size,src", errc::io,
          "flow file must start with header 'start_time,duration,size,src'");
  std::vector<FlowRecord> flows;
  flows.reserve(lines.size() - 1);
  for (size_t li = 1; li < lines.size(); ++li) {
    if (lines[li].empty()) continue;
    auto fields = split_fields(lines[li]);
    require(fields.size() == 4, errc::io,
            "flow line " + std::to_string(li + 1) + " has " + std::to_string(fields.size()) +
                " fields, expected 4");
    FlowRecord f;
    f.start_time = parse_double(fields[0], "start_time");
    f.duration = parse_double(fields[1], "duration");
    f.size = parse_double(fields[2], "size");
    f.src = std::string(fields[3]);
    require(f.duration >= 0.0, errc::validation,
            "negative duration at line " + std::to_string(li + 1));
    require(f.size >= 0.0, errc::validation, "negative size at line " + std::to_string(li + 1));
    flows.push_back(std::move(f));
  }
  std::stable_sort(flows.begin(), flows.end(),
                   [](const FlowRecord& a, const FlowRecord& b) {
                     return a.start_time < b.start_time;
                   });
  return flows;
}

std::string flows_to_csv(const std::vector<FlowRecord>& flows) {
  std::ostringstream out;
  out << "start_time,duration,size,src\n";
  for (const FlowRecord& f : flows)
    out << format_double(f.start_time) << ',' << format_double(f.duration) << ','
        << format_double(f.size) << ',' << f.src << '\n';
  return out.str();
}

namespace {

bool parse_dotted_quad(const std::string& src, uint32_t& out) {
  uint32_t value = 0;
  int octets = 0;
  size_t pos = 0;
  while (pos <= src.size() && octets < 4) {
    size_t dot = src.find('.', pos);
    if (dot == std::string::npos) dot = src.size();
    if (dot == pos || dot - pos > 3) return false;
    uint32_t octet = 0;
    for (size_t i = pos; i < dot; ++i) {
      if (src[i] < '0' || src[i] > '9') return false;
      octet = octet * 10 + static_cast<uint32_t>(src[i] - '0');
    }
    if (octet > 255) return false;
    value = (value << 8) | octet;
    ++octets;
    pos = dot + 1;
  }
  if (octets != 4 || pos != src.size() + 1) return false;
  out = value;
  return true;
}

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

double source_point(const std::string& src) {
  uint32_t quad = 0;
  if (parse_dotted_quad(src, quad)) return static_cast<double>(quad) * 0x1.0p-32;
  return static_cast<double>(fnv1a(src) >> 32) * 0x1.0p-32;
}

}  // namespace uht
