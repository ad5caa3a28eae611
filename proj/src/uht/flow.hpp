#pragma once

#include <string>
#include <vector>

#include "error.hpp"

namespace uht {

struct FlowRecord {
  double start_time = 0.0;  // seconds
  double duration = 0.0;    // seconds
  double size = 0.0;        // bytes
  std::string src;          // dotted quad or opaque token

  bool operator==(const FlowRecord&) const = default;
};

// CSV with header "start_time,duration,size,src". Records come back sorted
// by start_time regardless of file order.
std::vector<FlowRecord> flows_from_csv(const std::string& text);
std::string flows_to_csv(const std::vector<FlowRecord>& flows);

// Source address embedded into [0, 1): dotted quads octet-weighted
// (a.b.c.d -> (((a*256+b)*256+c)*256+d) / 2^32), anything else via a 64-bit
// FNV-1a hash. A stand-in for a real coordinate space.
double source_point(const std::string& src);

}  // namespace uht
