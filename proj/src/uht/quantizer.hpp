#pragma once

#include <array>
#include <json.hpp>

#include "flow.hpp"
#include "markov.hpp"

namespace uht {

// Equal-width binning over the observed training range; out-of-range values
// clamp to the edge bins.
struct FeatureBins {
  double lo = 0.0;
  double hi = 0.0;
  int levels = 1;

  int bin(double x) const;
};

// Flow -> symbol map: per-feature equal-width bins for duration, size and
// distance-to-cluster-center, plus a k-means clustering of the embedded
// source addresses. Symbol = mixed radix over (duration bin, size bin,
// distance bin, cluster), alphabet size N = n1*n2*n3*k.
struct QuantizerSpec {
  std::array<int, 3> levels = {1, 1, 1};
  int cluster_count = 1;
  std::vector<double> centers;  // ascending
  FeatureBins duration, size, distance;
  std::vector<std::string> warnings;

  int alphabet_size() const {
    return levels[0] * levels[1] * levels[2] * cluster_count;
  }

  int symbol(const FlowRecord& flow) const;

  nlohmann::json to_json() const;
  static QuantizerSpec from_json(const nlohmann::json& j);
};

QuantizerSpec build_quantizer(const std::vector<FlowRecord>& training,
                              std::array<int, 3> levels, int k, uint64_t seed);

// Per-flow symbols over the original alphabet.
std::vector<int> quantize_symbols(const std::vector<FlowRecord>& flows,
                                  const QuantizerSpec& spec);

// Consecutive flows paired into the lifted alphabet; m flows yield m-1
// symbols, fewer than 2 flows yield none.
SymbolSequence quantize(const std::vector<FlowRecord>& flows, const QuantizerSpec& spec);

}  // namespace uht
