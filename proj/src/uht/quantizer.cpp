#include "quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rng.hpp"

namespace uht {

int FeatureBins::bin(double x) const {
  if (levels <= 1 || hi <= lo) return 0;
  double t = (x - lo) / (hi - lo) * levels;
  auto b = static_cast<int>(std::floor(t));
  return std::clamp(b, 0, levels - 1);
}

namespace {

int nearest_center(const std::vector<double>& centers, double point) {
  int best = 0;
  double best_d = std::abs(point - centers[0]);
  for (size_t c = 1; c < centers.size(); ++c) {
    double d = std::abs(point - centers[c]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<int>(c);
    }
  }
  return best;
}

// 1-D k-means with k-means++ seeding and a deterministic empty-cluster
// rescue (center jumps to the farthest point).
std::vector<double> kmeans_1d(const std::vector<double>& points, int k, uint64_t seed) {
  Rng rng(seed);
  std::vector<double> centers;
  centers.reserve(static_cast<size_t>(k));
  centers.push_back(points[static_cast<size_t>(rng.uniform01() * points.size())]);
  std::vector<double> d2(points.size());
  while (static_cast<int>(centers.size()) < k) {
    double total = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
      double d = std::abs(points[i] - centers[nearest_center(centers, points[i])]);
      d2[i] = d * d;
      total += d2[i];
    }
    if (total <= 0.0) {  // all remaining points coincide with centers
      centers.push_back(points[centers.size() % points.size()]);
      continue;
    }
    double target = rng.uniform01() * total;
    size_t chosen = points.size() - 1;
    double cum = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
      cum += d2[i];
      if (target < cum) {
        chosen = i;
        break;
      }
    }
    centers.push_back(points[chosen]);
  }

  std::vector<int> assign(points.size(), -1);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (size_t i = 0; i < points.size(); ++i) {
      int c = nearest_center(centers, points[i]);
      if (c != assign[i]) {
        assign[i] = c;
        changed = true;
      }
    }
    if (!changed) break;
    for (int c = 0; c < k; ++c) {
      double sum = 0.0;
      int count = 0;
      for (size_t i = 0; i < points.size(); ++i)
        if (assign[i] == c) {
          sum += points[i];
          ++count;
        }
      if (count > 0) {
        centers[static_cast<size_t>(c)] = sum / count;
      } else {
        size_t far = 0;
        double far_d = -1.0;
        for (size_t i = 0; i < points.size(); ++i) {
          double d = std::abs(points[i] - centers[static_cast<size_t>(assign[i])]);
          if (d > far_d) {
            far_d = d;
            far = i;
          }
        }
        centers[static_cast<size_t>(c)] = points[far];
      }
    }
  }
  std::sort(centers.begin(), centers.end());
  return centers;
}

FeatureBins bins_over(const std::vector<double>& values, int levels) {
  FeatureBins b;
  b.levels = levels;
  b.lo = *std::min_element(values.begin(), values.end());
  b.hi = *std::max_element(values.begin(), values.end());
  return b;
}

}  // namespace

int QuantizerSpec::symbol(const FlowRecord& flow) const {
  double point = source_point(flow.src);
  int c = nearest_center(centers, point);
  double dist = std::abs(point - centers[static_cast<size_t>(c)]);
  int idx = duration.bin(flow.duration);
  idx = idx * levels[1] + size.bin(flow.size);
  idx = idx * levels[2] + distance.bin(dist);
  idx = idx * cluster_count + c;
  return idx;
}

QuantizerSpec build_quantizer(const std::vector<FlowRecord>& training,
                              std::array<int, 3> levels, int k, uint64_t seed) {
  require(!training.empty(), errc::validation, "quantizer needs training flows");
  for (int l : levels) require(l >= 1, errc::validation, "quantization levels must be >= 1");
  require(k >= 1, errc::validation, "cluster count must be >= 1");

  QuantizerSpec spec;
  spec.levels = levels;

  std::vector<double> points;
  points.reserve(training.size());
  for (const FlowRecord& f : training) points.push_back(source_point(f.src));
  std::vector<double> distinct = points;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  if (k > static_cast<int>(distinct.size())) {
    spec.warnings.push_back("cluster count " + std::to_string(k) + " exceeds the " +
                            std::to_string(distinct.size()) +
                            " distinct sources; reduced to match");
    k = static_cast<int>(distinct.size());
  }
  spec.cluster_count = k;
  spec.centers = kmeans_1d(distinct, k, seed);

  require(spec.alphabet_size() >= 2, errc::validation,
          "degenerate alphabet of size 1; raise a quantization level or the cluster count");

  std::vector<double> durations, sizes, distances;
  durations.reserve(training.size());
  sizes.reserve(training.size());
  distances.reserve(training.size());
  for (size_t i = 0; i < training.size(); ++i) {
    durations.push_back(training[i].duration);
    sizes.push_back(training[i].size);
    int c = nearest_center(spec.centers, points[i]);
    distances.push_back(std::abs(points[i] - spec.centers[static_cast<size_t>(c)]));
  }
  spec.duration = bins_over(durations, levels[0]);
  spec.size = bins_over(sizes, levels[1]);
  spec.distance = bins_over(distances, levels[2]);
  return spec;
}

std::vector<int> quantize_symbols(const std::vector<FlowRecord>& flows,
                                  const QuantizerSpec& spec) {
  std::vector<int> symbols;
  symbols.reserve(flows.size());
  for (const FlowRecord& f : flows) symbols.push_back(spec.symbol(f));
  return symbols;
}

SymbolSequence quantize(const std::vector<FlowRecord>& flows, const QuantizerSpec& spec) {
  Alphabet a(spec.alphabet_size());
  std::vector<int> symbols = quantize_symbols(flows, spec);
  SymbolSequence z;
  z.n_states = a.states();
  if (symbols.size() >= 2) {
    z.symbols.reserve(symbols.size() - 1);
    for (size_t i = 1; i < symbols.size(); ++i)
      z.symbols.push_back(static_cast<int32_t>(a.flat(symbols[i - 1], symbols[i])));
  }
  return z;
}

nlohmann::json QuantizerSpec::to_json() const {
  auto bins_json = [](const FeatureBins& b) {
    return nlohmann::json{{"lo", b.lo}, {"hi", b.hi}, {"levels", b.levels}};
  };
  return nlohmann::json{{"levels", levels},
                        {"cluster_count", cluster_count},
                        {"cluster_centers", centers},
                        {"duration", bins_json(duration)},
                        {"size", bins_json(size)},
                        {"distance", bins_json(distance)},
                        {"alphabet_size", alphabet_size()}};
}

QuantizerSpec QuantizerSpec::from_json(const nlohmann::json& j) {
  QuantizerSpec spec;
  auto levels = j.at("levels").get<std::vector<int>>();
  require(levels.size() == 3, errc::io, "quantizer levels must have 3 entries");
  spec.levels = {levels[0], levels[1], levels[2]};
  spec.cluster_count = j.at("cluster_count").get<int>();
  spec.centers = j.at("cluster_centers").get<std::vector<double>>();
  require(static_cast<int>(spec.centers.size()) == spec.cluster_count, errc::io,
          "quantizer center count mismatch");
  auto bins_from = [](const nlohmann::json& b) {
    FeatureBins out;
    out.lo = b.at("lo").get<double>();
    out.hi = b.at("hi").get<double>();
    out.levels = b.at("levels").get<int>();
    return out;
  };
  spec.duration = bins_from(j.at("duration"));
  spec.size = bins_from(j.at("size"));
  spec.distance = bins_from(j.at("distance"));
  require(spec.alphabet_size() >= 2, errc::io, "stored quantizer has a degenerate alphabet");
  return spec;
}

}  // namespace uht
