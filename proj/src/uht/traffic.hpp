#pragma once

#include <json.hpp>
#include <optional>

#include "flow.hpp"

namespace uht {

// Synthetic flow generator: per-user Poisson arrivals (optionally
// sinusoidally modulated), log-normal sizes, exponential durations, and
// per-user anomaly intervals that multiply the rate and/or the size.
struct UserSpec {
  std::string address;
  double rate_per_s = 0.0;
};

struct AnomalySpec {
  std::string address;
  double start_s = 0.0;
  double end_s = 0.0;
  double rate_multiplier = 1.0;
  double size_multiplier = 1.0;
};

struct DiurnalSpec {
  double period_s = 0.0;  // 0 disables the modulation
  double amplitude = 0.0; // in [0, 1)
};

struct ScenarioConfig {
  double horizon_s = 0.0;
  std::vector<UserSpec> users;
  double size_log_mean = std::log(5000.0);
  double size_log_sigma = 0.3;
  double duration_rate = 0.5;  // exponential rate, mean 1/rate seconds
  DiurnalSpec diurnal;
  std::vector<AnomalySpec> anomalies;
  uint64_t seed = 1;

  void validate() const;
  static ScenarioConfig from_json(const nlohmann::json& j);
  static ScenarioConfig from_json_text(const std::string& text);
};

// Deterministic per seed; flows sorted by start time. Per-user streams use
// derived seeds, so the output does not depend on generation order.
std::vector<FlowRecord> generate(const ScenarioConfig& cfg);

}  // namespace uht
