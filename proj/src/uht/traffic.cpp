#include "traffic.hpp"

#include <algorithm>
#include <cmath>

#include "rng.hpp"

namespace uht {

void ScenarioConfig::validate() const {
  require(horizon_s > 0.0, errc::validation, "horizon must be positive");
  require(!users.empty(), errc::validation, "scenario needs at least one user");
  for (const UserSpec& u : users) {
    require(!u.address.empty(), errc::validation, "user address must not be empty");
    require(u.rate_per_s > 0.0, errc::validation,
            "user " + u.address + " needs a positive arrival rate");
  }
  require(size_log_sigma >= 0.0, errc::validation, "size log-sigma must be >= 0");
  require(duration_rate > 0.0, errc::validation, "duration rate must be positive");
  require(diurnal.amplitude >= 0.0 && diurnal.amplitude < 1.0, errc::validation,
          "diurnal amplitude must lie in [0,1)");
  if (diurnal.amplitude > 0.0)
    require(diurnal.period_s > 0.0, errc::validation, "diurnal modulation needs a period");
  for (const AnomalySpec& a : anomalies) {
    require(a.end_s > a.start_s, errc::validation, "anomaly interval is empty");
    require(a.start_s >= 0.0 && a.end_s <= horizon_s, errc::validation,
            "anomaly interval must lie inside the horizon");
    require(a.rate_multiplier > 0.0 && a.size_multiplier > 0.0, errc::validation,
            "anomaly multipliers must be positive");
    bool known = false;
    for (const UserSpec& u : users) known = known || u.address == a.address;
    require(known, errc::validation, "anomaly user " + a.address + " is not in the user set");
  }
}

ScenarioConfig ScenarioConfig::from_json(const nlohmann::json& j) {
  ScenarioConfig cfg;
  cfg.horizon_s = j.at("horizon_s").get<double>();
  for (const auto& u : j.at("users"))
    cfg.users.push_back({u.at("address").get<std::string>(), u.at("rate_per_s").get<double>()});
  if (j.contains("flow_size")) {
    cfg.size_log_mean = j.at("flow_size").value("log_mean", cfg.size_log_mean);
    cfg.size_log_sigma = j.at("flow_size").value("log_sigma", cfg.size_log_sigma);
  }
  if (j.contains("flow_duration"))
    cfg.duration_rate = j.at("flow_duration").value("exp_rate", cfg.duration_rate);
  if (j.contains("diurnal") && !j.at("diurnal").is_null()) {
    cfg.diurnal.period_s = j.at("diurnal").value("period_s", 0.0);
    cfg.diurnal.amplitude = j.at("diurnal").value("amplitude", 0.0);
  }
  if (j.contains("anomalies")) {
    for (const auto& a : j.at("anomalies")) {
      AnomalySpec spec;
      spec.address = a.at("address").get<std::string>();
      spec.start_s = a.at("start_s").get<double>();
      spec.end_s = a.at("end_s").get<double>();
      spec.rate_multiplier = a.value("rate_multiplier", 1.0);
      spec.size_multiplier = a.value("size_multiplier", 1.0);
      cfg.anomalies.push_back(std::move(spec));
    }
  }
  cfg.seed = j.value("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

ScenarioConfig ScenarioConfig::from_json_text(const std::string& text) {
  return from_json(nlohmann::json::parse(text, nullptr, true, /*ignore_comments=*/true));
}

std::vector<FlowRecord> generate(const ScenarioConfig& cfg) {
  cfg.validate();
  std::vector<FlowRecord> flows;

  for (size_t ui = 0; ui < cfg.users.size(); ++ui) {
    const UserSpec& user = cfg.users[ui];
    Rng rng(derive_seed(cfg.seed, ui));

    double max_rate_mult = 1.0;
    for (const AnomalySpec& a : cfg.anomalies)
      if (a.address == user.address) max_rate_mult = std::max(max_rate_mult, a.rate_multiplier);

    auto rate_at = [&](double t) {
      double rate = user.rate_per_s;
      if (cfg.diurnal.amplitude > 0.0)
        rate *= 1.0 + cfg.diurnal.amplitude * std::sin(2.0 * M_PI * t / cfg.diurnal.period_s);
      for (const AnomalySpec& a : cfg.anomalies)
        if (a.address == user.address && t >= a.start_s && t < a.end_s)
          rate *= a.rate_multiplier;
      return rate;
    };
    auto size_mult_at = [&](double t) {
      double mult = 1.0;
      for (const AnomalySpec& a : cfg.anomalies)
        if (a.address == user.address && t >= a.start_s && t < a.end_s)
          mult *= a.size_multiplier;
      return mult;
    };

    // Thinned Poisson process at the user's peak rate.
    double peak = user.rate_per_s * (1.0 + cfg.diurnal.amplitude) * max_rate_mult;
    double t = 0.0;
    while (true) {
      t += rng.exponential(peak);
      if (t >= cfg.horizon_s) break;
      if (rng.uniform01() * peak >= rate_at(t)) continue;
      FlowRecord f;
      f.start_time = t;
      f.duration = rng.exponential(cfg.duration_rate);
      f.size = rng.log_normal(cfg.size_log_mean, cfg.size_log_sigma) * size_mult_at(t);
      f.src = user.address;
      flows.push_back(std::move(f));
    }
  }

  std::stable_sort(flows.begin(), flows.end(), [](const FlowRecord& a, const FlowRecord& b) {
    if (a.start_time != b.start_time) return a.start_time < b.start_time;
    return a.src < b.src;
  });
  return flows;
}

}  // namespace uht
