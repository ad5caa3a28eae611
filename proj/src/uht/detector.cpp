#include "detector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include "io.hpp"

namespace uht {

ThresholdMethod threshold_method_from_name(const std::string& name) {
  if (name == "wc") return ThresholdMethod::wc;
  if (name == "sanov") return ThresholdMethod::sanov;
  if (name == "fixed") return ThresholdMethod::fixed;
  fail(errc::invalid_argument, "unknown threshold method '" + name + "' (wc|sanov|fixed)");
}

std::string threshold_method_name(ThresholdMethod m) {
  switch (m) {
    case ThresholdMethod::wc: return "wc";
    case ThresholdMethod::sanov: return "sanov";
    case ThresholdMethod::fixed: return "fixed";
  }
  return "wc";
}

void DetectionConfig::validate() const {
  require(window_s > 0.0, errc::validation, "window size must be positive");
  require(stride_s > 0.0, errc::validation, "stride must be positive");
  require(stride_s <= window_s, errc::validation,
          "stride must not exceed the window size (coverage)");
  require(beta > 0.0 && beta < 1.0, errc::validation, "beta must lie in (0,1)");
  require(cdf_samples >= 100, errc::validation, "cdf_samples must be >= 100");
}

nlohmann::json DetectionConfig::to_json() const {
  return nlohmann::json{{"window_s", window_s},
                        {"stride_s", stride_s},
                        {"beta", beta},
                        {"method", threshold_method_name(method)},
                        {"fixed_threshold", fixed_threshold},
                        {"cdf_samples", cdf_samples},
                        {"seed", seed}};
}

DetectionConfig DetectionConfig::from_json(const nlohmann::json& j) {
  DetectionConfig cfg;
  cfg.window_s = j.value("window_s", cfg.window_s);
  cfg.stride_s = j.value("stride_s", cfg.stride_s);
  cfg.beta = j.value("beta", cfg.beta);
  if (j.contains("method")) cfg.method = threshold_method_from_name(j.at("method"));
  cfg.fixed_threshold = j.value("fixed_threshold", cfg.fixed_threshold);
  cfg.cdf_samples = j.value("cdf_samples", cfg.cdf_samples);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.validate();
  return cfg;
}

std::vector<WindowReport> detect(const std::vector<FlowRecord>& flows, const QuantizerSpec& spec,
                                 const std::vector<ReferenceModel>& pls,
                                 const DetectionConfig& cfg) {
  cfg.validate();
  require(!flows.empty(), errc::validation, "empty traffic stream");
  require(!pls.empty(), errc::validation, "need at least one reference PL");
  for (const ReferenceModel& pl : pls)
    require(pl.states() == spec.alphabet_size(), errc::validation,
            "reference PL alphabet (" + std::to_string(pl.states()) +
                ") does not match the quantizer alphabet (" +
                std::to_string(spec.alphabet_size()) + ")");

  // One set of quadratic-form samples per PL; thresholds for any window
  // length come from the 1/(2n) rescaling of the same quantile.
  std::vector<double> wc_quantiles(pls.size(), 0.0);
  if (cfg.method == ThresholdMethod::wc) {
    for (size_t p = 0; p < pls.size(); ++p) {
      EmpiricalCdf cdf(gaussian_quadform_samples(pls[p].hessian(), pls[p].covariance(),
                                                 cfg.cdf_samples,
                                                 derive_seed(cfg.seed, 7000 + p)));
      wc_quantiles[p] = threshold_wc(cdf, cfg.beta);
    }
  }
  auto threshold_for = [&](size_t pl, int64_t n) {
    switch (cfg.method) {
      case ThresholdMethod::wc: return wc_quantiles[pl] / (2.0 * static_cast<double>(n));
      case ThresholdMethod::sanov: return threshold_sanov(cfg.beta, n);
      case ThresholdMethod::fixed: return cfg.fixed_threshold;
    }
    return cfg.fixed_threshold;
  };

  // Flows arrive sorted; windows start on the stride grid at or below the
  // first flow and end on the last grid point covering the final flow.
  double t_first = flows.front().start_time;
  double t_last = flows.back().start_time;
  auto origin_index = static_cast<int64_t>(std::floor(t_first / cfg.stride_s));
  auto last_index = static_cast<int64_t>(std::floor(t_last / cfg.stride_s));

  std::vector<WindowReport> reports;
  reports.reserve(static_cast<size_t>(last_index - origin_index + 1));
  size_t lo = 0;
  for (int64_t wi = origin_index; wi <= last_index; ++wi) {
    WindowReport rep;
    rep.window_start = static_cast<double>(wi) * cfg.stride_s;
    rep.window_end = rep.window_start + cfg.window_s;

    while (lo < flows.size() && flows[lo].start_time < rep.window_start) ++lo;
    size_t hi = lo;
    while (hi < flows.size() && flows[hi].start_time < rep.window_end) ++hi;
    rep.n_flows = static_cast<int64_t>(hi - lo);

    if (rep.n_flows < 2) {
      rep.insufficient = true;
      rep.threshold = std::numeric_limits<double>::infinity();
      reports.push_back(rep);
      continue;
    }

    std::vector<FlowRecord> window(flows.begin() + static_cast<int64_t>(lo),
                                   flows.begin() + static_cast<int64_t>(hi));
    SymbolSequence z = quantize(window, spec);
    rep.n_pairs = z.length();

    rep.best_pl = 0;
    rep.divergence = pls[0].divergence_of(z);
    for (size_t p = 1; p < pls.size(); ++p) {
      double d = pls[p].divergence_of(z);
      if (d < rep.divergence) {
        rep.divergence = d;
        rep.best_pl = static_cast<int>(p);
      }
    }
    rep.threshold = threshold_for(static_cast<size_t>(rep.best_pl), rep.n_pairs);
    rep.is_anomaly = hoeffding_decide(rep.divergence, rep.threshold);
    reports.push_back(rep);
  }
  return reports;
}

std::vector<ReferenceModel> calibrate_from_reference(
    const std::vector<FlowRecord>& reference, const QuantizerSpec& spec,
    const EstimationConfig& est,
    const std::optional<std::vector<std::pair<double, double>>>& segments,
    std::vector<std::string>* warnings) {
  require(!reference.empty(), errc::validation, "empty reference traffic");

  std::vector<std::vector<FlowRecord>> groups;
  if (segments) {
    require(!segments->empty(), errc::validation, "segment list must not be empty");
    for (auto [start, end] : *segments) {
      require(end > start, errc::validation, "segment end must exceed its start");
      std::vector<FlowRecord> seg;
      for (const FlowRecord& f : reference)
        if (f.start_time >= start && f.start_time < end) seg.push_back(f);
      groups.push_back(std::move(seg));
    }
  } else {
    groups.push_back(reference);
  }

  std::vector<ReferenceModel> pls;
  pls.reserve(groups.size());
  for (size_t g = 0; g < groups.size(); ++g) {
    SymbolSequence z = quantize(groups[g], spec);
    require(z.length() >= 1, errc::validation,
            "segment " + std::to_string(g + 1) + " has fewer than 2 flows; cannot estimate");
    ReferenceModel pl = ReferenceModel::from_training(z, est);
    if (z.length() < 100) {
      pl.mark_low_confidence();
      if (warnings)
        warnings->push_back("segment " + std::to_string(g + 1) + " has only " +
                            std::to_string(z.length()) +
                            " pairs; PL flagged low-confidence");
    }
    pls.push_back(std::move(pl));
  }
  return pls;
}

std::string pl_file_to_json(const std::vector<ReferenceModel>& pls,
                            const QuantizerSpec* quantizer) {
  nlohmann::json j;
  j["schema_version"] = 1;
  if (quantizer) j["quantizer"] = quantizer->to_json();
  nlohmann::json arr = nlohmann::json::array();
  for (const ReferenceModel& pl : pls) arr.push_back(pl.to_json());
  j["pls"] = std::move(arr);
  return j.dump(2) + "\n";
}

std::pair<std::vector<ReferenceModel>, std::optional<QuantizerSpec>> pl_file_from_json(
    const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  require(j.value("schema_version", 0) == 1, errc::io,
          "unsupported PL file schema version");
  std::vector<ReferenceModel> pls;
  for (const auto& item : j.at("pls")) pls.push_back(ReferenceModel::from_json(item));
  require(!pls.empty(), errc::io, "PL file holds no PLs");
  std::optional<QuantizerSpec> spec;
  if (j.contains("quantizer") && !j.at("quantizer").is_null())
    spec = QuantizerSpec::from_json(j.at("quantizer"));
  return {std::move(pls), std::move(spec)};
}

std::string reports_to_jsonl(const std::vector<WindowReport>& reports) {
  std::string out;
  for (const WindowReport& r : reports) {
    nlohmann::json j{{"window_start", r.window_start},
                     {"window_end", r.window_end},
                     {"n_flows", r.n_flows},
                     {"n_pairs", r.n_pairs},
                     {"status", r.insufficient ? "insufficient_data" : "ok"},
                     {"is_anomaly", r.is_anomaly}};
    if (!r.insufficient) {
      j["divergence"] = r.divergence;
      j["threshold"] = r.threshold;
      j["best_pl"] = r.best_pl;
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string reports_to_csv(const std::vector<WindowReport>& reports) {
  std::string out = "window_start,divergence,threshold,is_anomaly\n";
  for (const WindowReport& r : reports) {
    out += format_double(r.window_start);
    out += ',';
    out += format_double(r.divergence);
    out += ',';
    out += r.insufficient ? "inf" : format_double(r.threshold);
    out += ',';
    out += r.is_anomaly ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace uht
