#pragma once

#include <optional>

#include "model.hpp"
#include "quantizer.hpp"

namespace uht {

enum class ThresholdMethod { wc, sanov, fixed };

ThresholdMethod threshold_method_from_name(const std::string& name);
std::string threshold_method_name(ThresholdMethod m);

struct DetectionConfig {
  double window_s = 400.0;
  double stride_s = 50.0;
  double beta = 0.001;
  ThresholdMethod method = ThresholdMethod::wc;
  double fixed_threshold = 0.0;   // used by ThresholdMethod::fixed
  int64_t cdf_samples = 10000;    // Gaussian draws behind each wc threshold
  uint64_t seed = 1;

  void validate() const;
  nlohmann::json to_json() const;
  static DetectionConfig from_json(const nlohmann::json& j);
};

struct WindowReport {
  double window_start = 0.0;
  double window_end = 0.0;
  int64_t n_flows = 0;
  int64_t n_pairs = 0;  // the statistic's own sample size
  double divergence = 0.0;
  int best_pl = -1;
  double threshold = 0.0;
  bool is_anomaly = false;
  bool insufficient = false;  // fewer than 2 flows; never an anomaly
};

// Sliding-window generalized Hoeffding test. Windows start at multiples of
// the stride from the first flow's stride-aligned origin; each window is
// quantized on its own, scored against every reference PL, and the PL with
// the smallest divergence sets both the reported divergence and the
// threshold for the window's own pair count.
std::vector<WindowReport> detect(const std::vector<FlowRecord>& flows, const QuantizerSpec& spec,
                                 const std::vector<ReferenceModel>& pls,
                                 const DetectionConfig& cfg);

// Quantize reference traffic and estimate one PL per segment ([start, end)
// time intervals), or a single PL over the whole stream when segments is
// unset. Segments shorter than 100 pairs are flagged low-confidence.
std::vector<ReferenceModel> calibrate_from_reference(
    const std::vector<FlowRecord>& reference, const QuantizerSpec& spec,
    const EstimationConfig& est,
    const std::optional<std::vector<std::pair<double, double>>>& segments = std::nullopt,
    std::vector<std::string>* warnings = nullptr);

// PL file: versioned JSON bundle of reference PLs plus (optionally) the
// quantizer that produced their alphabet.
std::string pl_file_to_json(const std::vector<ReferenceModel>& pls,
                            const QuantizerSpec* quantizer);
std::pair<std::vector<ReferenceModel>, std::optional<QuantizerSpec>> pl_file_from_json(
    const std::string& text);

std::string reports_to_jsonl(const std::vector<WindowReport>& reports);
std::string reports_to_csv(const std::vector<WindowReport>& reports);

}  // namespace uht
