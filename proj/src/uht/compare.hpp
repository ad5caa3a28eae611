#pragma once

#include <string>
#include <vector>

#include "model.hpp"

namespace uht {

struct ThresholdCurvePoint {
  int64_t n = 0;
  double eta_sv = 0.0;
  double eta_wc = 0.0;
  double eta_mc = 0.0;
  bool has_mc = false;
};

struct ThresholdCurve {
  double beta = 0.0;
  int64_t t_samples = 0;
  uint64_t seed = 0;
  std::vector<ThresholdCurvePoint> points;
  std::vector<std::string> warnings;
};

struct CompareConfig {
  int n_states = 12;
  double beta = 0.001;
  int64_t t_samples = 1000;
  int m0 = 1000;
  double epsilon = 1e-8;
  int64_t n0 = 0;  // 0 -> 1000 * N^2
  std::vector<int64_t> n_grid;
  uint64_t seed = 1;
  bool with_mc = true;

  void validate() const;
};

CompareConfig compare_config_from_json(const std::string& text);

// Calibration-method comparison on a seeded random strictly positive Q:
//  - eta_sv from the closed form,
//  - eta_wc from estimated parameters (training sample of length n0),
//  - eta_mc as ground truth from chains simulated with the true parameters,
//    regenerated per grid point.
ThresholdCurve threshold_compare(const CompareConfig& cfg);

std::string curve_to_csv(const ThresholdCurve& curve);

// Per-method max/mean relative error against eta_mc, one line per method.
std::string curve_summary(const ThresholdCurve& curve);

}  // namespace uht
