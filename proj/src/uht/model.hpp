#pragma once

#include <json.hpp>

#include "estimate.hpp"
#include "hessian.hpp"
#include "threshold.hpp"

namespace uht {

// A calibrated reference: stationary pair law, transition matrix, long-run
// covariance (PSD-repaired) and the divergence Hessian at the law.
// Immutable; safe to share across threads.
class ReferenceModel {
public:
  // Exact calibration from a known strictly positive Q: pi from a row of
  // P^m0, covariance from the truncated series with the stationarity gate on.
  static ReferenceModel from_transition(const TransitionMatrix& q,
                                        const EstimationConfig& cfg = {});

  // Estimated calibration from a training pair sequence: floored counts for
  // pi-hat, row normalization for Q-hat (or transition counts when
  // q_from_counts is set), truncated series for Lambda-hat.
  static ReferenceModel from_training(const SymbolSequence& training,
                                      const EstimationConfig& cfg = {},
                                      bool q_from_counts = false);

  int states() const { return pi_.states(); }
  const ProbabilityLaw& law() const { return pi_; }
  const TransitionMatrix& transition() const { return q_; }
  const CovarianceMatrix& covariance() const { return lambda_; }
  const Mat& hessian() const { return hessian_; }
  const EstimationConfig& config() const { return cfg_; }
  int64_t training_pairs() const { return training_pairs_; }
  bool low_confidence() const { return low_confidence_; }
  void mark_low_confidence() { low_confidence_ = true; }

  double divergence_of(const SymbolSequence& window) const {
    return divergence(empirical_pl(window), pi_);
  }

  double wc_threshold(int64_t n, int64_t t_samples, double beta, uint64_t seed) const {
    return threshold_wc(sample_wc_statistic(hessian_, lambda_, n, t_samples, seed), beta);
  }

  double mc_threshold(int64_t n, int64_t t_samples, double beta, uint64_t seed,
                      std::vector<std::string>* warnings = nullptr) const {
    return threshold_montecarlo(q_, pi_, n, t_samples, beta, seed, warnings);
  }

  nlohmann::json to_json() const;
  static ReferenceModel from_json(const nlohmann::json& j);

private:
  ReferenceModel(ProbabilityLaw pi, TransitionMatrix q, CovarianceMatrix lambda,
                 EstimationConfig cfg, int64_t training_pairs);

  ProbabilityLaw pi_;
  TransitionMatrix q_;
  CovarianceMatrix lambda_;
  Mat hessian_;
  EstimationConfig cfg_;
  int64_t training_pairs_ = 0;
  bool low_confidence_ = false;
};

}  // namespace uht
