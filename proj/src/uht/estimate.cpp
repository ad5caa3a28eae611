#include "estimate.hpp"

#include <limits>

namespace uht {

ProbabilityLaw estimate_pi(const SymbolSequence& training, const EstimationConfig& cfg) {
  require(!training.symbols.empty(), errc::validation, "empty training sequence");
  require(cfg.epsilon > 0.0, errc::invalid_argument, "epsilon must be positive");
  Alphabet a(training.n_states);
  Vec counts = Vec::Zero(a.pairs());
  for (int32_t s : training.symbols) {
    require(s >= 0 && s < a.pairs(), errc::validation, "training symbol out of range");
    counts(s) += 1.0;
  }
  counts /= static_cast<double>(training.symbols.size());
  Vec floored = counts.cwiseMax(cfg.epsilon);
  floored /= floored.sum();
  return ProbabilityLaw(std::move(floored), training.n_states);
}

TransitionMatrix estimate_q(const ProbabilityLaw& pi_hat) {
  require(pi_hat.full_support(), errc::support_violation,
          "transition estimation needs a full-support law");
  const int n = pi_hat.states();
  Mat q(n, n);
  for (int i = 0; i < n; ++i) {
    double rs = pi_hat.row_sum(i);
    for (int j = 0; j < n; ++j) q(i, j) = pi_hat.at(i, j) / rs;
  }
  return TransitionMatrix(std::move(q), "estimated transition matrix");
}

TransitionMatrix estimate_q_from_counts(const SymbolSequence& training) {
  require(!training.symbols.empty(), errc::validation, "empty training sequence");
  Alphabet a(training.n_states);
  const int n = a.states();
  Mat counts = Mat::Zero(n, n);
  for (int32_t s : training.symbols) counts(a.first(s), a.second(s)) += 1.0;
  for (int i = 0; i < n; ++i) {
    double rs = counts.row(i).sum();
    if (rs > 0.0)
      counts.row(i) /= rs;
    else
      counts.row(i).setConstant(1.0 / n);
  }
  return TransitionMatrix(std::move(counts), "count-estimated transition matrix");
}

CovarianceMatrix estimate_lambda(const ProbabilityLaw& pi_hat, const TransitionMatrix& p_hat,
                                 const EstimationConfig& cfg) {
  CovarianceMatrix lambda = covariance_lambda(pi_hat, p_hat, cfg.m0,
                                              std::numeric_limits<double>::infinity());
  return psd_repair(lambda);
}

}  // namespace uht
