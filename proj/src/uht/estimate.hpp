#pragma once

#include "covariance.hpp"
#include "markov.hpp"

namespace uht {

struct EstimationConfig {
  double epsilon = 1e-8;  // law floor
  int m0 = 1000;          // covariance series truncation
  int64_t n0 = 0;         // training-length hint; 0 -> 1000 * N^2

  int64_t training_hint(int n_states) const {
    return n0 > 0 ? n0 : 1000LL * n_states * n_states;
  }
};

// pi_hat_k = max(count_k / n0, epsilon), normalized. Full support guaranteed.
ProbabilityLaw estimate_pi(const SymbolSequence& training, const EstimationConfig& cfg);

// q_hat_ij = pi_hat_ij / sum_t pi_hat_it. The default estimator; works for
// any full-support law, no stationarity balance required.
TransitionMatrix estimate_q(const ProbabilityLaw& pi_hat);

// Alternative, non-default estimator straight from observed transitions
// (each pair symbol is one transition of the original chain). Rows never
// visited fall back to uniform.
TransitionMatrix estimate_q_from_counts(const SymbolSequence& training);

// Truncated covariance series on estimated inputs, symmetrized and
// PSD-repaired. No stationarity gate: an estimated law is only
// approximately stationary for the matrix lifted from it.
CovarianceMatrix estimate_lambda(const ProbabilityLaw& pi_hat, const TransitionMatrix& p_hat,
                                 const EstimationConfig& cfg);

}  // namespace uht
