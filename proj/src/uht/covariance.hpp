#pragma once

#include <limits>

#include "law.hpp"

namespace uht {

// Long-run covariance of sqrt(n)*(Gamma_n - pi): the lag-0 term plus the
// symmetrized lag-m cross-covariances summed up to a truncation order.
struct CovarianceMatrix {
  Mat m;
  int dim() const { return static_cast<int>(m.rows()); }
  int lags_used = 0;          // last lag actually accumulated
  bool psd_repaired = false;  // set when spectral clamping changed anything
  double repair_distance = 0.0;
  double stationarity_residual = 0.0;
};

// Lambda_ij = pi_i (I_ij - pi_j) + sum_{m=1}^{m0} [pi_i (P^m_ij - pi_j)
//                                                + pi_j (P^m_ji - pi_i)],
// accumulated by iterated multiplication with early termination once
// max_ij |P^m_ij - pi_j| < 1e-12 (the tail is then below N^2 * 1e-12), and
// symmetrized as (L + L')/2. Rejects a pi whose stationarity residual for p
// exceeds stationarity_tol; pass +inf to skip the gate (estimated inputs).
CovarianceMatrix covariance_lambda(const ProbabilityLaw& pi, const TransitionMatrix& p, int m0,
                                   double stationarity_tol = 1e-6);

// Nearest-PSD projection for symmetric input: spectral decomposition with
// negative eigenvalues clamped to zero. Identity on matrices already PSD.
CovarianceMatrix psd_repair(const CovarianceMatrix& lambda);

}  // namespace uht
