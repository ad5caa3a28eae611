#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covariance.hpp"
#include "markov.hpp"

namespace uht {

class EmpiricalCdf {
public:
  explicit EmpiricalCdf(std::vector<double> samples);

  int64_t size() const { return static_cast<int64_t>(samples_.size()); }
  double min() const { return samples_.front(); }
  double max() const { return samples_.back(); }
  const std::vector<double>& samples() const { return samples_; }

  // Order statistic at rank ceil(q * T) (1-based), clamped to [1, T]:
  // the lowest sample whose empirical CDF reaches q.
  double quantile(double q) const;

private:
  std::vector<double> samples_;  // ascending
};

// Sorted samples of g'Hg with g ~ N(0, Lambda), drawn through the spectral
// factor of Lambda (zero eigenvalues keep their zero columns; the statistic
// lives on the simplex tangent space, no regularization). Rejects a Lambda
// with eigenvalues below -1e-10: repair it first.
std::vector<double> gaussian_quadform_samples(const Mat& hessian, const CovarianceMatrix& lambda,
                                              int64_t t_samples, uint64_t seed);

// Empirical CDF of the second-order statistic (1/(2n)) g'Hg.
EmpiricalCdf sample_wc_statistic(const Mat& hessian, const CovarianceMatrix& lambda, int64_t n,
                                 int64_t t_samples, uint64_t seed);

// Empirical (1-beta)-quantile of the CDF.
double threshold_wc(const EmpiricalCdf& cdf, double beta);

// -log(beta)/n, the large-deviations calibration.
double threshold_sanov(double beta, int64_t n);

// Ground-truth calibration: simulate t_samples chains of length n from q
// (stationary start), evaluate the divergence of each empirical law against
// pi, and take the empirical (1-beta)-quantile. Appends a warning when
// t_samples*beta < 5 (the quantile then rides on a handful of top samples).
double threshold_montecarlo(const TransitionMatrix& q, const ProbabilityLaw& pi, int64_t n,
                            int64_t t_samples, double beta, uint64_t seed,
                            std::vector<std::string>* warnings = nullptr);

}  // namespace uht
