#include "threshold.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace uht {

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : samples_(std::move(samples)) {
  require(!samples_.empty(), errc::invalid_argument, "empirical CDF needs at least one sample");
  std::sort(samples_.begin(), samples_.end());
}

double EmpiricalCdf::quantile(double q) const {
  require(q >= 0.0 && q <= 1.0, errc::invalid_argument, "quantile level outside [0,1]");
  // Nudge before ceil so binary-float noise in q*T cannot bump the rank.
  auto rank = static_cast<int64_t>(std::ceil(q * static_cast<double>(size()) - 1e-9));
  rank = std::clamp<int64_t>(rank, 1, size());
  return samples_[static_cast<size_t>(rank - 1)];
}

std::vector<double> gaussian_quadform_samples(const Mat& hessian, const CovarianceMatrix& lambda,
                                              int64_t t_samples, uint64_t seed) {
  const int d = lambda.dim();
  require(hessian.rows() == d && hessian.cols() == d, errc::invalid_argument,
          "Hessian and covariance have mismatched dimensions");
  require(t_samples >= 100, errc::invalid_argument, "need at least 100 samples");

  Eigen::SelfAdjointEigenSolver<Mat> eig(lambda.m);
  require(eig.info() == Eigen::Success, errc::calibration, "eigendecomposition failed");
  if (eig.eigenvalues().minCoeff() < -1e-10)
    fail(errc::validation, "covariance is not positive semi-definite; run psd_repair first");
  Mat factor = eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();

  Rng rng(seed);
  Vec normals(d);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(t_samples));
  for (int64_t t = 0; t < t_samples; ++t) {
    for (int i = 0; i < d; ++i) normals(i) = rng.normal();
    Vec g = factor * normals;
    out.push_back(g.dot(hessian * g));
  }
  std::sort(out.begin(), out.end());
  return out;
}

EmpiricalCdf sample_wc_statistic(const Mat& hessian, const CovarianceMatrix& lambda, int64_t n,
                                 int64_t t_samples, uint64_t seed) {
  require(n >= 1, errc::invalid_argument, "sample size must be >= 1");
  std::vector<double> samples = gaussian_quadform_samples(hessian, lambda, t_samples, seed);
  double scale = 1.0 / (2.0 * static_cast<double>(n));
  for (double& s : samples) s *= scale;
  return EmpiricalCdf(std::move(samples));
}

double threshold_wc(const EmpiricalCdf& cdf, double beta) {
  require(beta > 0.0 && beta < 1.0, errc::invalid_argument, "beta must lie in (0,1)");
  return cdf.quantile(1.0 - beta);
}

double threshold_sanov(double beta, int64_t n) {
  require(beta > 0.0 && beta < 1.0, errc::invalid_argument, "beta must lie in (0,1)");
  require(n >= 1, errc::invalid_argument, "sample size must be >= 1");
  return -std::log(beta) / static_cast<double>(n);
}

double threshold_montecarlo(const TransitionMatrix& q, const ProbabilityLaw& pi, int64_t n,
                            int64_t t_samples, double beta, uint64_t seed,
                            std::vector<std::string>* warnings) {
  require(beta > 0.0 && beta < 1.0, errc::invalid_argument, "beta must lie in (0,1)");
  require(n >= 1, errc::invalid_argument, "sample size must be >= 1");
  require(t_samples >= 100, errc::invalid_argument, "need at least 100 replicas");
  if (warnings && static_cast<double>(t_samples) * beta < 5.0)
    warnings->push_back("quantile at beta=" + std::to_string(beta) + " rests on fewer than 5 of " +
                        std::to_string(t_samples) + " replicas; consider a larger sample count");

  std::vector<double> divergences;
  divergences.reserve(static_cast<size_t>(t_samples));
  for (int64_t t = 0; t < t_samples; ++t) {
    SymbolSequence z = sample_chain(q, n, derive_seed(seed, static_cast<uint64_t>(t)), pi);
    divergences.push_back(divergence(empirical_pl(z), pi));
  }
  return threshold_wc(EmpiricalCdf(std::move(divergences)), beta);
}

}  // namespace uht
