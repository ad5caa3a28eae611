#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "uht/compare.hpp"
#include "uht/covariance.hpp"
#include "uht/hessian.hpp"
#include "uht/markov.hpp"
#include "uht/model.hpp"
#include "uht/threshold.hpp"

using namespace uht;

namespace {

TransitionMatrix q_uniform2() {
  Mat q(2, 2);
  q << 0.5, 0.5, 0.5, 0.5;
  return TransitionMatrix(std::move(q));
}

ProbabilityLaw random_interior_law(int n_states, Rng& rng) {
  Alphabet a(n_states);
  Vec v(a.pairs());
  for (int k = 0; k < a.pairs(); ++k) v(k) = 0.3 / a.pairs() + 0.7 * rng.uniform01();
  v /= v.sum();
  return ProbabilityLaw(std::move(v), n_states);
}

}  // namespace

TEST_CASE("hessian of the uniform law has the closed-form entries") {
  Mat h = hessian_at(ProbabilityLaw::uniform(2));
  // diagonal 1/(1/4) - 1/(1/2) = 2, same-row off-diagonal -2, cross-row 0
  Mat expected(4, 4);
  expected << 2, -2, 0, 0,
             -2,  2, 0, 0,
              0,  0, 2, -2,
              0,  0, -2, 2;
  CHECK((h - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("hessian vanishes across first-coordinate blocks") {
  Rng rng(201);
  ProbabilityLaw pi = random_interior_law(2, rng);
  Mat h = hessian_at(pi);
  Alphabet a(2);
  CHECK(h(a.flat(0, 0), a.flat(1, 0)) == 0.0);
  CHECK(h(a.flat(0, 1), a.flat(1, 1)) == 0.0);
}

TEST_CASE("hessian matches central finite differences of the ambient divergence") {
  Rng rng(202);
  for (int rep = 0; rep < 3; ++rep) {
    ProbabilityLaw pi = random_interior_law(2, rng);
    Mat fd = oracle::fd_hessian(pi.values(), pi.values(), 2, 1e-5);
    CHECK((fd - hessian_at(pi)).cwiseAbs().maxCoeff() < 1e-4);
  }
}

TEST_CASE("gradient of the ambient divergence vanishes at the reference") {
  Rng rng(203);
  ProbabilityLaw pi = random_interior_law(3, rng);
  Vec grad = oracle::fd_gradient(pi.values(), pi.values(), 3, 1e-5);
  CHECK(grad.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("hessian requires full support") {
  Vec v(4);
  v << 0.5, 0.5, 0.0, 0.0;
  CHECK_THROWS_AS(hessian_at(ProbabilityLaw(v, 2)), Error);
}

TEST_CASE("covariance of the uniform chain matches the hand computation") {
  StationaryResult st = stationary_law(lift_transition(q_uniform2()), 1000);
  CovarianceMatrix lambda = covariance_lambda(st.law, lift_transition(q_uniform2()), 1000);
  Mat expected(4, 4);
  expected << 0.3125, -0.0625, -0.0625, -0.1875,
             -0.0625,  0.0625,  0.0625, -0.0625,
             -0.0625,  0.0625,  0.0625, -0.0625,
             -0.1875, -0.0625, -0.0625,  0.3125;
  CHECK((lambda.m - expected).cwiseAbs().maxCoeff() < 1e-12);
  // P^2 already equals the limit, so the series stops at lag 1
  CHECK(lambda.lags_used == 1);
}

TEST_CASE("covariance rows and columns sum to zero and diagonal is the scalar series") {
  Rng rng(204);
  for (int n : {2, 3}) {
    TransitionMatrix q = random_transition(n, rng);
    TransitionMatrix p = lift_transition(q);
    StationaryResult st = stationary_law(p, 1000);
    CovarianceMatrix lambda = covariance_lambda(st.law, p, 1000);

    CHECK(lambda.m.rowwise().sum().cwiseAbs().maxCoeff() < 1e-8);
    CHECK(lambda.m.colwise().sum().cwiseAbs().maxCoeff() < 1e-8);
    CHECK((lambda.m - lambda.m.transpose()).cwiseAbs().maxCoeff() == 0.0);

    // per-state variance series computed on its own
    const Vec& pi = st.law.values();
    for (int k = 0; k < p.dim(); ++k) {
      double sigma2 = pi(k) * (1.0 - pi(k));
      Mat power = p.rows();
      for (int m = 1; m <= 1000; ++m) {
        double lag = pi(k) * (power(k, k) - pi(k));
        if (std::abs(lag) < 1e-15 && m > 5) break;
        sigma2 += 2.0 * lag;
        power = power * p.rows();
      }
      CHECK(lambda.m(k, k) == doctest::Approx(sigma2).epsilon(1e-8));
      CHECK(lambda.m(k, k) >= 0.0);
    }
  }
}

TEST_CASE("trace of hessian times covariance is the chi-square degrees of freedom") {
  Rng rng(205);
  for (int n : {2, 3}) {
    TransitionMatrix q = random_transition(n, rng);
    ReferenceModel model = ReferenceModel::from_transition(q);
    double tr = (model.hessian() * model.covariance().m).trace();
    CHECK(tr == doctest::Approx(static_cast<double>(n * (n - 1))).epsilon(1e-8));
  }
}

TEST_CASE("covariance matches the sampled covariance of the scaled deviations") {
  // 20,000 replicas of length-5000 chains on a 3-state alphabet
  Rng rng(206);
  TransitionMatrix q = random_transition(3, rng);
  TransitionMatrix p = lift_transition(q);
  StationaryResult st = stationary_law(p, 1000);
  CovarianceMatrix lambda = covariance_lambda(st.law, p, 1000);

  const int n = 5000, replicas = 20000;
  const double sqrt_n = std::sqrt(static_cast<double>(n));
  auto sample_u = [&](int t) {
    SymbolSequence z = sample_chain(q, n, derive_seed(900, static_cast<uint64_t>(t)), st.law);
    return (sqrt_n * (empirical_pl(z).values() - st.law.values())).eval();
  };
  oracle::McCovariance mc = oracle::mc_covariance(sample_u, p.dim(), replicas);

  int within = 0, total = p.dim() * p.dim();
  for (int i = 0; i < p.dim(); ++i)
    for (int j = 0; j < p.dim(); ++j)
      if (std::abs(lambda.m(i, j) - mc.mean_outer(i, j)) <= 3.0 * mc.se(i, j) + 1e-9) ++within;
  CHECK(within >= (total * 95 + 99) / 100);
}

TEST_CASE("covariance requires an approximately stationary law") {
  TransitionMatrix p = lift_transition(q_uniform2());
  CHECK_THROWS_AS(
      covariance_lambda(ProbabilityLaw(Vec{{0.4, 0.1, 0.1, 0.4}}, 2), p, 100), Error);
}

TEST_CASE("psd repair is the identity on a PSD matrix") {
  CovarianceMatrix input;
  input.m = Mat(2, 2);
  input.m << 2.0, 1.0, 1.0, 2.0;
  CovarianceMatrix repaired = psd_repair(input);
  CHECK_FALSE(repaired.psd_repaired);
  CHECK(repaired.repair_distance == 0.0);
  CHECK((repaired.m - input.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("psd repair clamps negative eigenvalues") {
  CovarianceMatrix input;
  input.m = Mat(2, 2);
  input.m << 1.0, 0.0, 0.0, -1e-6;
  CovarianceMatrix repaired = psd_repair(input);
  CHECK(repaired.psd_repaired);
  CHECK(repaired.m(0, 0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(repaired.m(1, 1) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(repaired.repair_distance == doctest::Approx(1e-6).epsilon(1e-6));

  Eigen::SelfAdjointEigenSolver<Mat> eig(repaired.m);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-12);
}

TEST_CASE("psd repair rejects asymmetric input") {
  CovarianceMatrix input;
  input.m = Mat(2, 2);
  input.m << 1.0, 0.5, 0.0, 1.0;
  CHECK_THROWS_AS(psd_repair(input), Error);
}

TEST_CASE("degenerate covariance gives identically zero statistics") {
  CovarianceMatrix zero;
  zero.m = Mat::Zero(4, 4);
  EmpiricalCdf cdf = sample_wc_statistic(Mat::Identity(4, 4), zero, 100, 500, 3);
  CHECK(cdf.min() == 0.0);
  CHECK(cdf.max() == 0.0);
}

TEST_CASE("doubling the window halves every statistic sample") {
  ReferenceModel model = ReferenceModel::from_transition(q_uniform2());
  EmpiricalCdf a = sample_wc_statistic(model.hessian(), model.covariance(), 100, 500, 9);
  EmpiricalCdf b = sample_wc_statistic(model.hessian(), model.covariance(), 200, 500, 9);
  for (int64_t i = 0; i < a.size(); ++i)
    CHECK(b.samples()[static_cast<size_t>(i)] == a.samples()[static_cast<size_t>(i)] / 2.0);
}

TEST_CASE("quadratic-form mean approaches trace of H Lambda") {
  ReferenceModel model = ReferenceModel::from_transition(q_uniform2());
  double tr = (model.hessian() * model.covariance().m).trace();
  CHECK(tr == doctest::Approx(2.0).epsilon(1e-10));

  std::vector<double> samples =
      gaussian_quadform_samples(model.hessian(), model.covariance(), 100000, 17);
  double mean = 0.0, var = 0.0;
  for (double s : samples) mean += s;
  mean /= static_cast<double>(samples.size());
  for (double s : samples) var += (s - mean) * (s - mean);
  var /= static_cast<double>(samples.size() - 1);
  double se = std::sqrt(var / static_cast<double>(samples.size()));
  CHECK(std::abs(mean - tr) <= 3.0 * se);
}

TEST_CASE("non-PSD covariance is rejected by the sampler") {
  CovarianceMatrix bad;
  bad.m = Mat(2, 2);
  bad.m << 1.0, 0.0, 0.0, -1e-3;
  CHECK_THROWS_WITH_AS(gaussian_quadform_samples(Mat::Identity(2, 2), bad, 500, 1),
                       doctest::Contains("psd_repair"), Error);
}

TEST_CASE("threshold quantile follows the rank convention") {
  std::vector<double> samples;
  for (int i = 1; i <= 1000; ++i) samples.push_back(i);
  EmpiricalCdf cdf(samples);
  CHECK(threshold_wc(cdf, 0.001) == 999.0);
  CHECK(threshold_wc(cdf, 0.5) == 500.0);
  CHECK(cdf.quantile(0.0) == 1.0);
  CHECK(cdf.quantile(1.0) == 1000.0);

  EmpiricalCdf constant(std::vector<double>(42, 3.25));
  CHECK(threshold_wc(constant, 0.001) == 3.25);
  CHECK(threshold_wc(constant, 0.9) == 3.25);
}

TEST_CASE("threshold is monotone in the false-alarm target") {
  Rng rng(207);
  std::vector<double> samples;
  for (int i = 0; i < 777; ++i) samples.push_back(rng.uniform01());
  EmpiricalCdf cdf(samples);
  double prev = threshold_wc(cdf, 1e-4);
  for (double beta : {1e-3, 1e-2, 0.1, 0.5, 0.9}) {
    double eta = threshold_wc(cdf, beta);
    CHECK(eta <= prev);
    prev = eta;
  }
}

TEST_CASE("sanov threshold closed form") {
  CHECK(threshold_sanov(0.001, 1000) == doctest::Approx(6.907755278982137e-3).epsilon(1e-14));
  CHECK(threshold_sanov(1.0 / M_E, 1) == doctest::Approx(1.0).epsilon(1e-14));
  for (int64_t n : {10, 100, 1000}) {
    double ratio = threshold_sanov(0.01, n) / threshold_sanov(0.01, 2 * n);
    CHECK(ratio == doctest::Approx(2.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(threshold_sanov(0.0, 10), Error);
  CHECK_THROWS_AS(threshold_sanov(1.0, 10), Error);
  CHECK_THROWS_AS(threshold_sanov(0.5, 0), Error);
}

TEST_CASE("monte-carlo threshold is deterministic, positive, and warns when starved") {
  Rng rng(208);
  TransitionMatrix q = random_transition(2, rng);
  StationaryResult st = stationary_law(lift_transition(q), 1000);

  std::vector<std::string> warnings;
  double a = threshold_montecarlo(q, st.law, 200, 400, 0.01, 55, &warnings);
  double b = threshold_montecarlo(q, st.law, 200, 400, 0.01, 55, nullptr);
  CHECK(a == b);
  CHECK(a > 0.0);
  CHECK(warnings.size() == 1);  // 400 * 0.01 = 4 < 5

  warnings.clear();
  threshold_montecarlo(q, st.law, 100, 600, 0.01, 55, &warnings);
  CHECK(warnings.empty());  // 600 * 0.01 = 6
}
