#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "uht/model.hpp"

using namespace uht;

TEST_CASE("floored count estimate with the documented normalization") {
  SymbolSequence z{2, {0, 0, 1}};  // counts (2,1,0,0), n0 = 3
  EstimationConfig cfg;
  ProbabilityLaw pi = estimate_pi(z, cfg);
  double s_hat = 1.0 + 2e-8;
  CHECK(pi.at(0) == doctest::Approx((2.0 / 3.0) / s_hat).epsilon(1e-14));
  CHECK(pi.at(1) == doctest::Approx((1.0 / 3.0) / s_hat).epsilon(1e-14));
  CHECK(pi.at(2) == doctest::Approx(1e-8 / s_hat).epsilon(1e-10));
  CHECK(pi.at(3) == doctest::Approx(1e-8 / s_hat).epsilon(1e-10));
  CHECK(pi.full_support());
  CHECK(pi.values().sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("balanced counts give the uniform law, unaffected by the floor") {
  SymbolSequence z{2, {0, 1, 2, 3, 0, 1, 2, 3}};
  ProbabilityLaw pi = estimate_pi(z, {});
  for (int k = 0; k < 4; ++k) CHECK(pi.at(k) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("law estimate converges to the stationary law") {
  Mat qm(2, 2);
  qm << 0.7, 0.3, 0.4, 0.6;
  TransitionMatrix q(qm);
  SymbolSequence z = sample_chain(q, 1000000, 31);
  ProbabilityLaw pi = estimate_pi(z, {});
  Vec expected(4);
  expected << 0.4, 6.0 / 35.0, 6.0 / 35.0, 9.0 / 35.0;
  CHECK((pi.values() - expected).cwiseAbs().maxCoeff() < 0.005);
}

TEST_CASE("estimated law always has the floored lower bound") {
  Rng rng(301);
  for (int rep = 0; rep < 10; ++rep) {
    int n = 2 + rep % 3;
    SymbolSequence z{n, {}};
    for (int i = 0; i < 40; ++i)
      z.symbols.push_back(static_cast<int32_t>(rng.uniform01() * n * n * 0.5));
    EstimationConfig cfg;
    ProbabilityLaw pi = estimate_pi(z, cfg);
    CHECK(pi.values().minCoeff() >= cfg.epsilon / (1.0 + n * n * cfg.epsilon) * 0.999);
    CHECK(pi.values().sum() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("transition estimate inverts an exactly stationary law") {
  Rng rng(302);
  for (int rep = 0; rep < 10; ++rep) {
    TransitionMatrix q = random_transition(3, rng);
    StationaryResult st = stationary_law(lift_transition(q), 1000);
    TransitionMatrix q_hat = estimate_q(st.law);
    CHECK((q_hat.rows() - q.rows()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("uniform law estimates the uniform chain") {
  TransitionMatrix q_hat = estimate_q(ProbabilityLaw::uniform(2));
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(q_hat.at(i, j) == doctest::Approx(0.5));
}

TEST_CASE("transition estimate converges on long training data") {
  Mat qm(2, 2);
  qm << 0.7, 0.3, 0.4, 0.6;
  TransitionMatrix q(qm);
  SymbolSequence z = sample_chain(q, 1000000, 33);
  TransitionMatrix q_hat = estimate_q(estimate_pi(z, {}));
  CHECK((q_hat.rows() - q.rows()).cwiseAbs().maxCoeff() < 0.01);
}

TEST_CASE("count-based estimator agrees with the law route on dense data") {
  Mat qm(2, 2);
  qm << 0.7, 0.3, 0.4, 0.6;
  TransitionMatrix q(qm);
  SymbolSequence z = sample_chain(q, 200000, 34);
  TransitionMatrix by_law = estimate_q(estimate_pi(z, {}));
  TransitionMatrix by_counts = estimate_q_from_counts(z);
  CHECK((by_law.rows() - by_counts.rows()).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("covariance estimate equals the exact path on exact inputs") {
  Rng rng(303);
  TransitionMatrix q = random_transition(2, rng);
  TransitionMatrix p = lift_transition(q);
  StationaryResult st = stationary_law(p, 1000);
  CovarianceMatrix exact = psd_repair(covariance_lambda(st.law, p, 1000));
  CovarianceMatrix estimated = estimate_lambda(st.law, p, {});
  CHECK((exact.m - estimated.m).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("estimated covariance is symmetric PSD by construction") {
  Rng rng(304);
  TransitionMatrix q = random_transition(3, rng);
  SymbolSequence z = sample_chain(q, 20000, 35);
  ReferenceModel model = ReferenceModel::from_training(z, {});
  const Mat& lambda = model.covariance().m;
  CHECK((lambda - lambda.transpose()).cwiseAbs().maxCoeff() == 0.0);
  Eigen::SelfAdjointEigenSolver<Mat> eig(lambda);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-10);
}

TEST_CASE("full estimation pipeline is bit-deterministic") {
  Rng rng(305);
  TransitionMatrix q = random_transition(3, rng);
  SymbolSequence z = sample_chain(q, 9000, 36);
  ReferenceModel a = ReferenceModel::from_training(z, {});
  ReferenceModel b = ReferenceModel::from_training(z, {});
  CHECK((a.covariance().m - b.covariance().m).cwiseAbs().maxCoeff() == 0.0);
  CHECK((a.law().values() - b.law().values()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("estimated calibration tracks the exact calibration threshold") {
  // training of length 1000*N^2 on a 3-state chain; thresholds within 20%
  Rng rng(306);
  TransitionMatrix q = random_transition(3, rng);
  EstimationConfig cfg;
  ReferenceModel truth = ReferenceModel::from_transition(q, cfg);
  SymbolSequence training = sample_chain(q, cfg.training_hint(3), 37, truth.law());
  ReferenceModel estimated = ReferenceModel::from_training(training, cfg);

  for (int64_t n : {500, 2000}) {
    double eta_true = truth.wc_threshold(n, 10000, 0.001, 71);
    double eta_est = estimated.wc_threshold(n, 10000, 0.001, 71);
    CHECK(std::abs(eta_est - eta_true) / eta_true < 0.20);
  }
}

TEST_CASE("model JSON round trip preserves every field") {
  Rng rng(307);
  TransitionMatrix q = random_transition(2, rng);
  SymbolSequence z = sample_chain(q, 5000, 38);
  ReferenceModel model = ReferenceModel::from_training(z, {});
  ReferenceModel back = ReferenceModel::from_json(model.to_json());
  CHECK(back.states() == model.states());
  CHECK((back.law().values() - model.law().values()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.transition().rows() - model.transition().rows()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((back.covariance().m - model.covariance().m).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.training_pairs() == model.training_pairs());
  CHECK(back.covariance().psd_repaired == model.covariance().psd_repaired);
}
