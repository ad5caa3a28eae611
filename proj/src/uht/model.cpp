#include "model.hpp"

namespace uht {

namespace {

nlohmann::json matrix_to_json(const Mat& m) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < m.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const nlohmann::json& j, const std::string& context) {
  require(j.is_array() && !j.empty(), errc::io, context + ": expected array of rows");
  Mat m(j.size(), j.front().size());
  for (size_t i = 0; i < j.size(); ++i) {
    const auto& row = j[i];
    require(row.is_array() && row.size() == static_cast<size_t>(m.cols()), errc::io,
            context + ": ragged rows");
    for (size_t k = 0; k < row.size(); ++k) m(static_cast<int>(i), static_cast<int>(k)) = row[k];
  }
  return m;
}

}  // namespace

ReferenceModel::ReferenceModel(ProbabilityLaw pi, TransitionMatrix q, CovarianceMatrix lambda,
                               EstimationConfig cfg, int64_t training_pairs)
    : pi_(std::move(pi)),
      q_(std::move(q)),
      lambda_(std::move(lambda)),
      hessian_(hessian_at(pi_)),
      cfg_(cfg),
      training_pairs_(training_pairs) {}

ReferenceModel ReferenceModel::from_transition(const TransitionMatrix& q,
                                               const EstimationConfig& cfg) {
  require(q.strictly_positive(), errc::validation,
          "exact calibration needs a strictly positive transition matrix");
  TransitionMatrix p = lift_transition(q);
  StationaryResult st = stationary_law(p, cfg.m0);
  CovarianceMatrix lambda = psd_repair(covariance_lambda(st.law, p, cfg.m0));
  return ReferenceModel(std::move(st.law), q, std::move(lambda), cfg, 0);
}

ReferenceModel ReferenceModel::from_training(const SymbolSequence& training,
                                             const EstimationConfig& cfg, bool q_from_counts) {
  ProbabilityLaw pi_hat = estimate_pi(training, cfg);
  TransitionMatrix q_hat =
      q_from_counts ? estimate_q_from_counts(training) : estimate_q(pi_hat);
  CovarianceMatrix lambda = estimate_lambda(pi_hat, lift_transition(q_hat), cfg);
  return ReferenceModel(std::move(pi_hat), std::move(q_hat), std::move(lambda), cfg,
                        training.length());
}

nlohmann::json ReferenceModel::to_json() const {
  nlohmann::json j;
  j["n_states"] = states();
  j["pi"] = std::vector<double>(pi_.values().data(), pi_.values().data() + pi_.size());
  j["q"] = matrix_to_json(q_.rows());
  j["lambda"] = matrix_to_json(lambda_.m);
  j["estimation"] = {{"epsilon", cfg_.epsilon}, {"m0", cfg_.m0}, {"n0", cfg_.n0}};
  j["lags_used"] = lambda_.lags_used;
  j["psd_repaired"] = lambda_.psd_repaired;
  j["stationarity_residual"] = lambda_.stationarity_residual;
  j["training_pairs"] = training_pairs_;
  j["low_confidence"] = low_confidence_;
  return j;
}

ReferenceModel ReferenceModel::from_json(const nlohmann::json& j) {
  int n_states = j.at("n_states").get<int>();
  Alphabet a(n_states);
  std::vector<double> pi_values = j.at("pi").get<std::vector<double>>();
  require(pi_values.size() == static_cast<size_t>(a.pairs()), errc::io,
          "reference law has wrong length");
  ProbabilityLaw pi(Eigen::Map<const Vec>(pi_values.data(), a.pairs()), n_states);
  TransitionMatrix q(matrix_from_json(j.at("q"), "q"), "stored transition matrix");
  CovarianceMatrix lambda;
  lambda.m = matrix_from_json(j.at("lambda"), "lambda");
  require(lambda.m.rows() == a.pairs() && lambda.m.cols() == a.pairs(), errc::io,
          "stored covariance has wrong shape");
  EstimationConfig cfg;
  if (j.contains("estimation")) {
    const auto& e = j.at("estimation");
    cfg.epsilon = e.value("epsilon", cfg.epsilon);
    cfg.m0 = e.value("m0", cfg.m0);
    cfg.n0 = e.value("n0", cfg.n0);
  }
  lambda.lags_used = j.value("lags_used", 0);
  lambda.psd_repaired = j.value("psd_repaired", false);
  lambda.stationarity_residual = j.value("stationarity_residual", 0.0);
  ReferenceModel model(std::move(pi), std::move(q), std::move(lambda), cfg,
                       j.value("training_pairs", int64_t{0}));
  if (j.value("low_confidence", false)) model.mark_low_confidence();
  return model;
}

}  // namespace uht
