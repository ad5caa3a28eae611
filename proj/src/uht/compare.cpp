#include "compare.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "io.hpp"

namespace uht {

void CompareConfig::validate() const {
  require(n_states >= 2, errc::validation, "n_states must be >= 2");
  require(beta > 0.0 && beta < 1.0, errc::validation, "beta must lie in (0,1)");
  require(t_samples >= 100, errc::validation, "t_samples must be >= 100");
  require(m0 >= 1, errc::validation, "m0 must be >= 1");
  require(epsilon > 0.0, errc::validation, "epsilon must be positive");
  require(!n_grid.empty(), errc::validation, "n_grid must not be empty");
  for (int64_t n : n_grid)
    require(n >= 2, errc::validation, "grid point n=" + std::to_string(n) + " is infeasible");
  require(std::is_sorted(n_grid.begin(), n_grid.end()) &&
              std::adjacent_find(n_grid.begin(), n_grid.end()) == n_grid.end(),
          errc::validation, "n_grid must be strictly increasing");
}

CompareConfig compare_config_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, true, /*ignore_comments=*/true);
  CompareConfig cfg;
  cfg.n_states = j.value("n_states", cfg.n_states);
  cfg.beta = j.value("beta", cfg.beta);
  cfg.t_samples = j.value("t_samples", cfg.t_samples);
  cfg.m0 = j.value("m0", cfg.m0);
  cfg.epsilon = j.value("epsilon", cfg.epsilon);
  cfg.n0 = j.value("n0", cfg.n0);
  cfg.seed = j.value("seed", cfg.seed);
  cfg.with_mc = j.value("with_mc", cfg.with_mc);
  if (j.contains("n_grid")) cfg.n_grid = j.at("n_grid").get<std::vector<int64_t>>();
  cfg.validate();
  return cfg;
}

ThresholdCurve threshold_compare(const CompareConfig& cfg) {
  cfg.validate();

  ThresholdCurve curve;
  curve.beta = cfg.beta;
  curve.t_samples = cfg.t_samples;
  curve.seed = cfg.seed;

  EstimationConfig est;
  est.epsilon = cfg.epsilon;
  est.m0 = cfg.m0;
  est.n0 = cfg.n0;

  // Ground truth: a random valid Q and its exact stationary law.
  Rng q_rng(derive_seed(cfg.seed, 0));
  TransitionMatrix q = random_transition(cfg.n_states, q_rng);
  ReferenceModel truth = ReferenceModel::from_transition(q, est);

  // Estimated parameters from one training sample of length n0.
  int64_t n0 = est.training_hint(cfg.n_states);
  SymbolSequence training = sample_chain(q, n0, derive_seed(cfg.seed, 1), truth.law());
  ReferenceModel estimated = ReferenceModel::from_training(training, est);

  // One set of Gaussian quadratic-form samples serves every grid point; only
  // the 1/(2n) scale changes with n.
  std::vector<double> quadform = gaussian_quadform_samples(
      estimated.hessian(), estimated.covariance(), cfg.t_samples, derive_seed(cfg.seed, 2));
  EmpiricalCdf unscaled(quadform);
  double wc_quantile = threshold_wc(unscaled, cfg.beta);

  if (static_cast<double>(cfg.t_samples) * cfg.beta < 5.0)
    curve.warnings.push_back(
        "t_samples*beta < 5: the top order statistics alone set the threshold; consider "
        "t_samples >= " +
        std::to_string(static_cast<int64_t>(std::ceil(5.0 / cfg.beta))));

  for (size_t gi = 0; gi < cfg.n_grid.size(); ++gi) {
    ThresholdCurvePoint pt;
    pt.n = cfg.n_grid[gi];
    pt.eta_sv = threshold_sanov(cfg.beta, pt.n);
    pt.eta_wc = wc_quantile / (2.0 * static_cast<double>(pt.n));
    if (cfg.with_mc) {
      pt.eta_mc = threshold_montecarlo(q, truth.law(), pt.n, cfg.t_samples, cfg.beta,
                                       derive_seed(cfg.seed, 100 + gi), nullptr);
      pt.has_mc = true;
    }
    curve.points.push_back(pt);
  }
  return curve;
}

std::string curve_to_csv(const ThresholdCurve& curve) {
  std::ostringstream out;
  out << "n,eta_sv,eta_wc,eta_mc\n";
  for (const ThresholdCurvePoint& pt : curve.points) {
    out << pt.n << ',' << format_double(pt.eta_sv) << ',' << format_double(pt.eta_wc) << ',';
    if (pt.has_mc) out << format_double(pt.eta_mc);
    out << '\n';
  }
  return out.str();
}

std::string curve_summary(const ThresholdCurve& curve) {
  std::ostringstream out;
  double max_sv = 0.0, mean_sv = 0.0, max_wc = 0.0, mean_wc = 0.0;
  int counted = 0;
  for (const ThresholdCurvePoint& pt : curve.points) {
    if (!pt.has_mc || pt.eta_mc <= 0.0) continue;
    double rel_sv = std::abs(pt.eta_sv - pt.eta_mc) / pt.eta_mc;
    double rel_wc = std::abs(pt.eta_wc - pt.eta_mc) / pt.eta_mc;
    max_sv = std::max(max_sv, rel_sv);
    max_wc = std::max(max_wc, rel_wc);
    mean_sv += rel_sv;
    mean_wc += rel_wc;
    ++counted;
  }
  if (counted == 0) {
    out << "no Monte-Carlo reference points; relative errors unavailable\n";
    return out.str();
  }
  mean_sv /= counted;
  mean_wc /= counted;
  out << "relative error vs eta_mc over " << counted << " grid points:\n";
  out << "  sanov : max " << format_double(max_sv) << "  mean " << format_double(mean_sv) << "\n";
  out << "  wc    : max " << format_double(max_wc) << "  mean " << format_double(mean_wc) << "\n";
  return out.str();
}

}  // namespace uht
