#include "selftest.hpp"

#include <cmath>
#include <functional>

#include "hessian.hpp"
#include "markov.hpp"
#include "model.hpp"
#include "threshold.hpp"

namespace uht {

namespace {

// Divergence of an unnormalized point against pi, the ambient function whose
// curvature hessian_at reports. Used only for finite differences here.
double ambient_divergence(const Vec& nu, const ProbabilityLaw& pi) {
  const int n = pi.states();
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double nu_row = 0.0, pi_row = 0.0;
    for (int t = 0; t < n; ++t) {
      nu_row += nu(i * n + t);
      pi_row += pi.at(i, t);
    }
    for (int j = 0; j < n; ++j)
      total += nu(i * n + j) *
               std::log((nu(i * n + j) / nu_row) / (pi.at(i, j) / pi_row));
  }
  return total;
}

ProbabilityLaw random_interior_law(int n_states, Rng& rng) {
  Alphabet a(n_states);
  Vec v(a.pairs());
  for (int k = 0; k < a.pairs(); ++k) v(k) = 0.05 + rng.uniform01();
  v /= v.sum();
  return ProbabilityLaw(std::move(v), n_states);
}

}  // namespace

int selftest(std::ostream& out, bool verbose) {
  int failures = 0;
  auto check = [&](const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string detail;
    try {
      ok = body();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (!ok) ++failures;
    if (!ok || verbose) {
      out << (ok ? "ok   " : "FAIL ") << name;
      if (!detail.empty()) out << " (" << detail << ")";
      out << "\n";
    }
  };

  check("lifted stationary round trip", [] {
    Rng rng(411);
    for (int n : {2, 3}) {
      for (int rep = 0; rep < 5; ++rep) {
        TransitionMatrix q = random_transition(n, rng);
        StationaryResult st = stationary_law(lift_transition(q), 1000);
        TransitionMatrix back = marginal_consistency(st.law);
        if ((back.rows() - q.rows()).cwiseAbs().maxCoeff() > 1e-8) return false;
      }
    }
    return true;
  });

  check("hessian matches finite differences", [] {
    Rng rng(412);
    for (int rep = 0; rep < 3; ++rep) {
      ProbabilityLaw pi = random_interior_law(2, rng);
      Mat h = hessian_at(pi);
      const double step = 1e-5;
      for (int a = 0; a < pi.size(); ++a) {
        for (int b = 0; b < pi.size(); ++b) {
          Vec pp = pi.values(), pm = pi.values(), mp = pi.values(), mm = pi.values();
          pp(a) += step; pp(b) += step;
          pm(a) += step; pm(b) -= step;
          mp(a) -= step; mp(b) += step;
          mm(a) -= step; mm(b) -= step;
          double fd = (ambient_divergence(pp, pi) - ambient_divergence(pm, pi) -
                       ambient_divergence(mp, pi) + ambient_divergence(mm, pi)) /
                      (4.0 * step * step);
          if (std::abs(fd - h(a, b)) > 1e-4) return false;
        }
      }
    }
    return true;
  });

  check("covariance rows sum to zero", [] {
    Rng rng(413);
    for (int n : {2, 3}) {
      ReferenceModel model = ReferenceModel::from_transition(random_transition(n, rng));
      Vec row_sums = model.covariance().m.rowwise().sum();
      if (row_sums.cwiseAbs().maxCoeff() > 1e-8) return false;
    }
    return true;
  });

  check("closed-form calibration", [] {
    double eta = threshold_sanov(0.001, 1000);
    return std::abs(eta - 6.907755278982137e-3) < 1e-12 &&
           std::abs(threshold_sanov(1.0 / M_E, 1) - 1.0) < 1e-12;
  });

  check("quantile rank convention", [] {
    std::vector<double> samples;
    for (int i = 1; i <= 1000; ++i) samples.push_back(i);
    EmpiricalCdf cdf(samples);
    return threshold_wc(cdf, 0.001) == 999.0 && threshold_wc(cdf, 0.5) == 500.0;
  });

  out << (failures == 0 ? "selftest passed" : "selftest FAILED") << "\n";
  return failures;
}

}  // namespace uht
