#include "covariance.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace uht {

CovarianceMatrix covariance_lambda(const ProbabilityLaw& pi, const TransitionMatrix& p, int m0,
                                   double stationarity_tol) {
  require(m0 >= 1, errc::invalid_argument, "m0 must be >= 1");
  require(pi.size() == p.dim(), errc::invalid_argument,
          "law and transition matrix have mismatched dimensions");

  const Vec& v = pi.values();
  double residual = ((v.transpose() * p.rows()).transpose() - v).cwiseAbs().maxCoeff();
  if (residual > stationarity_tol)
    fail(errc::calibration, "law is not stationary for the given matrix: residual " +
                                std::to_string(residual) + " > " +
                                std::to_string(stationarity_tol));

  const int d = p.dim();
  Mat limit = Vec::Ones(d) * v.transpose();  // 1 * pi'
  Mat diag = v.asDiagonal();

  CovarianceMatrix out;
  out.stationarity_residual = residual;
  out.m = diag - v * v.transpose();  // lag 0
  Mat power = p.rows();
  for (int m = 1; m <= m0; ++m) {
    Mat centered = power - limit;
    if (centered.cwiseAbs().maxCoeff() < 1e-12) break;
    out.lags_used = m;
    out.m.noalias() += diag * centered;
    out.m.noalias() += centered.transpose() * diag;
    if (m < m0) power = power * p.rows();
  }
  out.m = ((out.m + out.m.transpose()) / 2.0).eval();
  return out;
}

CovarianceMatrix psd_repair(const CovarianceMatrix& lambda) {
  require(lambda.m.rows() == lambda.m.cols(), errc::invalid_argument, "matrix must be square");
  require((lambda.m - lambda.m.transpose()).cwiseAbs().maxCoeff() <= 1e-12,
          errc::invalid_argument, "psd_repair expects a symmetric matrix");

  Eigen::SelfAdjointEigenSolver<Mat> eig(lambda.m);
  require(eig.info() == Eigen::Success, errc::calibration, "eigendecomposition failed");
  if (eig.eigenvalues().minCoeff() >= 0.0) return lambda;

  Vec clamped = eig.eigenvalues().cwiseMax(0.0);
  Mat repaired = eig.eigenvectors() * clamped.asDiagonal() * eig.eigenvectors().transpose();
  repaired = ((repaired + repaired.transpose()) / 2.0).eval();

  CovarianceMatrix out = lambda;
  out.repair_distance = (repaired - lambda.m).norm();
  out.m = std::move(repaired);
  out.psd_repaired = true;
  return out;
}

}  // namespace uht
