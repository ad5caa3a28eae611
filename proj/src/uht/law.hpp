#pragma once

#include <Eigen/Dense>
#include <string>

#include "alphabet.hpp"
#include "error.hpp"
#include "rng.hpp"

namespace uht {

using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vec = Eigen::VectorXd;

constexpr double kStochasticTol = 1e-12;

// Row-stochastic matrix over either the original alphabet (N x N) or the
// paired alphabet (N^2 x N^2). Immutable after construction; construction
// validates.
class TransitionMatrix {
public:
  explicit TransitionMatrix(Mat rows, const std::string& context = "transition matrix");

  int dim() const { return static_cast<int>(rows_.rows()); }
  double at(int i, int j) const { return rows_(i, j); }
  const Mat& rows() const { return rows_; }
  std::span<const double> row(int i) const {
    return {rows_.row(i).data(), static_cast<size_t>(rows_.cols())};
  }

  // Remark-2 validity: every entry strictly positive.
  bool strictly_positive() const { return rows_.minCoeff() > 0.0; }

private:
  Mat rows_;
};

// Distribution over the paired alphabet (length N^2), indexable flat or by
// pair. Holds pi, pi-hat and empirical measures alike.
class ProbabilityLaw {
public:
  ProbabilityLaw(Vec values, int n_states);

  static ProbabilityLaw uniform(int n_states);

  int states() const { return alphabet_.states(); }
  int size() const { return alphabet_.pairs(); }
  const Alphabet& alphabet() const { return alphabet_; }
  double at(int k) const { return v_(k); }
  double at(int i, int j) const { return v_(alphabet_.flat(i, j)); }
  const Vec& values() const { return v_; }

  bool full_support() const { return v_.minCoeff() > 0.0; }

  // Sum of row i of the pair table, sum_t v(i, t).
  double row_sum(int i) const;
  // Sum of column i, sum_t v(t, i).
  double col_sum(int i) const;

  // Floor every entry at eps and renormalize; guarantees full support.
  ProbabilityLaw floored(double eps) const;

private:
  Alphabet alphabet_;
  Vec v_;
};

// P[(k,l),(i,j)] = 1{i=l} * q_ij: the pair-chain matrix determined by Q.
TransitionMatrix lift_transition(const TransitionMatrix& q);

// Strictly positive row-stochastic matrix with entries drawn U(lo, hi) and
// rows normalized.
TransitionMatrix random_transition(int n_states, Rng& rng, double lo = 1.0, double hi = 5.0);

// Headerless CSV, one matrix row per line; laws use the N x N pair-table
// layout (row i holds the masses of pairs (i, 1..N)).
std::string transition_to_csv(const TransitionMatrix& m);
TransitionMatrix transition_from_csv(const std::string& text);
std::string law_to_csv(const ProbabilityLaw& law);
ProbabilityLaw law_from_csv(const std::string& text);

}  // namespace uht
