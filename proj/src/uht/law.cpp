#include "law.hpp"

#include <cmath>
#include <sstream>

#include "io.hpp"

namespace uht {

namespace {

Mat csv_to_matrix(const std::string& text, const std::string& context) {
  std::vector<std::vector<double>> rows;
  for (std::string_view line : split_lines(text)) {
    if (line.empty()) continue;
    std::vector<double> row;
    for (std::string_view field : split_fields(line)) row.push_back(parse_double(field, context));
    rows.push_back(std::move(row));
  }
  require(!rows.empty(), errc::io, context + ": empty CSV");
  Mat m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == rows.front().size(), errc::io, context + ": ragged CSV rows");
    for (size_t j = 0; j < rows[i].size(); ++j)
      m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  return m;
}

std::string matrix_to_csv(const Mat& m) {
  std::ostringstream out;
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace

TransitionMatrix::TransitionMatrix(Mat rows, const std::string& context) : rows_(std::move(rows)) {
  require(rows_.rows() >= 2 && rows_.rows() == rows_.cols(), errc::validation,
          context + ": expected square matrix of dimension >= 2, got " +
              std::to_string(rows_.rows()) + "x" + std::to_string(rows_.cols()));
  for (int i = 0; i < rows_.rows(); ++i) {
    if (rows_.row(i).minCoeff() < 0.0)
      fail(errc::validation, context + ": negative entry in row " + std::to_string(i + 1));
    double sum = rows_.row(i).sum();
    if (std::abs(sum - 1.0) > kStochasticTol)
      fail(errc::validation, context + ": row " + std::to_string(i + 1) + " sums to " +
                                 std::to_string(sum) + ", expected 1");
  }
}

ProbabilityLaw::ProbabilityLaw(Vec values, int n_states)
    : alphabet_(n_states), v_(std::move(values)) {
  require(v_.size() == alphabet_.pairs(), errc::validation,
          "law over pairs of " + std::to_string(n_states) + " states needs " +
              std::to_string(alphabet_.pairs()) + " entries, got " + std::to_string(v_.size()));
  require(v_.minCoeff() >= 0.0, errc::validation, "law has a negative entry");
  double sum = v_.sum();
  require(std::abs(sum - 1.0) <= kStochasticTol, errc::validation,
          "law sums to " + std::to_string(sum) + ", expected 1");
}

ProbabilityLaw ProbabilityLaw::uniform(int n_states) {
  Alphabet a(n_states);
  return ProbabilityLaw(Vec::Constant(a.pairs(), 1.0 / a.pairs()), n_states);
}

double ProbabilityLaw::row_sum(int i) const {
  double s = 0.0;
  for (int j = 0; j < alphabet_.states(); ++j) s += v_(alphabet_.flat(i, j));
  return s;
}

double ProbabilityLaw::col_sum(int i) const {
  double s = 0.0;
  for (int j = 0; j < alphabet_.states(); ++j) s += v_(alphabet_.flat(j, i));
  return s;
}

ProbabilityLaw ProbabilityLaw::floored(double eps) const {
  require(eps > 0.0, errc::invalid_argument, "floor must be positive");
  Vec w = v_.cwiseMax(eps);
  w /= w.sum();
  return ProbabilityLaw(std::move(w), states());
}

TransitionMatrix lift_transition(const TransitionMatrix& q) {
  Alphabet a(q.dim());
  const int n = a.states();
  Mat p = Mat::Zero(a.pairs(), a.pairs());
  for (int k = 0; k < n; ++k)
    for (int l = 0; l < n; ++l)
      for (int j = 0; j < n; ++j) p(a.flat(k, l), a.flat(l, j)) = q.at(l, j);
  return TransitionMatrix(std::move(p), "lifted transition matrix");
}

std::string transition_to_csv(const TransitionMatrix& m) { return matrix_to_csv(m.rows()); }

TransitionMatrix transition_from_csv(const std::string& text) {
  return TransitionMatrix(csv_to_matrix(text, "transition CSV"));
}

std::string law_to_csv(const ProbabilityLaw& law) {
  const int n = law.states();
  Mat table(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) table(i, j) = law.at(i, j);
  return matrix_to_csv(table);
}

ProbabilityLaw law_from_csv(const std::string& text) {
  Mat table = csv_to_matrix(text, "law CSV");
  require(table.rows() == table.cols(), errc::io, "law CSV must be a square pair table");
  const int n = static_cast<int>(table.rows());
  Vec v(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) v(i * n + j) = table(i, j);
  return ProbabilityLaw(std::move(v), n);
}

TransitionMatrix random_transition(int n_states, Rng& rng, double lo, double hi) {
  require(n_states >= 2, errc::invalid_argument, "need at least 2 states");
  require(lo > 0.0 && hi >= lo, errc::invalid_argument, "need 0 < lo <= hi");
  Mat q(n_states, n_states);
  for (int i = 0; i < n_states; ++i) {
    for (int j = 0; j < n_states; ++j) q(i, j) = lo + (hi - lo) * rng.uniform01();
    q.row(i) /= q.row(i).sum();
  }
  return TransitionMatrix(std::move(q));
}

}  // namespace uht
