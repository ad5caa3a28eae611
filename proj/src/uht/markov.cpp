#include "markov.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace uht {

Mat matrix_power(const Mat& base, int exponent) {
  require(exponent >= 1, errc::invalid_argument, "matrix power needs exponent >= 1");
  Mat result = Mat::Identity(base.rows(), base.cols());
  Mat square = base;
  int e = exponent;
  while (e > 0) {
    if (e & 1) result = result * square;
    e >>= 1;
    if (e > 0) square = square * square;
  }
  return result;
}

StationaryResult stationary_law(const TransitionMatrix& p, int m0) {
  require(m0 >= 1, errc::invalid_argument, "m0 must be >= 1");
  Mat power = matrix_power(p.rows(), m0);
  Vec pi = power.row(0).transpose();
  // Row of a stochastic power can drift from unit sum by rounding only.
  pi = pi.cwiseMax(0.0);
  pi /= pi.sum();
  double residual = ((pi.transpose() * p.rows()).transpose() - pi).cwiseAbs().maxCoeff();
  if (residual > 1e-8)
    fail(errc::calibration, "stationary law did not converge: ||pi*P - pi||_inf = " +
                                std::to_string(residual) + "; increase m0 (used " +
                                std::to_string(m0) + ")");
  int n_states = static_cast<int>(std::lround(std::sqrt(static_cast<double>(p.dim()))));
  require(n_states * n_states == p.dim(), errc::invalid_argument,
          "stationary_law expects a matrix over the paired alphabet");
  return {ProbabilityLaw(std::move(pi), n_states), residual, m0};
}

TransitionMatrix marginal_consistency(const ProbabilityLaw& pi) {
  const int n = pi.states();
  for (int i = 0; i < n; ++i) {
    double rs = pi.row_sum(i), cs = pi.col_sum(i);
    if (std::abs(rs - cs) > 1e-10)
      fail(errc::validation, "law is not stationary-balanced: row/column sums for state " +
                                 std::to_string(i + 1) + " differ by " + std::to_string(rs - cs));
  }
  Mat q(n, n);
  for (int i = 0; i < n; ++i) {
    double rs = pi.row_sum(i);
    if (rs <= 0.0)
      fail(errc::validation,
           "degenerate law: state " + std::to_string(i + 1) + " has zero mass");
    for (int j = 0; j < n; ++j) q(i, j) = pi.at(i, j) / rs;
  }
  return TransitionMatrix(std::move(q), "recovered transition matrix");
}

SymbolSequence sample_chain(const TransitionMatrix& q, int64_t n, uint64_t seed,
                            const std::optional<ProbabilityLaw>& init_pairs) {
  require(n >= 1, errc::invalid_argument, "chain length must be >= 1");
  Alphabet a(q.dim());
  Rng rng(seed);

  int first_pair;
  if (init_pairs) {
    require(init_pairs->states() == a.states(), errc::invalid_argument,
            "initial law has wrong alphabet size");
    first_pair = rng.pick({init_pairs->values().data(),
                           static_cast<size_t>(init_pairs->values().size())});
  } else {
    StationaryResult st = stationary_law(lift_transition(q));
    first_pair = rng.pick({st.law.values().data(), static_cast<size_t>(st.law.values().size())});
  }

  SymbolSequence z;
  z.n_states = a.states();
  z.symbols.reserve(static_cast<size_t>(n));
  z.symbols.push_back(static_cast<int32_t>(first_pair));
  int y = a.second(first_pair);
  for (int64_t l = 1; l < n; ++l) {
    int y_next = rng.pick(q.row(y));
    z.symbols.push_back(static_cast<int32_t>(a.flat(y, y_next)));
    y = y_next;
  }
  return z;
}

ProbabilityLaw empirical_pl(const SymbolSequence& z) {
  require(!z.symbols.empty(), errc::validation, "empty sequence has no empirical law");
  Alphabet a(z.n_states);
  Vec counts = Vec::Zero(a.pairs());
  for (int32_t s : z.symbols) {
    require(s >= 0 && s < a.pairs(), errc::validation,
            "symbol " + std::to_string(s) + " outside pair alphabet of size " +
                std::to_string(a.pairs()));
    counts(s) += 1.0;
  }
  counts /= static_cast<double>(z.symbols.size());
  return ProbabilityLaw(std::move(counts), z.n_states);
}

double divergence(const ProbabilityLaw& gamma, const ProbabilityLaw& pi) {
  require(gamma.states() == pi.states(), errc::invalid_argument,
          "laws live on different alphabets");
  const int n = gamma.states();
  double d = 0.0;
  for (int i = 0; i < n; ++i) {
    double grow = gamma.row_sum(i);
    if (grow <= 0.0) continue;  // empty row contributes nothing
    double prow = pi.row_sum(i);
    for (int j = 0; j < n; ++j) {
      double g = gamma.at(i, j);
      if (g <= 0.0) continue;
      double p = pi.at(i, j);
      if (p <= 0.0)
        fail(errc::support_violation,
             "reference law is zero at pair (" + std::to_string(i + 1) + "," +
                 std::to_string(j + 1) + ") where the empirical law is positive; floor the "
                 "reference first");
      d += g * std::log((g / grow) / (p / prow));
    }
  }
  return d < 0.0 ? 0.0 : d;  // clamp rounding residue; the sum is a mixture of row KLs
}

std::string symbols_to_csv(const SymbolSequence& z) {
  std::ostringstream out;
  out << "symbol\n";
  for (int32_t s : z.symbols) out << (s + 1) << "\n";
  return out.str();
}

SymbolSequence symbols_from_csv(const std::string& text, int n_states) {
  Alphabet a(n_states);
  SymbolSequence z;
  z.n_states = n_states;
  size_t pos = 0;
  bool header_done = false;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (!header_done) {
      header_done = true;
      if (line == "symbol") continue;  // header optional
    }
    int value = 0;
    auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    if (ec != std::errc() || ptr != line.data() + line.size())
      fail(errc::io, "bad symbol line: '" + std::string(line) + "'");
    require(value >= 1 && value <= a.pairs(), errc::validation,
            "symbol " + std::to_string(value) + " outside 1.." + std::to_string(a.pairs()));
    z.symbols.push_back(static_cast<int32_t>(value - 1));
  }
  return z;
}

}  // namespace uht
