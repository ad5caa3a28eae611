#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "law.hpp"

namespace uht {

// Observed pair chain: flat pair indices in [0, N^2). Arbitrary content is
// accepted by the measurement operations; the sampler only emits feasible
// sequences (consecutive pairs chain through their shared state).
struct SymbolSequence {
  int n_states = 0;
  std::vector<int32_t> symbols;

  int64_t length() const { return static_cast<int64_t>(symbols.size()); }
};

struct StationaryResult {
  ProbabilityLaw law;
  double residual;  // max-norm of pi*P - pi
  int m0;
};

Mat matrix_power(const Mat& base, int exponent);

// One row of P^m0, verified to satisfy pi*P = pi within 1e-8.
StationaryResult stationary_law(const TransitionMatrix& p, int m0 = 1000);

// Recover Q from a stationary pair law: q_ij = pi_ij / sum_t pi_it. Checks
// the balance identity sum_t pi_it == sum_t pi_ti (within 1e-10) that
// stationarity forces.
TransitionMatrix marginal_consistency(const ProbabilityLaw& pi);

// Simulate Y_0..Y_n from Q and return the n pairs Z_l = (Y_{l-1}, Y_l).
// The first pair is drawn from init_pairs, or from the stationary pair law
// when unset. Deterministic per seed.
SymbolSequence sample_chain(const TransitionMatrix& q, int64_t n, uint64_t seed,
                            const std::optional<ProbabilityLaw>& init_pairs = std::nullopt);

ProbabilityLaw empirical_pl(const SymbolSequence& z);

// Relative entropy between conditional rows,
//   D(gamma||pi) = sum_ij gamma_ij log[(gamma_ij/gamma_i.)/(pi_ij/pi_i.)],
// natural log, with gamma_ij = 0 terms (and hence empty rows) contributing 0.
double divergence(const ProbabilityLaw& gamma, const ProbabilityLaw& pi);

// Anomaly iff the statistic strictly exceeds the threshold.
inline bool hoeffding_decide(double d, double eta) { return d > eta; }

// One-column CSV of 1-based flat pair indices.
std::string symbols_to_csv(const SymbolSequence& z);
SymbolSequence symbols_from_csv(const std::string& text, int n_states);

}  // namespace uht
