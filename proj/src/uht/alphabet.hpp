#pragma once

#include <string>

#include "error.hpp"

namespace uht {

// Original alphabet of N states together with the paired alphabet of N^2
// states. The pair (i, j) lives at flat index i*N + j (0-based); file formats
// and the C API use 1-based flat indices, conversion happens at those
// boundaries only.
class Alphabet {
public:
  explicit Alphabet(int n_states) : n_(n_states) {
    require(n_ >= 2, errc::validation,
            "alphabet needs at least 2 states, got " + std::to_string(n_states));
  }

  int states() const { return n_; }
  int pairs() const { return n_ * n_; }
  int flat(int i, int j) const { return i * n_ + j; }
  int first(int k) const { return k / n_; }
  int second(int k) const { return k % n_; }

private:
  int n_;
};

}  // namespace uht
