#include "hessian.hpp"

namespace uht {

Mat hessian_at(const ProbabilityLaw& pi) {
  require(pi.full_support(), errc::support_violation,
          "Hessian needs a full-support law; floor it first");
  const Alphabet& a = pi.alphabet();
  const int n = a.states();
  Mat h = Mat::Zero(a.pairs(), a.pairs());
  for (int i = 0; i < n; ++i) {
    double inv_row = 1.0 / pi.row_sum(i);
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < n; ++l) {
        double v = -inv_row;
        if (l == j) v += 1.0 / pi.at(i, j);
        h(a.flat(i, j), a.flat(i, l)) = v;
      }
    }
  }
  return h;
}

}  // namespace uht
