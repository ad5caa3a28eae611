#pragma once

#include <ostream>

namespace uht {

// Built-in invariant suite: transition-matrix round trip through the lifted
// stationary law, analytic vs finite-difference Hessian, covariance row
// sums, and the closed-form calibration. Returns the number of failures.
int selftest(std::ostream& out, bool verbose = false);

}  // namespace uht
