#pragma once

#include "law.hpp"

namespace uht {

// Hessian of nu -> D(nu||pi) evaluated at pi, in the flat pair indexing.
// Block-diagonal in the first pair coordinate:
//   entry((i,j),(k,l)) = 0                         if k != i
//                      = 1/pi_ij - 1/sum_t pi_it   if (k,l) == (i,j)
//                      = -1/sum_t pi_it            if k == i, l != j
// Symmetric and positive semi-definite; requires full support.
Mat hessian_at(const ProbabilityLaw& pi);

}  // namespace uht
