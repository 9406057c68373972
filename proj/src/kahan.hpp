#pragma once

#include "szf/types.hpp"

namespace szf {

// Kahan-compensated complex accumulator; a plain running sum drifts by
// ~1e-12 over a hundred thousand terms.
struct CSum {
  Cplx sum{0.0, 0.0};
  Cplx carry{0.0, 0.0};
  void add(Cplx term) {
    Cplx y = term - carry;
    Cplx t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

}  // namespace szf
