#include "szf/types.hpp"

#include <cmath>
#include <limits>

namespace szf {

const char* to_string(EvalMethod m) {
  switch (m) {
    case EvalMethod::series: return "series";
    case EvalMethod::continuation: return "continuation";
    case EvalMethod::reflection: return "reflection";
    case EvalMethod::asymptotic: return "asymptotic";
    case EvalMethod::product: return "product";
    case EvalMethod::quadrature: return "quadrature";
  }
  return "unknown";
}

double EvalResult::log_modulus() const {
  if (log_scale) return value.real();
  double a = std::abs(value);
  if (a == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log(a);
}

Cplx EvalResult::as_value() const {
  return log_scale ? std::exp(value) : value;
}

}  // namespace szf
