#include "springgp/numeric.hpp"

#include <algorithm>
#include <cmath>

namespace springgp::numeric {

double pow_pos(double x, double p) {
  if (p == 0.0) return 1.0;
  if (x == 0.0) return p > 0.0 ? 0.0 : HUGE_VAL;
  return std::pow(x, p);
}

double relative_difference(double a, double b) {
  const double scale = std::max(std::fabs(a), std::fabs(b));
  if (scale == 0.0) return 0.0;
  return std::fabs(a - b) / scale;
}

}  // namespace springgp::numeric
