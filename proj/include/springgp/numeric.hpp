#pragma once

#include <cmath>

// Exponents like 6/n reach 60 for n = 0.1. Products of such powers
// (c21^(2/n) * k^(6/n)) are formed as sums of logs and exponentiated once;
// single powers use std::pow, which is already accurate over the full range.
namespace springgp::numeric {

/// x^p for x >= 0. Returns 0 for x == 0 and p > 0, 1 for p == 0.
double pow_pos(double x, double p);

/// ln(x) for x > 0; -inf at 0.
inline double safe_log(double x) { return x > 0.0 ? std::log(x) : -HUGE_VAL; }

/// |a - b| / max(|a|, |b|), 0 when both are 0.
double relative_difference(double a, double b);

}  // namespace springgp::numeric
