#include "springgp/primal_solver.hpp"

#include <cmath>

#include <fmt/format.h>

#include "springgp/errors.hpp"

namespace springgp::primal {

namespace {

void check_coefficients(const gp::GPCoefficients& co) {
  if (!(co.c > 0.0 && co.c11 >= 0.0 && co.c12 >= 0.0 && co.c11 + co.c12 > 0.0 && co.c21 > 0.0 &&
        co.n > 0.0))
    throw ValidationError(fmt::format(
        "coefficients must satisfy c, c21, n > 0 and c11, c12 >= 0, not both 0 (c={}, c11={}, "
        "c12={}, c21={}, n={})",
        co.c, co.c11, co.c12, co.c21, co.n));
}

void check_index(double k) {
  if (!(k > 1.0)) throw ValidationError(fmt::format("spring index k must exceed 1 (got {})", k));
}

double log_residual(const gp::GPCoefficients& co, double k) {
  return (2.0 / co.n) * std::log(co.c21) + (6.0 / co.n) * std::log(k) -
         std::log(co.c11 * k + co.c12);
}

// Geometric-midpoint bisection on a sign change lo (negative) -> hi (positive).
template <class F>
double bisect_log(F&& f, double lo, double hi) {
  for (int i = 0; i < 200 && hi - lo > kRootTolerance * lo; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    const double v = f(mid);
    if (v == 0.0) return mid;
    (v < 0.0 ? lo : hi) = mid;
  }
  return std::sqrt(lo * hi);
}

std::optional<double> negative_root(const gp::GPCoefficients& co) {
  if (!(co.c11 > 0.0 && co.c12 > 0.0)) return std::nullopt;
  // On (-c12/c11, 0) the residual runs from +inf down to -inf.
  auto f = [&](double k) {
    const double s = co.c11 * k + co.c12;
    if (s <= 0.0) return HUGE_VAL;
    return (2.0 / co.n) * std::log(co.c21) + (6.0 / co.n) * std::log(-k) - std::log(s);
  };
  double a = -co.c12 / co.c11;  // f > 0 side
  double b = 0.0;               // f < 0 side
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (a + b);
    if (mid == a || mid == b) break;
    (f(mid) > 0.0 ? a : b) = mid;
  }
  return 0.5 * (a + b);
}

}  // namespace

std::string_view to_string(ActiveCase c) {
  switch (c) {
    case ActiveCase::Case3: return "Case3";
    case ActiveCase::Case4: return "Case4";
    case ActiveCase::Boundary: return "Boundary";
  }
  return "?";
}

FeasibilityValue k_feasibility(const gp::GPCoefficients& coeffs, double k) {
  check_coefficients(coeffs);
  if (!(k > 0.0)) throw ValidationError(fmt::format("k must be > 0 (got {})", k));
  FeasibilityValue out;
  out.log_residual = log_residual(coeffs, k);
  out.value = (coeffs.c11 * k + coeffs.c12) * std::expm1(out.log_residual);
  return out;
}

KInterval admissible_interval(const gp::GPCoefficients& coeffs) {
  check_coefficients(coeffs);
  auto f = [&](double k) { return log_residual(coeffs, k); };

  if (f(1.0) >= 0.0) {
    // Locate the positive root below 1 for the diagnostic.
    double lo = 0.5;
    while (f(lo) >= 0.0 && lo > 1e-300) lo *= 0.5;
    const double root = f(1.0) == 0.0 ? 1.0 : bisect_log(f, lo, 1.0);
    throw NoAdmissibleIndex(
        fmt::format("g(k) > 0 for every k > 1: positive root k* = {:.9g} <= 1", root), root);
  }

  KInterval out;
  double lo = 1.0;
  double hi = 2.0;
  while (f(hi) < 0.0) {
    lo = hi;
    hi *= 2.0;
    if (hi > kBracketCap)
      throw RootNotBracketed(
          fmt::format("g(k) < 0 on (1, {:g}]; no root below the search cap", kBracketCap),
          kBracketCap);
  }
  out.bracket_lo = lo;
  out.bracket_hi = hi;
  out.k_star = f(hi) == 0.0 ? hi : bisect_log(f, lo, hi);
  out.negative_root = negative_root(coeffs);

  for (double k : log_space(1.0 + 1e-9, out.k_star, 258)) {
    if (k < out.k_star * (1.0 - 1e-9) && f(k) > kBoundaryTolerance) {
      out.multiple_roots_suspected = true;
      break;
    }
  }
  return out;
}

PrimalSolution solve_case3(const gp::GPCoefficients& coeffs, double k) {
  check_coefficients(coeffs);
  check_index(k);
  const double lr = log_residual(coeffs, k);
  if (lr > kBoundaryTolerance)
    throw CaseInapplicable(fmt::format("case 3 needs g(k) <= 0; ln-residual at k={} is {}", k, lr));

  const double s = coeffs.c11 * k + coeffs.c12;
  const double x2 = std::sqrt(s);
  const double c = coeffs.c;
  PrimalSolution out;
  out.k = k;
  out.x = {k * x2, x2};
  out.multipliers.lambda1 = 3.0 * c * k * std::pow(x2, 5) / (2.0 * s);
  out.multipliers.lambda2 = 0.0;
  out.multipliers.lambda3 =
      (5.0 * coeffs.c11 * k + 2.0 * coeffs.c12) / (2.0 * s) * c * x2 * x2;
  out.objective = c * k * s * x2;
  out.active_case = ActiveCase::Case3;
  return out;
}

PrimalSolution solve_case4(const gp::GPCoefficients& coeffs, double k) {
  check_coefficients(coeffs);
  check_index(k);
  const double lr = log_residual(coeffs, k);
  if (lr < -kBoundaryTolerance)
    throw CaseInapplicable(fmt::format("case 4 needs g(k) >= 0; ln-residual at k={} is {}", k, lr));

  const double n = coeffs.n;
  const double c = coeffs.c;
  const double log_c21 = std::log(coeffs.c21);
  const double log_k = std::log(k);
  const double x2 = std::exp((log_c21 + 3.0 * log_k) / n);
  PrimalSolution out;
  out.k = k;
  out.x = {k * x2, x2};
  // 3 c x2^(n+3) / (c21 k^2 n), folded through logs.
  out.multipliers.lambda1 = 0.0;
  out.multipliers.lambda2 =
      3.0 * c / n * std::exp((n + 3.0) * std::log(x2) - log_c21 - 2.0 * log_k);
  out.multipliers.lambda3 = c * (1.0 + 9.0 / n) * x2 * x2;
  out.objective = c * std::exp(3.0 / n * log_c21 + (1.0 + 9.0 / n) * log_k);
  out.active_case = ActiveCase::Case4;
  return out;
}

PrimalSolution solve(const gp::GPCoefficients& coeffs, double k) {
  check_coefficients(coeffs);
  check_index(k);
  const double lr = log_residual(coeffs, k);
  if (std::fabs(lr) <= kBoundaryTolerance) {
    PrimalSolution out = solve_case3(coeffs, k);
    out.active_case = ActiveCase::Boundary;
    return out;
  }
  return lr < 0.0 ? solve_case3(coeffs, k) : solve_case4(coeffs, k);
}

std::vector<double> log_space(double lo, double hi, int count) {
  std::vector<double> out;
  if (count <= 0) return out;
  out.reserve(static_cast<std::size_t>(count));
  if (count == 1) {
    out.push_back(lo);
    return out;
  }
  const double a = std::log(lo);
  const double b = std::log(hi);
  for (int i = 0; i < count; ++i) {
    if (i == 0) out.push_back(lo);
    else if (i == count - 1) out.push_back(hi);
    else out.push_back(std::exp(a + (b - a) * i / (count - 1)));
  }
  return out;
}

std::vector<PrimalSolution> sweep(const gp::GPCoefficients& coeffs, double k_min, double k_max,
                                  int steps) {
  if (!(k_min > 1.0 && k_min < k_max))
    throw ValidationError(
        fmt::format("sweep needs 1 < k_min < k_max (got k_min={}, k_max={})", k_min, k_max));
  if (steps < 2) throw ValidationError(fmt::format("sweep needs steps >= 2 (got {})", steps));
  std::vector<PrimalSolution> rows;
  rows.reserve(static_cast<std::size_t>(steps));
  for (double k : log_space(k_min, k_max, steps)) rows.push_back(solve(coeffs, k));
  return rows;
}

}  // namespace springgp::primal
