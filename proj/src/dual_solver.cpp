#include "springgp/dual_solver.hpp"

#include <cmath>

#include <fmt/format.h>

#include "springgp/errors.hpp"

namespace springgp::dual {

DualMultipliers complete_multipliers(double n, double l11, double l12) {
  DualMultipliers m;
  m.l01 = 1.0;
  m.l11 = l11;
  m.l12 = l12;
  m.l21 = (3.0 - 2.0 * l11 - 2.0 * l12) / n;
  m.l31 = 1.0 + 9.0 / n + (1.0 - 6.0 / n) * l11 - (6.0 / n) * l12;
  return m;
}

std::array<double, 3> equality_residuals(double n, const DualMultipliers& m) {
  return {m.l01 - 1.0, m.l01 + m.l11 + 3.0 * m.l21 - m.l31,
          2.0 * m.l01 - 3.0 * m.l11 - 2.0 * m.l12 - (n + 3.0) * m.l21 + m.l31};
}

double dual_log_objective(const gp::GPCoefficients& coeffs, double k, double l11, double l12) {
  if (!(l11 > 0.0 && l12 > 0.0))
    throw ValidationError(fmt::format("dual weights l11, l12 must be > 0 (got {}, {})", l11, l12));
  if (!(k > 0.0)) throw ValidationError(fmt::format("k must be > 0 (got {})", k));
  const auto m = complete_multipliers(coeffs.n, l11, l12);
  if (m.l21 < 0.0 || m.l31 < 0.0)
    throw ValidationError(fmt::format(
        "weights (l11={}, l12={}) give l21={} and l31={}; both must be >= 0", l11, l12, m.l21,
        m.l31));
  const double sum = l11 + l12;
  double lv = std::log(coeffs.c);
  lv += l11 * std::log(coeffs.c11 * sum / l11);
  lv += l12 * std::log(coeffs.c12 * sum / l12);
  if (m.l21 != 0.0) lv += m.l21 * std::log(coeffs.c21);
  lv += m.l31 * std::log(k);
  return lv;
}

double dual_objective(const gp::GPCoefficients& coeffs, double k, double l11, double l12) {
  return std::exp(dual_log_objective(coeffs, k, l11, l12));
}

double MultiplierRatios::consistency() const {
  return std::exp(-log_ratio11) + std::exp(-log_ratio12);
}

MultiplierRatios stationary_multiplier_ratios(const gp::GPCoefficients& coeffs, double k) {
  if (!(coeffs.c11 > 0.0 && coeffs.c12 > 0.0 && coeffs.c21 > 0.0))
    throw ValidationError("stationary ratios need c11, c12, c21 > 0");
  if (!(k > 1.0)) throw ValidationError(fmt::format("k must exceed 1 (got {})", k));
  const double n = coeffs.n;
  const double common = (2.0 / n) * std::log(coeffs.c21);
  MultiplierRatios r;
  r.log_ratio11 = common + (6.0 / n - 1.0) * std::log(k) - std::log(coeffs.c11);
  r.log_ratio12 = common + (6.0 / n) * std::log(k) - std::log(coeffs.c12);
  r.ratio11 = std::exp(r.log_ratio11);
  r.ratio12 = std::exp(r.log_ratio12);
  return r;
}

DualSolution solve_dual(const gp::GPCoefficients& coeffs) {
  const auto interval = primal::admissible_interval(coeffs);
  const double k = interval.k_star;
  const double n = coeffs.n;
  const auto ratios = stationary_multiplier_ratios(coeffs, k);

  // Upper bound on l11 keeps l21 >= 0: l11 <= (3/2) c11 c21^(-2/n) k^(1-6/n) = 1.5 / ratio11.
  const double l11 = 0.75 * std::exp(-ratios.log_ratio11);
  const double l12 = (ratios.ratio11 - 1.0) * l11;

  DualSolution out;
  out.k_star = k;
  out.multipliers = complete_multipliers(n, l11, l12);
  out.log_v_star =
      std::log(coeffs.c) + (3.0 / n) * std::log(coeffs.c21) + (1.0 + 9.0 / n) * std::log(k);
  out.v_star = std::exp(out.log_v_star);
  out.recovered = recover_primal(coeffs, out);
  return out;
}

gp::DesignVariables recover_primal(const gp::GPCoefficients& coeffs, const DualSolution& dual) {
  const double n = coeffs.n;
  const double log_k = std::log(dual.k_star);
  const double log_base = std::log(coeffs.c21) / n;
  return {std::exp(log_base + (1.0 + 3.0 / n) * log_k), std::exp(log_base + (3.0 / n) * log_k)};
}

std::array<double, 5> recovery_residuals(const gp::GPCoefficients& coeffs,
                                         const DualSolution& dual, const gp::DesignVariables& x) {
  const auto& m = dual.multipliers;
  const double sum = m.l11 + m.l12;
  const double lx1 = std::log(x.x1);
  const double lx2 = std::log(x.x2);
  const double n = coeffs.n;
  return {
      std::expm1(std::log(coeffs.c) + lx1 + 2.0 * lx2 - std::log(m.l01) - dual.log_v_star),
      std::expm1(std::log(coeffs.c11) + lx1 - 3.0 * lx2 - std::log(m.l11 / sum)),
      std::expm1(std::log(coeffs.c12) - 2.0 * lx2 - std::log(m.l12 / sum)),
      std::expm1(std::log(coeffs.c21) + 3.0 * lx1 - (n + 3.0) * lx2),
      std::expm1(std::log(dual.k_star) + lx2 - lx1),
  };
}

primal::PrimalSolution to_primal_solution(const gp::GPCoefficients& coeffs,
                                          const DualSolution& dual) {
  const auto& m = dual.multipliers;
  primal::PrimalSolution out;
  out.k = dual.k_star;
  out.x = dual.recovered;
  out.multipliers.lambda1 = dual.v_star * (m.l11 + m.l12);
  out.multipliers.lambda2 = dual.v_star * m.l21;
  out.multipliers.lambda3 = dual.v_star * m.l31 / dual.recovered.x1;
  out.objective = gp::objective(coeffs, dual.recovered);
  out.active_case = primal::ActiveCase::Boundary;
  return out;
}

}  // namespace springgp::dual
