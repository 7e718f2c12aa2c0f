#pragma once

#include <array>

#include "springgp/gp_model.hpp"
#include "springgp/primal_solver.hpp"

// Geometric-programming dual of the spring program, written with the index
// constraint in posynomial form k x1^-1 x2 <= 1:
//
//   maximize  v = c^l01 (c11 (l11+l12)/l11)^l11 (c12 (l11+l12)/l12)^l12 c21^l21 k^l31
//   s.t.      l01 = 1
//             l01 + l11 + 3 l21 - l31 = 0                     (x1 orthogonality)
//             2 l01 - 3 l11 - 2 l12 - (n+3) l21 + l31 = 0     (x2 orthogonality)
//             l11 + l12 >= 0, l21 >= 0, l31 >= 0
//
// The two equalities leave l11 and l12 free; stationarity in both is only
// possible at the root k* of g(k), so the dual is solved there only.
namespace springgp::dual {

struct DualMultipliers {
  double l01 = 1.0;
  double l11 = 0.0;
  double l12 = 0.0;
  double l21 = 0.0;
  double l31 = 0.0;
};

struct DualSolution {
  double k_star = 0.0;
  double v_star = 0.0;
  double log_v_star = 0.0;
  DualMultipliers multipliers;
  gp::DesignVariables recovered;
};

/// l21 and l31 implied by the orthogonality conditions for given (l11, l12).
DualMultipliers complete_multipliers(double n, double l11, double l12);

/// Normality and both orthogonality equations, each 0 for a consistent set.
std::array<double, 3> equality_residuals(double n, const DualMultipliers& m);

/// ln v for free weights (l11, l12) > 0. Throws ValidationError if l21 or l31 < 0.
double dual_log_objective(const gp::GPCoefficients& coeffs, double k, double l11, double l12);
double dual_objective(const gp::GPCoefficients& coeffs, double k, double l11, double l12);

struct MultiplierRatios {
  double ratio11 = 0.0;  ///< (l11 + l12) / l11 = c21^(2/n) k^(6/n - 1) / c11
  double ratio12 = 0.0;  ///< (l11 + l12) / l12 = c21^(2/n) k^(6/n) / c12
  double log_ratio11 = 0.0;
  double log_ratio12 = 0.0;

  /// 1/ratio11 + 1/ratio12; equals 1 exactly when g(k) = 0.
  double consistency() const;
};

/// Ratios forced by d ln v / d l11 = d ln v / d l12 = 0. Needs c11 > 0.
MultiplierRatios stationary_multiplier_ratios(const gp::GPCoefficients& coeffs, double k);

/// Dual optimum at k*. l11 is pinned at half its upper bound for reproducibility;
/// v* and the recovered design do not depend on that choice.
DualSolution solve_dual(const gp::GPCoefficients& coeffs);

/// x1 = c21^(1/n) k^(1+3/n), x2 = c21^(1/n) k^(3/n).
gp::DesignVariables recover_primal(const gp::GPCoefficients& coeffs, const DualSolution& dual);

/// Residuals of the primal-recovery system at x, each written as (lhs/rhs - 1):
///   c x1 x2^2 = l01 v*,  c11 x1 x2^-3 = l11/(l11+l12),  c12 x2^-2 = l12/(l11+l12),
///   c21 x1^3 x2^-(n+3) = 1,  k x2 / x1 = 1.
std::array<double, 5> recovery_residuals(const gp::GPCoefficients& coeffs,
                                         const DualSolution& dual, const gp::DesignVariables& x);

/// Primal KKT multipliers implied by the dual weights: lambda_i = v* * (sum of weights in g_i),
/// with the index multiplier divided by x1 because g3 = x1 (k x2/x1 - 1).
primal::PrimalSolution to_primal_solution(const gp::GPCoefficients& coeffs,
                                          const DualSolution& dual);

}  // namespace springgp::dual
