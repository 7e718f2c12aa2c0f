#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "springgp/gp_model.hpp"

// Closed-form KKT solution of the spring program for a chosen spring index k.
//
// With the index constraint always active (x1 = k x2) two cases survive:
//   Case3: stress active,     x2 = sqrt(c11 k + c12)
//   Case4: deflection active, x2 = c21^(1/n) k^(3/n)
// Which one applies is decided by the sign of
//   g(k) = c21^(2/n) k^(6/n) - c11 k - c12,
// negative for Case3 and positive for Case4. The two coincide at the root k*.
namespace springgp::primal {

/// Relative tolerance in k for the root of g.
inline constexpr double kRootTolerance = 1e-12;
/// |ln(c21^(2/n) k^(6/n)) - ln(c11 k + c12)| at or below this dispatches as Boundary.
inline constexpr double kBoundaryTolerance = 1e-9;
/// Upper cap for bracket doubling.
inline constexpr double kBracketCap = 1e6;

struct FeasibilityValue {
  /// ln(c21^(2/n) k^(6/n)) - ln(c11 k + c12); same sign as g, never overflows.
  double log_residual = 0.0;
  /// g(k) itself, (c11 k + c12) * expm1(log_residual). May be +inf for huge k.
  double value = 0.0;
};

FeasibilityValue k_feasibility(const gp::GPCoefficients& coeffs, double k);

struct KInterval {
  double lower = 1.0;  ///< exclusive
  double k_star = 0.0;
  /// Root of the even extension c21^(2/n)|k|^(6/n) - c11 k - c12 on (-c12/c11, 0).
  std::optional<double> negative_root;
  /// Bracket handed to bisection; g(bracket_lo) < 0 < g(bracket_hi).
  double bracket_lo = 1.0;
  double bracket_hi = 2.0;
  /// g turned positive somewhere inside (1, k*) during the post-solve scan.
  bool multiple_roots_suspected = false;
};

/// (1, k*] on which the stress-active case is feasible.
/// Throws NoAdmissibleIndex when k* <= 1 and RootNotBracketed when g < 0 up to kBracketCap.
KInterval admissible_interval(const gp::GPCoefficients& coeffs);

enum class ActiveCase { Case3, Case4, Boundary };

std::string_view to_string(ActiveCase c);

struct KKTMultipliers {
  double lambda1 = 0.0;  ///< stress
  double lambda2 = 0.0;  ///< deflection
  double lambda3 = 0.0;  ///< index
};

struct PrimalSolution {
  double k = 0.0;
  gp::DesignVariables x;
  KKTMultipliers multipliers;
  double objective = 0.0;
  ActiveCase active_case = ActiveCase::Case3;
};

/// Stress and index constraints active. Throws CaseInapplicable if g(k) > 0.
PrimalSolution solve_case3(const gp::GPCoefficients& coeffs, double k);

/// Deflection and index constraints active. Throws CaseInapplicable if g(k) < 0.
PrimalSolution solve_case4(const gp::GPCoefficients& coeffs, double k);

/// Dispatch on the sign of g(k). Requires k > 1.
PrimalSolution solve(const gp::GPCoefficients& coeffs, double k);

/// `steps` solutions at log-uniform k from k_min to k_max inclusive.
std::vector<PrimalSolution> sweep(const gp::GPCoefficients& coeffs, double k_min, double k_max,
                                  int steps);

/// Log-uniform grid from lo to hi inclusive; endpoints are exact.
std::vector<double> log_space(double lo, double hi, int count);

}  // namespace springgp::primal
