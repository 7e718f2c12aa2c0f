#pragma once

#include "springgp/mechanics.hpp"

// The fixed three-constraint geometric program for minimum-mass spring design:
//
//   minimize   f  = c x1 x2^2
//   subject to g1 = c11 x1 x2^-3 + c12 x2^-2 - 1 <= 0   (shear stress)
//              g2 = c21 x1^3 x2^-(n+3) - 1      <= 0   (tip deflection)
//              g3 = k x2 - x1                   <= 0   (spring index)
//
// with x1 = D (mean coil diameter) and x2 = d (wire diameter). The spring
// index k is a problem parameter, not a decision variable.
namespace springgp::gp {

struct GPCoefficients {
  double c = 0.0;    ///< pi^2 rho N / 4
  double c11 = 0.0;  ///< 2 (n+3) P / (pi tau_max)
  double c12 = 0.0;  ///< 4 P / (pi tau_max)
  double c21 = 0.0;  ///< (n+3) 2^n P N / (G delta_max)
  double n = 1.0;    ///< power index, carried for the g2 exponent
};

struct DesignVariables {
  double x1 = 0.0;  ///< D [m]
  double x2 = 0.0;  ///< d [m]
};

struct ConstraintResiduals {
  double g1 = 0.0;  ///< stress, dimensionless
  double g2 = 0.0;  ///< deflection, dimensionless
  double g3 = 0.0;  ///< index, metres
};

GPCoefficients build_coefficients(const mechanics::MaterialSpec& material, double turns,
                                  const mechanics::LoadCase& load);

double objective(const GPCoefficients& coeffs, const DesignVariables& x);

ConstraintResiduals constraint_residuals(const GPCoefficients& coeffs, const DesignVariables& x,
                                         double k);

/// All of g1, g2 and g3/x1 are <= tol.
bool is_feasible(const GPCoefficients& coeffs, const DesignVariables& x, double k, double tol);

}  // namespace springgp::gp
