#include "springgp/gp_model.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "springgp/errors.hpp"

namespace springgp::gp {

using std::numbers::pi;

GPCoefficients build_coefficients(const mechanics::MaterialSpec& material, double turns,
                                  const mechanics::LoadCase& load) {
  std::vector<std::string> bad = material.violations();
  for (auto& v : load.violations()) bad.push_back(std::move(v));
  if (!(turns >= 1.0)) bad.push_back(fmt::format("N must be >= 1 (got {})", turns));
  if (!bad.empty()) throw ConfigValidationError(std::move(bad));

  const double n = material.power_index;
  const double P = load.axial_load;
  GPCoefficients out;
  out.n = n;
  out.c = pi * pi * material.density * turns / 4.0;
  out.c11 = 2.0 * (n + 3.0) * P / (pi * load.allow_stress);
  out.c12 = 4.0 * P / (pi * load.allow_stress);
  out.c21 = (n + 3.0) * std::exp2(n) * P * turns /
            (material.shear_modulus() * load.allow_deflection);
  return out;
}

double objective(const GPCoefficients& coeffs, const DesignVariables& x) {
  return coeffs.c * x.x1 * x.x2 * x.x2;
}

ConstraintResiduals constraint_residuals(const GPCoefficients& coeffs, const DesignVariables& x,
                                         double k) {
  ConstraintResiduals r;
  const double inv_x2 = 1.0 / x.x2;
  r.g1 = coeffs.c11 * x.x1 * inv_x2 * inv_x2 * inv_x2 + coeffs.c12 * inv_x2 * inv_x2 - 1.0;
  // expm1 keeps g2 accurate when the deflection constraint is active.
  const double log_term =
      std::log(coeffs.c21) + 3.0 * std::log(x.x1) - (coeffs.n + 3.0) * std::log(x.x2);
  r.g2 = std::expm1(log_term);
  r.g3 = k * x.x2 - x.x1;
  return r;
}

bool is_feasible(const GPCoefficients& coeffs, const DesignVariables& x, double k, double tol) {
  const auto r = constraint_residuals(coeffs, x, k);
  return r.g1 <= tol && r.g2 <= tol && r.g3 / x.x1 <= tol;
}

}  // namespace springgp::gp
