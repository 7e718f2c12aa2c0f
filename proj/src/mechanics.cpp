#include "springgp/mechanics.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "springgp/errors.hpp"
#include "springgp/numeric.hpp"

namespace springgp::mechanics {

namespace {

using std::numbers::pi;

void throw_if_any(const std::vector<std::string>& violations, const char* what) {
  if (violations.empty()) return;
  std::string msg = fmt::format("invalid {}:", what);
  for (const auto& v : violations) msg += " " + v + ";";
  msg.pop_back();
  throw ValidationError(msg);
}

}  // namespace

std::vector<std::string> MaterialSpec::violations() const {
  std::vector<std::string> out;
  if (!(bulk_modulus > 0.0)) out.push_back(fmt::format("K must be > 0 (got {})", bulk_modulus));
  if (!(power_index > 0.0)) out.push_back(fmt::format("n must be > 0 (got {})", power_index));
  if (!(poisson_ratio >= 0.0 && poisson_ratio < 0.5))
    out.push_back(fmt::format("nu must lie in [0, 0.5) (got {})", poisson_ratio));
  if (!(density > 0.0)) out.push_back(fmt::format("rho must be > 0 (got {})", density));
  return out;
}

void MaterialSpec::validate() const { throw_if_any(violations(), "material"); }

std::vector<std::string> MaterialSpec::warnings() const {
  std::vector<std::string> out;
  if (power_index > 1.0)
    out.push_back(fmt::format(
        "power index n = {} exceeds 1; Hollomon metals usually have n <= 1", power_index));
  return out;
}

std::vector<std::string> SpringGeometry::violations() const {
  std::vector<std::string> out;
  if (!(coil_diameter > 0.0)) out.push_back(fmt::format("D must be > 0 (got {})", coil_diameter));
  if (!(wire_diameter > 0.0)) out.push_back(fmt::format("d must be > 0 (got {})", wire_diameter));
  if (!(turns >= 1.0)) out.push_back(fmt::format("N must be >= 1 (got {})", turns));
  if (coil_diameter > 0.0 && wire_diameter > 0.0 && !(spring_index() > 1.0))
    out.push_back(fmt::format("spring index D/d must be > 1 (got {})", spring_index()));
  return out;
}

void SpringGeometry::validate() const { throw_if_any(violations(), "spring geometry"); }

std::vector<std::string> LoadCase::violations() const {
  std::vector<std::string> out;
  if (!(axial_load > 0.0)) out.push_back(fmt::format("P must be > 0 (got {})", axial_load));
  if (!(allow_stress > 0.0)) out.push_back(fmt::format("tau_max must be > 0 (got {})", allow_stress));
  if (!(allow_deflection > 0.0))
    out.push_back(fmt::format("delta_max must be > 0 (got {})", allow_deflection));
  return out;
}

void LoadCase::validate() const { throw_if_any(violations(), "load case"); }

double uniaxial_stress(double strain, const MaterialSpec& material) {
  if (strain == 0.0) return 0.0;
  const double magnitude = material.bulk_modulus * numeric::pow_pos(std::fabs(strain), material.power_index);
  return strain > 0.0 ? magnitude : -magnitude;
}

double generalized_area_moment(double wire_diameter, double power_index) {
  const double n = power_index;
  return pi * numeric::pow_pos(wire_diameter, n + 3.0) / ((n + 3.0) * std::exp2(n + 2.0));
}

double shear_stress_at_radius(const LoadCase& load, const SpringGeometry& geom,
                              const MaterialSpec& material, double radius) {
  geom.validate();
  const double d = geom.wire_diameter;
  if (!(radius >= 0.0 && radius <= 0.5 * d))
    throw ValidationError(fmt::format("radius {} outside [0, d/2] = [0, {}]", radius, 0.5 * d));
  const double n = material.power_index;
  const double P = load.axial_load;
  const double torsion = std::exp2(n + 1.0) * (n + 3.0) * P * geom.coil_diameter *
                         numeric::pow_pos(radius, n) / (pi * numeric::pow_pos(d, n + 3.0));
  const double direct = 4.0 * P / (pi * d * d);
  return torsion + direct;
}

double stress_correction_factor(double power_index, double spring_index) {
  return 1.0 + 2.0 / ((power_index + 3.0) * spring_index);
}

double max_shear_stress(const LoadCase& load, const SpringGeometry& geom,
                        const MaterialSpec& material) {
  geom.validate();
  const double n = material.power_index;
  const double d = geom.wire_diameter;
  return 2.0 * (n + 3.0) * load.axial_load * geom.coil_diameter / (pi * d * d * d) *
         stress_correction_factor(n, geom.spring_index());
}

double tip_deflection(const LoadCase& load, const SpringGeometry& geom,
                      const MaterialSpec& material) {
  const double n = material.power_index;
  const double D = geom.coil_diameter;
  return (n + 3.0) * std::exp2(n + 2.0) * D * D * D * load.axial_load * geom.turns /
         (4.0 * material.shear_modulus() * numeric::pow_pos(geom.wire_diameter, n + 3.0));
}

double rate_of_twist(const WireTorsion& torsion, const MaterialSpec& material) {
  if (torsion.torque < 0.0)
    throw ValidationError(fmt::format("torque must be >= 0 (got {})", torsion.torque));
  const double base = torsion.torque / (2.0 * material.shear_modulus() * torsion.area_moment);
  return 2.0 * numeric::pow_pos(base, 1.0 / material.power_index);
}

WireTorsion wire_torsion(const LoadCase& load, const SpringGeometry& geom,
                         const MaterialSpec& material) {
  WireTorsion t;
  t.torque = 0.5 * load.axial_load * geom.coil_diameter;
  t.area_moment = generalized_area_moment(geom.wire_diameter, material.power_index);
  t.twist_rate = rate_of_twist(t, material);
  return t;
}

double spring_mass(const SpringGeometry& geom, const MaterialSpec& material) {
  const double d = geom.wire_diameter;
  return (pi * d * d / 4.0) * (pi * geom.coil_diameter) * material.density * geom.turns;
}

}  // namespace springgp::mechanics
