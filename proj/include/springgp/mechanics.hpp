#pragma once

#include <string>
#include <vector>

// Torsion mechanics of a helical spring wound from power-law (Hollomon) wire.
// All quantities are SI: Pa, m, N, kg.
namespace springgp::mechanics {

/// Power-law material, sigma = K |eps|^(n-1) eps.
struct MaterialSpec {
  double bulk_modulus = 0.0;   ///< K [Pa]
  double power_index = 1.0;    ///< n [-]
  double poisson_ratio = 0.0;  ///< nu [-]
  double density = 0.0;        ///< rho [kg/m^3]

  /// G = K / (1 + nu) [Pa]. Always derived, never stored.
  double shear_modulus() const { return bulk_modulus / (1.0 + poisson_ratio); }

  /// Every violated invariant (K > 0, rho > 0, n > 0, 0 <= nu < 0.5), empty when valid.
  std::vector<std::string> violations() const;
  /// Throws ValidationError listing all violations.
  void validate() const;
  /// Non-fatal notes, e.g. n > 1 is unusual for Hollomon metals.
  std::vector<std::string> warnings() const;
};

struct SpringGeometry {
  double coil_diameter = 0.0;  ///< D [m]
  double wire_diameter = 0.0;  ///< d [m]
  double turns = 1.0;          ///< N [-]

  /// C = D / d.
  double spring_index() const { return coil_diameter / wire_diameter; }

  std::vector<std::string> violations() const;
  void validate() const;
};

struct LoadCase {
  double axial_load = 0.0;        ///< P [N]
  double allow_stress = 0.0;      ///< tau_max [Pa]
  double allow_deflection = 0.0;  ///< delta_max [m]

  std::vector<std::string> violations() const;
  void validate() const;
};

struct WireTorsion {
  double torque = 0.0;       ///< T [N m]
  double area_moment = 0.0;  ///< I_n [m^(n+3)]
  double twist_rate = 0.0;   ///< alpha [rad/m]
};

/// sigma = K |eps|^(n-1) eps. Exactly 0 at eps = 0 for every n.
double uniaxial_stress(double strain, const MaterialSpec& material);

/// I_n = pi d^(n+3) / ((n+3) 2^(n+2)); the polar moment pi d^4/32 at n = 1.
double generalized_area_moment(double wire_diameter, double power_index);

/// Torsion plus direct shear at radius r in [0, d/2]. Throws ValidationError outside.
double shear_stress_at_radius(const LoadCase& load, const SpringGeometry& geom,
                              const MaterialSpec& material, double radius);

/// K_s = 1 + 2 / ((n+3) C).
double stress_correction_factor(double power_index, double spring_index);

/// Stress at the wire surface, 2(n+3) P D / (pi d^3) * K_s.
double max_shear_stress(const LoadCase& load, const SpringGeometry& geom,
                        const MaterialSpec& material);

/// delta = (n+3) 2^(n+2) D^3 P N / (4 G d^(n+3)).
double tip_deflection(const LoadCase& load, const SpringGeometry& geom,
                      const MaterialSpec& material);

/// alpha = 2 (T / (2 G I_n))^(1/n).
double rate_of_twist(const WireTorsion& torsion, const MaterialSpec& material);

/// Torque T = P D / 2 on the wire section, with I_n and alpha filled in.
WireTorsion wire_torsion(const LoadCase& load, const SpringGeometry& geom,
                         const MaterialSpec& material);

/// m = (pi d^2 / 4)(pi D) rho N.
double spring_mass(const SpringGeometry& geom, const MaterialSpec& material);

}  // namespace springgp::mechanics
