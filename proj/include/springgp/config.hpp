#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "springgp/mechanics.hpp"

// Flat key = value design-problem files. Keys carry their unit in the name;
// MPa values are converted to Pa here and nowhere else.
//
//   material.K_MPa        power-law constant K [MPa]          required
//   material.n            power index [-]                     required
//   material.nu           Poisson ratio [-]                   required
//   material.rho_kg_m3    density [kg/m^3]                    required
//   load.P_N              axial load [N]                      required
//   load.tau_max_MPa      allowable shear stress [MPa]        required
//   load.delta_max_m      allowable tip deflection [m]        required
//   spring.turns          active turns N [-]                  required
//   options.k             spring index for solve/verify
//   options.k_min, options.k_max, options.steps   sweep range
//   options.index_min, options.index_max          practical index range (default 4, 12)
//   options.D_m, options.d_m                      design to analyze [m]
//   options.out                                   CSV output path
//   options.kkt_tolerance                         default 1e-8
//   options.oracle_refinements                    default 3
//
// '#' starts a comment; blank lines are ignored; each key may appear once.
namespace springgp::config {

inline constexpr double kPascalPerMegapascal = 1e6;

struct Options {
  std::optional<double> k;
  std::optional<double> k_min;
  std::optional<double> k_max;
  std::optional<int> steps;
  double index_min = 4.0;
  double index_max = 12.0;
  std::optional<double> coil_diameter;
  std::optional<double> wire_diameter;
  std::optional<std::string> out;
  double kkt_tolerance = 1e-8;
  int oracle_refinements = 3;
};

struct DesignProblemConfig {
  mechanics::MaterialSpec material;
  mechanics::LoadCase load;
  double turns = 0.0;
  Options options;
};

/// Throws ParseError for syntax, unknown, duplicate or missing keys and
/// ConfigValidationError listing every violated invariant.
DesignProblemConfig parse_config_text(std::string_view text);
DesignProblemConfig parse_config(const std::filesystem::path& path);

/// Every violated invariant, named by config key. Empty when valid.
std::vector<std::string> violations(const DesignProblemConfig& cfg);

}  // namespace springgp::config
