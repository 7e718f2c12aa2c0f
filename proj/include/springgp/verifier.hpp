#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "springgp/gp_model.hpp"
#include "springgp/primal_solver.hpp"

// Independent checks of a candidate design: scaled KKT residuals, a
// brute-force log-grid search of the feasible region, and the duality gap.
namespace springgp::verify {

/// Every entry is dimensionless. Multipliers are scaled to mu1 = lambda1/f, mu2 = lambda2/f,
/// mu3 = lambda3 x1/f, and g3 is normalised by x1, so one tolerance covers all rows.
struct KKTReport {
  std::array<double, 2> stationarity{};  ///< |sum of terms| / max |term|
  std::array<double, 3> complementary_slackness{};
  std::array<double, 3> primal_feasibility{};  ///< positive part of g
  std::array<double, 3> dual_feasibility{};    ///< negative part of mu
  double max_violation = 0.0;
};

KKTReport kkt_residuals(const gp::GPCoefficients& coeffs, double k,
                        const primal::PrimalSolution& candidate);

enum class OracleSeed {
  ClosedForm,           ///< centre on primal::solve
  DimensionalAnalysis,  ///< x2 ~ sqrt(c12), x1 = k x2; trusts no solver
  Explicit,             ///< centre on OracleOptions::center
};

struct OracleOptions {
  OracleSeed seed = OracleSeed::ClosedForm;
  gp::DesignVariables center{};
  int grid_points = 400;     ///< per axis, per pass
  double half_width = 1.0;   ///< decades either side of the centre on the first pass
  double shrink = 10.0;      ///< half-width divisor between passes
  double feasibility_tol = 1e-9;
};

struct OracleResult {
  gp::DesignVariables best_point;
  double best_objective = 0.0;
  std::size_t evaluations = 0;
  double feasible_fraction = 0.0;
  std::vector<double> pass_objectives;  ///< incumbent after each pass
};

/// Throws OracleInfeasible when the first pass finds no feasible point.
OracleResult grid_oracle(const gp::GPCoefficients& coeffs, double k, int refinements,
                         const OracleOptions& options = {});

/// (primal - dual) / primal.
double duality_gap(double primal_objective, double dual_objective);

}  // namespace springgp::verify
