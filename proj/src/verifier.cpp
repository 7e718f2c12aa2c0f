#include "springgp/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include <fmt/format.h>

#include "springgp/errors.hpp"

namespace springgp::verify {

namespace {

double normalized_sum(std::initializer_list<double> terms) {
  double sum = 0.0;
  double scale = 0.0;
  for (double t : terms) {
    sum += t;
    scale = std::max(scale, std::fabs(t));
  }
  return scale == 0.0 ? 0.0 : std::fabs(sum) / scale;
}

}  // namespace

KKTReport kkt_residuals(const gp::GPCoefficients& coeffs, double k,
                        const primal::PrimalSolution& candidate) {
  const double x1 = candidate.x.x1;
  const double x2 = candidate.x.x2;
  if (!(x1 > 0.0 && x2 > 0.0))
    throw ValidationError(fmt::format("candidate needs x1, x2 > 0 (got {}, {})", x1, x2));
  const auto& lam = candidate.multipliers;
  const double c = coeffs.c;
  const double n = coeffs.n;
  // c21 x1^2 x2^-(n+3): shared by both gradient rows.
  const double defl = std::exp(std::log(coeffs.c21) + 2.0 * std::log(x1) - (n + 3.0) * std::log(x2));

  KKTReport r;
  r.stationarity[0] = normalized_sum({c * x2 * x2, coeffs.c11 * lam.lambda1 / (x2 * x2 * x2),
                                      3.0 * lam.lambda2 * defl, -lam.lambda3});
  r.stationarity[1] = normalized_sum(
      {2.0 * c * x1 * x2, -3.0 * coeffs.c11 * lam.lambda1 * x1 / (x2 * x2 * x2 * x2),
       -2.0 * coeffs.c12 * lam.lambda1 / (x2 * x2 * x2), -(n + 3.0) * lam.lambda2 * defl * x1 / x2,
       k * lam.lambda3});

  const double f = gp::objective(coeffs, candidate.x);
  const std::array<double, 3> mu{lam.lambda1 / f, lam.lambda2 / f, lam.lambda3 * x1 / f};
  const auto g = gp::constraint_residuals(coeffs, candidate.x, k);
  const std::array<double, 3> gn{g.g1, g.g2, g.g3 / x1};

  r.max_violation = std::max(r.stationarity[0], r.stationarity[1]);
  for (std::size_t i = 0; i < 3; ++i) {
    r.complementary_slackness[i] = std::fabs(mu[i] * gn[i]);
    r.primal_feasibility[i] = std::max(0.0, gn[i]);
    r.dual_feasibility[i] = std::max(0.0, -mu[i]);
    r.max_violation = std::max({r.max_violation, r.complementary_slackness[i],
                                r.primal_feasibility[i], r.dual_feasibility[i]});
  }
  return r;
}

OracleResult grid_oracle(const gp::GPCoefficients& coeffs, double k, int refinements,
                         const OracleOptions& options) {
  if (!(k > 1.0)) throw ValidationError(fmt::format("k must exceed 1 (got {})", k));
  if (refinements < 1)
    throw ValidationError(fmt::format("refinements must be >= 1 (got {})", refinements));
  if (options.grid_points < 2)
    throw ValidationError(fmt::format("grid_points must be >= 2 (got {})", options.grid_points));

  gp::DesignVariables center;
  switch (options.seed) {
    case OracleSeed::ClosedForm: center = primal::solve(coeffs, k).x; break;
    case OracleSeed::DimensionalAnalysis: {
      const double x2 = std::sqrt(coeffs.c12);
      center = {k * x2, x2};
      break;
    }
    case OracleSeed::Explicit: center = options.center; break;
  }
  if (!(center.x1 > 0.0 && center.x2 > 0.0))
    throw ValidationError("oracle centre must have x1, x2 > 0");

  OracleResult out;
  bool have_best = false;
  std::size_t feasible = 0;
  double width = options.half_width;
  const int m = options.grid_points;

  for (int pass = 0; pass < refinements; ++pass) {
    const double span = std::pow(10.0, width);
    const auto xs1 = primal::log_space(center.x1 / span, center.x1 * span, m);
    const auto xs2 = primal::log_space(center.x2 / span, center.x2 * span, m);
    bool best_on_edge = false;
    bool improved = false;

    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) {
        const gp::DesignVariables x{xs1[i], xs2[j]};
        ++out.evaluations;
        if (!gp::is_feasible(coeffs, x, k, options.feasibility_tol)) continue;
        ++feasible;
        const double f = gp::objective(coeffs, x);
        const bool better =
            !have_best || f < out.best_objective ||
            (f == out.best_objective &&
             (x.x1 < out.best_point.x1 || (x.x1 == out.best_point.x1 && x.x2 < out.best_point.x2)));
        if (better) {
          have_best = true;
          improved = true;
          out.best_objective = f;
          out.best_point = x;
          best_on_edge = i == 0 || j == 0 || i == m - 1 || j == m - 1;
        }
      }
    }

    if (!have_best)
      throw OracleInfeasible(
          fmt::format("no feasible grid point in x1 in [{:g}, {:g}], x2 in [{:g}, {:g}]",
                      xs1.front(), xs1.back(), xs2.front(), xs2.back()),
          xs1.front(), xs1.back(), xs2.front(), xs2.back());

    out.pass_objectives.push_back(out.best_objective);
    center = out.best_point;
    // An incumbent on the edge means the optimum may lie outside; recentre without shrinking.
    if (!(improved && best_on_edge)) width /= options.shrink;
  }

  out.feasible_fraction = static_cast<double>(feasible) / static_cast<double>(out.evaluations);
  return out;
}

double duality_gap(double primal_objective, double dual_objective) {
  if (!(primal_objective > 0.0))
    throw ValidationError(fmt::format("primal objective must be > 0 (got {})", primal_objective));
  return (primal_objective - dual_objective) / primal_objective;
}

}  // namespace springgp::verify
