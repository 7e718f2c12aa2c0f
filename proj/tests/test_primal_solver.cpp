#include "springgp/primal_solver.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "springgp/errors.hpp"
#include "support/oracles.hpp"

namespace springgp::primal {
namespace {

using gp::GPCoefficients;
using testing::rel;
namespace ref = testing::reference;

// n = 1, c21 = 1, c11 = 0: g(k) = k^6 - c12.
GPCoefficients sixth_power(double c12) { return {1.0, 0.0, c12, 1.0, 1.0}; }

// Two gradient rows of the Lagrangian, each normalised by its largest term.
std::pair<double, double> stationarity(const GPCoefficients& co, const PrimalSolution& s) {
  const double x1 = s.x.x1, x2 = s.x.x2, n = co.n, c = co.c;
  const auto& m = s.multipliers;
  const double t1[] = {c * x2 * x2, co.c11 * m.lambda1 * std::pow(x2, -3),
                       3 * co.c21 * m.lambda2 * x1 * x1 * std::pow(x2, -n - 3), -m.lambda3};
  const double t2[] = {2 * c * x1 * x2, -3 * co.c11 * m.lambda1 * x1 * std::pow(x2, -4),
                       -2 * m.lambda1 * co.c12 * std::pow(x2, -3),
                       -m.lambda2 * (n + 3) * co.c21 * std::pow(x1, 3) * std::pow(x2, -n - 4), s.k * m.lambda3};
  auto norm = [](auto& t) {
    double sum = 0, mx = 0;
    for (double v : t) sum += v, mx = std::max(mx, std::fabs(v));
    return std::fabs(sum) / mx;
  };
  return {norm(t1), norm(t2)};
}

TEST(KFeasibility, NearZeroAtPrintedRoot) {
  const auto co = testing::stainless_coefficients();
  const auto g = k_feasibility(co, 33.0756);
  // 33.0756 carries six significant figures; |dk/k| ~ 1e-7 times (6/n) = 60.
  EXPECT_LT(std::fabs(g.log_residual), 1e-5);
  EXPECT_LT(std::fabs(g.value), 1e-10);
  EXPECT_LT(std::fabs(k_feasibility(co, ref::k_star).log_residual), 1e-12);
}

TEST(KFeasibility, NegativeInsideInterval) {
  const auto g = k_feasibility(testing::stainless_coefficients(), 10.0);
  EXPECT_LT(g.log_residual, 0.0);
  EXPECT_LT(g.value, 0.0);
}

TEST(KFeasibility, SixthPowerSynthetic) {
  const auto co = sixth_power(64.0);
  EXPECT_NEAR(k_feasibility(co, 2.0).value, 0.0, 1e-12);
  EXPECT_LT(rel(k_feasibility(co, 3.0).value, 729.0 - 64.0), 1e-12);
  EXPECT_LT(rel(k_feasibility(co, 1.5).value, std::pow(1.5, 6) - 64.0), 1e-12);
}

TEST(KFeasibility, SignSurvivesUnderflow) {
  // c21^(2/n) = 1e-500 underflows a naive evaluation to -c11 k - c12 for every k.
  const GPCoefficients co{1.0, 1e-7, 6e-8, 1e-5, 0.02};
  EXPECT_EQ(std::pow(co.c21, 2.0 / co.n), 0.0);
  EXPECT_GT(k_feasibility(co, 50.0).log_residual, 0.0);
  EXPECT_LT(k_feasibility(co, 40.0).log_residual, 0.0);
  const auto iv = admissible_interval(co);
  EXPECT_LT(std::fabs(testing::log_g(co, iv.k_star)), 1e-9);
  EXPECT_GT(iv.k_star, 40.0);
  EXPECT_LT(iv.k_star, 50.0);
}

TEST(KFeasibility, RejectsNonPositiveK) {
  const auto co = testing::stainless_coefficients();
  EXPECT_THROW(k_feasibility(co, 0.0), ValidationError);
  EXPECT_THROW(k_feasibility(co, -0.6), ValidationError);
}

TEST(AdmissibleInterval, StainlessExample) {
  const auto iv = admissible_interval(testing::stainless_coefficients());
  EXPECT_EQ(iv.lower, 1.0);
  EXPECT_LT(rel(iv.k_star, 33.0756), 1e-4);
  EXPECT_LT(rel(iv.k_star, ref::k_star), 1e-12);
  ASSERT_TRUE(iv.negative_root.has_value());
  EXPECT_LT(rel(*iv.negative_root, -0.645162), 1e-3);
  EXPECT_LT(rel(*iv.negative_root, ref::negative_root), 1e-12);
  EXPECT_FALSE(iv.multiple_roots_suspected);
}

TEST(AdmissibleInterval, BracketAndSignPattern) {
  const auto co = testing::stainless_coefficients();
  const auto iv = admissible_interval(co);
  EXPECT_LT(testing::log_g(co, iv.bracket_lo), 0.0);
  EXPECT_GT(testing::log_g(co, iv.bracket_hi), 0.0);
  EXPECT_LE(iv.bracket_lo, iv.k_star);
  EXPECT_GE(iv.bracket_hi, iv.k_star);
  EXPECT_LT(testing::log_g(co, iv.k_star * (1 - 1e-9)), 0.0);
  EXPECT_GT(testing::log_g(co, iv.k_star * (1 + 1e-9)), 0.0);
}

TEST(AdmissibleInterval, SixthPowerRoots) {
  const auto iv = admissible_interval(sixth_power(64.0));
  EXPECT_LT(rel(iv.k_star, 2.0), 1e-12);
  EXPECT_FALSE(iv.negative_root.has_value());
}

TEST(AdmissibleInterval, RootAtOneIsNotAdmissible) {
  try {
    admissible_interval(sixth_power(1.0));
    FAIL() << "expected NoAdmissibleIndex";
  } catch (const NoAdmissibleIndex& e) {
    EXPECT_NEAR(e.k_star(), 1.0, 1e-12);
  }
}

TEST(AdmissibleInterval, RootBelowOneIsReported) {
  try {
    admissible_interval(sixth_power(std::pow(0.5, 6)));
    FAIL() << "expected NoAdmissibleIndex";
  } catch (const NoAdmissibleIndex& e) {
    EXPECT_LT(rel(e.k_star(), 0.5), 1e-10);
  }
}

TEST(AdmissibleInterval, UnboundedBelowCap) {
  // 6/n = 1: g = (c21^(1/3) - c11) k - c12 never turns positive.
  const GPCoefficients co{1.0, 1.0, 1.0, 1e-9, 6.0};
  EXPECT_THROW(admissible_interval(co), RootNotBracketed);
}

TEST(AdmissibleInterval, RandomProblems) {
  for (const auto& p : testing::random_problems(50, 101)) {
    const auto iv = admissible_interval(p.coeffs);
    EXPECT_GT(iv.k_star, 1.0);
    EXPECT_LT(std::fabs(testing::log_g(p.coeffs, iv.k_star)), 1e-9);
    EXPECT_LT(testing::log_g(p.coeffs, iv.k_star * (1 - 1e-8)), 0.0);
    EXPECT_GT(testing::log_g(p.coeffs, iv.k_star * (1 + 1e-8)), 0.0);
    EXPECT_LT(testing::log_g(p.coeffs, iv.bracket_lo), 0.0);
    EXPECT_GT(testing::log_g(p.coeffs, iv.bracket_hi), 0.0);
    EXPECT_FALSE(iv.multiple_roots_suspected);
  }
}

TEST(SolveCase3, K10Design) {
  const auto co = testing::stainless_coefficients();
  const auto s = solve_case3(co, 10.0);
  EXPECT_LT(rel(s.x.x1, 0.010249), 1e-5);
  EXPECT_LT(rel(s.x.x2, 0.0010249), 1e-5);
  EXPECT_LT(rel(s.x.x1, ref::x1_k10), 1e-14);
  EXPECT_LT(rel(s.objective, ref::mass_k10), 1e-14);
  EXPECT_EQ(s.multipliers.lambda2, 0.0);
  EXPECT_GT(s.multipliers.lambda1, 0.0);
  EXPECT_GT(s.multipliers.lambda3, 0.0);
  EXPECT_EQ(s.active_case, ActiveCase::Case3);
  const auto [r1, r2] = stationarity(co, s);
  EXPECT_LT(r1, 1e-10);
  EXPECT_LT(r2, 1e-10);
}

TEST(SolveCase3, AtRoot) {
  const auto s = solve_case3(testing::stainless_coefficients(), ref::k_star);
  EXPECT_LT(rel(s.x.x2, ref::x2_kstar), 1e-12);
  EXPECT_LT(rel(s.x.x1, ref::x1_kstar), 1e-12);
  EXPECT_LT(rel(s.objective, ref::mass_kstar), 1e-12);
  EXPECT_NEAR(s.objective, 0.0381, 1e-4);
}

TEST(SolveCase3, NoDirectShearLimit) {
  const GPCoefficients co{2.0, 1e-6, 0.0, 1e-5, 0.5};
  const double k = 4.0;
  ASSERT_LT(testing::log_g(co, k), 0.0);
  const auto s = solve_case3(co, k);
  EXPECT_LT(rel(s.x.x2, std::sqrt(co.c11 * k)), 1e-15);
  EXPECT_LT(rel(s.multipliers.lambda3 / (co.c * s.x.x2 * s.x.x2), 2.5), 1e-14);
}

TEST(SolveCase3, InapplicableAboveRoot) {
  EXPECT_THROW(solve_case3(testing::stainless_coefficients(), 40.0), CaseInapplicable);
}

TEST(SolveCase4, K40Design) {
  const auto co = testing::stainless_coefficients();
  const auto s = solve_case4(co, 40.0);
  EXPECT_LT(rel(s.x.x1, ref::x1_k40), 1e-12);
  EXPECT_LT(rel(s.x.x2, ref::x2_k40), 1e-12);
  EXPECT_LT(rel(s.objective, ref::mass_k40), 1e-12);
  EXPECT_EQ(s.multipliers.lambda1, 0.0);
  const auto [r1, r2] = stationarity(co, s);
  EXPECT_LT(r1, 1e-10);
  EXPECT_LT(r2, 1e-10);
}

TEST(SolveCase4, IntegerExponents) {
  const auto co = sixth_power(1.0);
  const auto s = solve_case4(co, 2.0);
  EXPECT_DOUBLE_EQ(s.x.x2, 8.0);
  EXPECT_DOUBLE_EQ(s.x.x1, 16.0);
  EXPECT_DOUBLE_EQ(s.multipliers.lambda3, 10.0 * co.c * 64.0);
}

TEST(SolveCase4, InapplicableInsideInterval) {
  EXPECT_THROW(solve_case4(testing::stainless_coefficients(), 10.0), CaseInapplicable);
}

TEST(SolveCase4, MultipliersPositive) {
  for (const auto& p : testing::random_problems(30, 202)) {
    const double k = 1.5 * admissible_interval(p.coeffs).k_star;
    const auto s = solve_case4(p.coeffs, k);
    EXPECT_GT(s.multipliers.lambda2, 0.0);
    EXPECT_GT(s.multipliers.lambda3, 0.0);
  }
}

TEST(CaseCoincidence, AtRootForRandomProblems) {
  auto problems = testing::random_problems(20, 303);
  problems.push_back({testing::stainless(), testing::stainless_load(), 10.0, testing::stainless_coefficients()});
  for (const auto& p : problems) {
    const double k = admissible_interval(p.coeffs).k_star;
    const auto a = solve_case3(p.coeffs, k);
    const auto b = solve_case4(p.coeffs, k);
    EXPECT_LT(rel(a.x.x1, b.x.x1), 1e-8);
    EXPECT_LT(rel(a.x.x2, b.x.x2), 1e-8);
    EXPECT_LT(rel(a.objective, b.objective), 1e-8);
  }
}

TEST(Solve, DispatchOnSign) {
  const auto co = testing::stainless_coefficients();
  EXPECT_EQ(solve(co, 10.0).active_case, ActiveCase::Case3);
  EXPECT_EQ(solve(co, ref::k_star).active_case, ActiveCase::Boundary);

  const auto s = solve(co, 40.0);
  EXPECT_EQ(s.active_case, ActiveCase::Case4);
  const auto g = gp::constraint_residuals(co, s.x, 40.0);
  EXPECT_LT(g.g1, 0.0);
  EXPECT_LT(std::fabs(g.g2), 1e-10);
  EXPECT_LT(std::fabs(g.g3 / s.x.x1), 1e-10);
}

TEST(Solve, BoundaryHasBothConstraintsActive) {
  const auto co = testing::stainless_coefficients();
  const auto s = solve(co, admissible_interval(co).k_star);
  const auto g = gp::constraint_residuals(co, s.x, s.k);
  EXPECT_LT(std::fabs(g.g1), 1e-10);
  EXPECT_LT(std::fabs(g.g2), 1e-10);
}

TEST(Solve, RejectsIndexAtOrBelowOne) {
  const auto co = testing::stainless_coefficients();
  EXPECT_THROW(solve(co, 1.0), ValidationError);
  EXPECT_THROW(solve(co, 0.5), ValidationError);
}

TEST(Solve, ActiveSetAndSlacknessOnRandomProblems) {
  for (const auto& p : testing::random_problems(20, 404)) {
    const double ks = admissible_interval(p.coeffs).k_star;
    for (double k : {1.0 + 0.3 * (ks - 1.0), ks, 2.0 * ks}) {
      const auto s = solve(p.coeffs, k);
      const auto g = gp::constraint_residuals(p.coeffs, s.x, k);
      const auto& m = s.multipliers;
      const double f = s.objective;
      EXPECT_GE(m.lambda1, 0.0);
      EXPECT_GE(m.lambda2, 0.0);
      EXPECT_GE(m.lambda3, 0.0);
      EXPECT_LT(std::fabs(m.lambda1 / f * g.g1), 1e-10);
      EXPECT_LT(std::fabs(m.lambda2 / f * g.g2), 1e-10);
      EXPECT_LT(std::fabs(m.lambda3 * s.x.x1 / f * g.g3 / s.x.x1), 1e-10);
      EXPECT_LT(std::fabs(g.g3 / s.x.x1), 1e-10);
      if (s.active_case == ActiveCase::Case3) {
        EXPECT_LT(std::fabs(g.g1), 1e-10);
        EXPECT_LT(g.g2, 0.0);
      } else if (s.active_case == ActiveCase::Case4) {
        EXPECT_LT(std::fabs(g.g2), 1e-10);
        EXPECT_LT(g.g1, 0.0);
      }
      const auto [r1, r2] = stationarity(p.coeffs, s);
      EXPECT_LT(r1, 1e-8);
      EXPECT_LT(r2, 1e-8);
    }
  }
}

TEST(Sweep, StainlessToRoot) {
  const auto co = testing::stainless_coefficients();
  const double ks = admissible_interval(co).k_star;
  const auto rows = sweep(co, 2.0, ks, 50);
  ASSERT_EQ(rows.size(), 50u);
  EXPECT_EQ(rows.front().k, 2.0);
  EXPECT_EQ(rows.back().k, ks);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    EXPECT_EQ(rows[i].active_case, ActiveCase::Case3);
    EXPECT_LT(rows[i].k, rows[i + 1].k);
    EXPECT_LT(rows[i].objective, rows[i + 1].objective);
  }
  EXPECT_EQ(rows.back().active_case, ActiveCase::Boundary);
}

TEST(Sweep, LogUniformSpacing) {
  const auto rows = sweep(testing::stainless_coefficients(), 2.0, 32.0, 5);
  const double expected[] = {2.0, 4.0, 8.0, 16.0, 32.0};
  for (int i = 0; i < 5; ++i) EXPECT_NEAR(rows[i].k, expected[i], 1e-12);
}

TEST(Sweep, TwoStepsAreTheEndpoints) {
  const auto rows = sweep(testing::stainless_coefficients(), 3.0, 7.0, 2);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].k, 3.0);
  EXPECT_EQ(rows[1].k, 7.0);
}

TEST(Sweep, RejectsBadRanges) {
  const auto co = testing::stainless_coefficients();
  EXPECT_THROW(sweep(co, 5.0, 5.0, 10), ValidationError);
  EXPECT_THROW(sweep(co, 6.0, 5.0, 10), ValidationError);
  EXPECT_THROW(sweep(co, 1.0, 5.0, 10), ValidationError);
  EXPECT_THROW(sweep(co, 2.0, 5.0, 1), ValidationError);
}

TEST(Sweep, MassIncreasesAcrossInterval) {
  const auto co = testing::stainless_coefficients();
  const double ks = admissible_interval(co).k_star;
  const auto rows = sweep(co, 1.0 + 1e-6, ks, 100);
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) EXPECT_LT(rows[i].objective, rows[i + 1].objective);
}

// Only the stress/index and deflection/index pairs can be active; the other
// KKT cases are inconsistent.
TEST(ExcludedCases, InteriorMultipliersForceZeroWire) {
  // lambda1 = lambda2 = 0: lambda3 = c x2^2, and the x2 row becomes 3 c k x2^2 = 0.
  const auto co = testing::stainless_coefficients();
  for (double x2 : {1e-4, 1e-3, 1e-2}) {
    const double k = 10.0, x1 = k * x2, lambda3 = co.c * x2 * x2;
    EXPECT_GT(2 * co.c * x1 * x2 + k * lambda3, 0.0);
  }
}

TEST(ExcludedCases, AllThreeActiveIsOverdetermined) {
  const auto co = testing::stainless_coefficients();
  const double k = 10.0;
  // g1 = g3 = 0 pins x2; g2 is then far from 0.
  const double x2a = std::sqrt(co.c11 * k + co.c12);
  EXPECT_LT(gp::constraint_residuals(co, {k * x2a, x2a}, k).g2, -0.9);
  // g2 = g3 = 0 pins a different x2; g1 is then violated.
  const double x2b = std::exp((std::log(co.c21) + 3 * std::log(k)) / co.n);
  EXPECT_GT(gp::constraint_residuals(co, {k * x2b, x2b}, k).g1, 1.0);
}

TEST(LogSpace, Endpoints) {
  const auto v = log_space(1.5, 9.0, 7);
  EXPECT_EQ(v.front(), 1.5);
  EXPECT_EQ(v.back(), 9.0);
  EXPECT_EQ(log_space(2.0, 3.0, 1).size(), 1u);
}

TEST(ActiveCaseNames, Strings) {
  EXPECT_EQ(to_string(ActiveCase::Case3), "Case3");
  EXPECT_EQ(to_string(ActiveCase::Case4), "Case4");
  EXPECT_EQ(to_string(ActiveCase::Boundary), "Boundary");
}

}  // namespace
}  // namespace springgp::primal
