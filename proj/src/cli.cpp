#include "springgp/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "springgp/dual_solver.hpp"
#include "springgp/errors.hpp"
#include "springgp/gp_model.hpp"
#include "springgp/mechanics.hpp"
#include "springgp/primal_solver.hpp"
#include "springgp/verifier.hpp"

namespace springgp::cli {

std::string format_full(double v) { return fmt::format("{:.17g}", v); }
std::string format_short(double v) { return fmt::format("{:.6g}", v); }

namespace {

inline constexpr int kPlotSamples = 200;
inline constexpr double kPlotOvershoot = 1.2;
inline constexpr int kDefaultSweepSteps = 50;
inline constexpr double kDefaultSweepStart = 2.0;
inline constexpr double kOracleAgreement = 5e-3;
inline constexpr double kDualityGapTolerance = 1e-8;

struct Field {
  std::string column;
  std::string label;
  std::string full;
  std::string brief;
  bool in_csv = true;
};

using Record = std::vector<Field>;

Field num(std::string column, std::string label, double v) {
  return {std::move(column), std::move(label), format_full(v), format_short(v)};
}

Field text(std::string column, std::string label, std::string v) {
  return {std::move(column), std::move(label), v, v};
}

Field table_only(std::string label, std::string v) { return {"", std::move(label), v, v, false}; }

void write_csv(std::ostream& os, const std::vector<Record>& rows) {
  if (rows.empty()) return;
  bool first = true;
  for (const auto& f : rows.front()) {
    if (!f.in_csv) continue;
    os << (first ? "" : ",") << f.column;
    first = false;
  }
  os << '\n';
  for (const auto& row : rows) {
    first = true;
    for (const auto& f : row) {
      if (!f.in_csv) continue;
      os << (first ? "" : ",") << f.full;
      first = false;
    }
    os << '\n';
  }
}

void write_record_table(std::ostream& os, std::string_view title, const Record& r) {
  std::size_t width = 0;
  for (const auto& f : r) width = std::max(width, f.label.size());
  os << title << '\n';
  for (const auto& f : r) os << fmt::format("  {:<{}}  {}\n", f.label, width, f.brief);
}

void write_rows_table(std::ostream& os, std::string_view title, const std::vector<Record>& rows) {
  os << title << '\n';
  if (rows.empty()) return;
  std::vector<std::size_t> widths;
  for (const auto& f : rows.front()) widths.push_back(f.label.size());
  for (const auto& row : rows)
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].brief.size());
  std::string line = " ";
  for (std::size_t i = 0; i < widths.size(); ++i)
    line += fmt::format(" {:>{}}", rows.front()[i].label, widths[i]);
  os << line << '\n';
  for (const auto& row : rows) {
    line = " ";
    for (std::size_t i = 0; i < row.size(); ++i) line += fmt::format(" {:>{}}", row[i].brief, widths[i]);
    os << line << '\n';
  }
}

std::filesystem::path sibling(const std::filesystem::path& path, std::string_view suffix) {
  auto name = path.stem().string() + std::string(suffix) + path.extension().string();
  return path.parent_path() / name;
}

void write_file(const std::filesystem::path& path, const std::vector<Record>& rows) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error(fmt::format("cannot write '{}'", path.string()));
  write_csv(os, rows);
  if (!os) throw std::runtime_error(fmt::format("error while writing '{}'", path.string()));
}

void emit_record(const config::Options& opts, Format format, std::ostream& out,
                 std::string_view title, const Record& r) {
  if (format == Format::Csv) write_csv(out, {r});
  else write_record_table(out, title, r);
  if (opts.out) write_file(*opts.out, {r});
}

void emit_rows(const config::Options& opts, Format format, std::ostream& out,
               std::string_view title, const std::vector<Record>& rows) {
  if (format == Format::Csv) write_csv(out, rows);
  else write_rows_table(out, title, rows);
  if (opts.out) write_file(*opts.out, rows);
}

gp::GPCoefficients coefficients(const config::DesignProblemConfig& cfg) {
  return gp::build_coefficients(cfg.material, cfg.turns, cfg.load);
}

int run_analyze(const config::DesignProblemConfig& cfg, Format format, std::ostream& out) {
  const auto& o = cfg.options;
  if (!o.coil_diameter || !o.wire_diameter)
    throw ValidationError(
        "analyze needs the design: --coil-diameter and --wire-diameter (or options.D_m, options.d_m)");
  const mechanics::SpringGeometry geom{*o.coil_diameter, *o.wire_diameter, cfg.turns};
  geom.validate();

  const double stress = mechanics::max_shear_stress(cfg.load, geom, cfg.material);
  const double deflection = mechanics::tip_deflection(cfg.load, geom, cfg.material);
  const double mass = mechanics::spring_mass(geom, cfg.material);
  const auto co = coefficients(cfg);
  const double index = geom.spring_index();
  const auto g = gp::constraint_residuals(co, {geom.coil_diameter, geom.wire_diameter}, index);

  Record r{
      num("D_m", "coil diameter D [m]", geom.coil_diameter),
      num("d_m", "wire diameter d [m]", geom.wire_diameter),
      num("spring_index", "spring index C", index),
      num("stress_factor", "stress factor K_s", mechanics::stress_correction_factor(cfg.material.power_index, index)),
      num("max_shear_stress_Pa", "max shear stress [Pa]", stress),
      num("allow_stress_Pa", "allowable stress [Pa]", cfg.load.allow_stress),
      num("stress_margin", "stress margin 1 - tau/tau_max", 1.0 - stress / cfg.load.allow_stress),
      num("tip_deflection_m", "tip deflection [m]", deflection),
      num("allow_deflection_m", "allowable deflection [m]", cfg.load.allow_deflection),
      num("deflection_margin", "deflection margin 1 - delta/delta_max",
          1.0 - deflection / cfg.load.allow_deflection),
      num("mass_kg", "mass [kg]", mass),
      num("g1", "g1 (stress)", g.g1),
      num("g2", "g2 (deflection)", g.g2),
      text("feasible", "feasible", g.g1 <= 0.0 && g.g2 <= 0.0 ? "yes" : "no"),
  };
  emit_record(o, format, out, "analysis", r);
  return kExitSuccess;
}

int run_interval(const config::DesignProblemConfig& cfg, Format format, std::ostream& out,
                 std::ostream& err) {
  const auto co = coefficients(cfg);
  const auto iv = primal::admissible_interval(co);
  const auto& o = cfg.options;
  if (iv.multiple_roots_suspected)
    err << "warning: g(k) turns positive inside (1, k*); more than one root above 1 is suspected\n";

  const bool has_recommendation = o.index_min <= iv.k_star;
  Record r{
      table_only("admissible interval", fmt::format("({}, {}]", format_short(iv.lower), format_short(iv.k_star))),
      num("lower", "lower bound (exclusive)", iv.lower),
      num("k_star", "k*", iv.k_star),
      iv.negative_root ? num("negative_root", "negative root", *iv.negative_root)
                       : text("negative_root", "negative root", ""),
      num("bracket_lo", "bisection bracket lo", iv.bracket_lo),
      num("bracket_hi", "bisection bracket hi", iv.bracket_hi),
      num("log_residual_at_k_star", "ln-residual of g at k*", primal::k_feasibility(co, iv.k_star).log_residual),
      num("index_min", "practical index min", o.index_min),
      num("index_max", "practical index max", o.index_max),
      has_recommendation ? num("recommended_k", "min-mass practical k", o.index_min)
                         : text("recommended_k", "min-mass practical k", "none"),
  };
  emit_record(o, format, out, "spring index interval", r);
  return kExitSuccess;
}

int run_solve(const config::DesignProblemConfig& cfg, Format format, std::ostream& out,
              std::ostream& err) {
  const auto& o = cfg.options;
  if (!o.k) throw ValidationError("solve needs a spring index: --k or options.k");
  const auto co = coefficients(cfg);
  const auto sol = primal::solve(co, *o.k);
  const auto g = gp::constraint_residuals(co, sol.x, sol.k);
  const auto kkt = verify::kkt_residuals(co, sol.k, sol);

  Record r{
      num("k", "spring index k", sol.k),
      text("active_case", "active case", std::string(primal::to_string(sol.active_case))),
      num("x1_m", "x1 = D [m]", sol.x.x1),
      num("x2_m", "x2 = d [m]", sol.x.x2),
      num("mass_kg", "mass f [kg]", sol.objective),
      num("lambda1", "lambda1 (stress)", sol.multipliers.lambda1),
      num("lambda2", "lambda2 (deflection)", sol.multipliers.lambda2),
      num("lambda3", "lambda3 (index)", sol.multipliers.lambda3),
      num("g1", "g1", g.g1),
      num("g2", "g2", g.g2),
      num("g3_rel", "g3 / x1", g.g3 / sol.x.x1),
      num("kkt_max_violation", "KKT max violation", kkt.max_violation),
  };
  emit_record(o, format, out, "optimal design", r);
  if (kkt.max_violation > o.kkt_tolerance) {
    err << fmt::format("error: KKT max violation {:g} exceeds tolerance {:g}\n", kkt.max_violation,
                       o.kkt_tolerance);
    return kExitVerificationFailed;
  }
  return kExitSuccess;
}

int run_sweep(const config::DesignProblemConfig& cfg, Format format, std::ostream& out,
              std::ostream& err) {
  const auto& o = cfg.options;
  const auto co = coefficients(cfg);
  const auto iv = primal::admissible_interval(co);
  const int steps = o.steps.value_or(kDefaultSweepSteps);
  const double k_max = o.k_max.value_or(iv.k_star);
  const double k_min =
      o.k_min.value_or(kDefaultSweepStart < k_max ? kDefaultSweepStart : 1.0 + (k_max - 1.0) / steps);

  std::vector<Record> rows;
  for (const auto& s : primal::sweep(co, k_min, k_max, steps)) {
    const auto g = gp::constraint_residuals(co, s.x, s.k);
    rows.push_back({
        num("k", "k", s.k),
        num("x1_m", "x1 [m]", s.x.x1),
        num("x2_m", "x2 [m]", s.x.x2),
        num("mass_kg", "mass [kg]", s.objective),
        text("active_case", "case", std::string(primal::to_string(s.active_case))),
        num("g1", "g1", g.g1),
        num("g2", "g2", g.g2),
    });
  }
  emit_rows(o, format, out, "sweep over spring index", rows);

  if (!o.out) {
    err << "note: pass --out to also write the g(k) and mass(k) plot data\n";
    return kExitSuccess;
  }
  std::vector<Record> g_curve;
  std::vector<Record> mass_curve;
  const double g_end = kPlotOvershoot * iv.k_star;
  for (int i = 1; i <= kPlotSamples; ++i) {
    const double t = static_cast<double>(i) / kPlotSamples;
    const double kg = i == kPlotSamples ? g_end : std::exp(std::log(g_end) * t);
    g_curve.push_back({num("k", "k", kg),
                       num("g_log_residual", "ln-residual", primal::k_feasibility(co, kg).log_residual)});
    const double km = i == kPlotSamples ? iv.k_star : std::exp(std::log(iv.k_star) * t);
    mass_curve.push_back({num("k", "k", km), num("mass_kg", "mass [kg]", primal::solve(co, km).objective)});
  }
  write_file(sibling(*o.out, "_g_curve"), g_curve);
  write_file(sibling(*o.out, "_mass_curve"), mass_curve);
  return kExitSuccess;
}

int run_dual(const config::DesignProblemConfig& cfg, Format format, std::ostream& out,
             std::ostream& err) {
  const auto& o = cfg.options;
  const auto co = coefficients(cfg);
  const auto ds = dual::solve_dual(co);
  const auto primal_at_root = primal::solve(co, ds.k_star);
  const double gap = verify::duality_gap(primal_at_root.objective, ds.v_star);

  double eq_max = 0.0;
  for (double v : dual::equality_residuals(co.n, ds.multipliers)) eq_max = std::max(eq_max, std::fabs(v));
  double rec_max = 0.0;
  for (double v : dual::recovery_residuals(co, ds, ds.recovered)) rec_max = std::max(rec_max, std::fabs(v));
  const auto kkt = verify::kkt_residuals(co, ds.k_star, dual::to_primal_solution(co, ds));

  const auto& m = ds.multipliers;
  Record r{
      num("k_star", "k*", ds.k_star),
      num("v_star_kg", "dual optimum v* [kg]", ds.v_star),
      num("log_v_star", "ln v*", ds.log_v_star),
      num("l01", "l01", m.l01),
      num("l11", "l11", m.l11),
      num("l12", "l12", m.l12),
      num("l21", "l21", m.l21),
      num("l31", "l31", m.l31),
      num("x1_m", "recovered x1 [m]", ds.recovered.x1),
      num("x2_m", "recovered x2 [m]", ds.recovered.x2),
      num("primal_mass_kg", "primal mass at k* [kg]", primal_at_root.objective),
      num("duality_gap", "duality gap", gap),
      num("max_equality_residual", "max normality/orthogonality residual", eq_max),
      num("max_recovery_residual", "max recovery residual", rec_max),
      num("kkt_max_violation", "KKT max violation (recovered)", kkt.max_violation),
  };
  emit_record(o, format, out, "dual solution", r);
  if (std::fabs(gap) > kDualityGapTolerance || kkt.max_violation > o.kkt_tolerance) {
    err << fmt::format("error: duality gap {:g} or KKT violation {:g} out of tolerance\n", gap,
                       kkt.max_violation);
    return kExitVerificationFailed;
  }
  return kExitSuccess;
}

int run_verify(const config::DesignProblemConfig& cfg, Format format, std::ostream& out,
               std::ostream& err) {
  const auto& o = cfg.options;
  const auto co = coefficients(cfg);
  std::optional<dual::DualSolution> ds;
  try {
    ds = dual::solve_dual(co);
  } catch (const NoAdmissibleIndex& e) {
    if (!o.k) throw;
    err << "note: " << e.what() << "; duality check skipped\n";
  }
  const double k = o.k ? *o.k : ds->k_star;

  const auto sol = primal::solve(co, k);
  const auto kkt = verify::kkt_residuals(co, k, sol);
  const auto oracle = verify::grid_oracle(co, k, o.oracle_refinements);
  const double oracle_diff = (oracle.best_objective - sol.objective) / sol.objective;

  std::vector<Record> rows;
  bool ok = true;
  auto check = [&](std::string name, double value, std::optional<double> limit, bool pass) {
    rows.push_back({text("check", "check", std::move(name)), num("value", "value", value),
                    limit ? num("threshold", "threshold", *limit) : text("threshold", "threshold", ""),
                    text("status", "status", limit ? (pass ? "pass" : "FAIL") : "info")});
    ok = ok && pass;
  };
  check("k", k, std::nullopt, true);
  check("closed_form_mass_kg", sol.objective, std::nullopt, true);
  check("oracle_mass_kg", oracle.best_objective, std::nullopt, true);
  check("oracle_x1_m", oracle.best_point.x1, std::nullopt, true);
  check("oracle_x2_m", oracle.best_point.x2, std::nullopt, true);
  check("oracle_evaluations", static_cast<double>(oracle.evaluations), std::nullopt, true);
  check("oracle_relative_difference", oracle_diff, kOracleAgreement,
        std::fabs(oracle_diff) <= kOracleAgreement);
  check("kkt_max_violation", kkt.max_violation, o.kkt_tolerance, kkt.max_violation <= o.kkt_tolerance);
  if (ds) {
    const double gap =
        verify::duality_gap(primal::solve(co, ds->k_star).objective, ds->v_star);
    check("duality_gap_at_k_star", gap, kDualityGapTolerance, std::fabs(gap) <= kDualityGapTolerance);
  }
  emit_rows(o, format, out, fmt::format("verification at k = {}", format_short(k)), rows);
  if (!ok) {
    err << "error: verification failed\n";
    return kExitVerificationFailed;
  }
  return kExitSuccess;
}

}  // namespace

int run_command(const config::DesignProblemConfig& cfg, Command command, Format format,
                std::ostream& out, std::ostream& err) {
  try {
    switch (command) {
      case Command::Analyze: return run_analyze(cfg, format, out);
      case Command::Interval: return run_interval(cfg, format, out, err);
      case Command::Solve: return run_solve(cfg, format, out, err);
      case Command::Sweep: return run_sweep(cfg, format, out, err);
      case Command::Dual: return run_dual(cfg, format, out, err);
      case Command::Verify: return run_verify(cfg, format, out, err);
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NoAdmissibleIndex& e) {
    err << "error: no admissible spring index: " << e.what() << '\n';
    return kExitNoAdmissibleIndex;
  } catch (const RootNotBracketed& e) {
    err << "error: no finite upper spring index: " << e.what() << '\n';
    return kExitNoAdmissibleIndex;
  } catch (const OracleInfeasible& e) {
    err << "error: " << e.what() << '\n';
    return kExitVerificationFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Minimum-mass design of helical springs made of power-law materials", "springgp"};
  app.require_subcommand(1);

  std::string config_path;
  double k = 0.0, k_min = 0.0, k_max = 0.0, coil = 0.0, wire = 0.0;
  int steps = 0;
  std::string out_path;
  std::string format_name = "table";

  struct Bound {
    CLI::Option* k = nullptr;
    CLI::Option* k_min = nullptr;
    CLI::Option* k_max = nullptr;
    CLI::Option* steps = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* coil = nullptr;
    CLI::Option* wire = nullptr;
  };
  std::vector<std::pair<CLI::App*, Command>> commands;
  std::vector<Bound> bound;

  const std::pair<const char*, Command> table[] = {
      {"analyze", Command::Analyze}, {"interval", Command::Interval}, {"solve", Command::Solve},
      {"sweep", Command::Sweep},     {"dual", Command::Dual},         {"verify", Command::Verify},
  };
  const char* help[] = {
      "stress, deflection and mass of a given design (needs --coil-diameter, --wire-diameter)",
      "admissible spring-index interval (1, k*]",
      "closed-form optimal design at --k",
      "optimal designs over a range of k, plus plot data with --out",
      "dual program at k*, recovered design and duality gap",
      "brute-force grid oracle and KKT check against the closed form",
  };
  for (std::size_t i = 0; i < std::size(table); ++i) {
    CLI::App* sub = app.add_subcommand(table[i].first, help[i]);
    Bound b;
    sub->add_option("--config", config_path, "design problem file")->required();
    b.k = sub->add_option("--k", k, "spring index k = D/d");
    b.k_min = sub->add_option("--k-min", k_min, "sweep start");
    b.k_max = sub->add_option("--k-max", k_max, "sweep end (default k*)");
    b.steps = sub->add_option("--steps", steps, "sweep points");
    b.out = sub->add_option("--out", out_path, "also write CSV to this path");
    sub->add_option("--format", format_name, "stdout rendering")
        ->check(CLI::IsMember({"table", "csv"}));
    b.coil = sub->add_option("--coil-diameter", coil, "mean coil diameter D [m]");
    b.wire = sub->add_option("--wire-diameter", wire, "wire diameter d [m]");
    commands.emplace_back(sub, table[i].second);
    bound.push_back(b);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitSuccess;
    }
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  std::size_t which = 0;
  for (std::size_t i = 0; i < commands.size(); ++i)
    if (commands[i].first->parsed()) which = i;
  const Bound& b = bound[which];

  config::DesignProblemConfig cfg;
  try {
    cfg = config::parse_config(config_path);
    auto& o = cfg.options;
    if (b.k->count()) o.k = k;
    if (b.k_min->count()) o.k_min = k_min;
    if (b.k_max->count()) o.k_max = k_max;
    if (b.steps->count()) o.steps = steps;
    if (b.out->count()) o.out = out_path;
    if (b.coil->count()) o.coil_diameter = coil;
    if (b.wire->count()) o.wire_diameter = wire;
    if (auto bad = config::violations(cfg); !bad.empty()) throw ConfigValidationError(std::move(bad));
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  for (const auto& w : cfg.material.warnings()) err << "warning: " << w << '\n';
  return run_command(cfg, commands[which].second,
                     format_name == "csv" ? Format::Csv : Format::Table, out, err);
}

}  // namespace springgp::cli
