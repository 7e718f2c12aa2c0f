#include "springgp/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "springgp/errors.hpp"

namespace springgp::config {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view value, int line, const std::string& key) {
  double out = 0.0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ParseError(fmt::format("line {}: {}: '{}' is not a number", line, key, value), line, key);
  return out;
}

int parse_int(std::string_view value, int line, const std::string& key) {
  int out = 0;
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end)
    throw ParseError(fmt::format("line {}: {}: '{}' is not an integer", line, key, value), line,
                     key);
  return out;
}

using Setter = std::function<void(DesignProblemConfig&, std::string_view, int, const std::string&)>;

const std::map<std::string, Setter>& setters() {
  static const std::map<std::string, Setter> table = [] {
    std::map<std::string, Setter> t;
    auto num = [](auto assign) -> Setter {
      return [assign](DesignProblemConfig& c, std::string_view v, int line, const std::string& key) {
        assign(c, parse_double(v, line, key));
      };
    };
    t["material.K_MPa"] = num([](auto& c, double v) { c.material.bulk_modulus = v * kPascalPerMegapascal; });
    t["material.n"] = num([](auto& c, double v) { c.material.power_index = v; });
    t["material.nu"] = num([](auto& c, double v) { c.material.poisson_ratio = v; });
    t["material.rho_kg_m3"] = num([](auto& c, double v) { c.material.density = v; });
    t["load.P_N"] = num([](auto& c, double v) { c.load.axial_load = v; });
    t["load.tau_max_MPa"] = num([](auto& c, double v) { c.load.allow_stress = v * kPascalPerMegapascal; });
    t["load.delta_max_m"] = num([](auto& c, double v) { c.load.allow_deflection = v; });
    t["spring.turns"] = num([](auto& c, double v) { c.turns = v; });
    t["options.k"] = num([](auto& c, double v) { c.options.k = v; });
    t["options.k_min"] = num([](auto& c, double v) { c.options.k_min = v; });
    t["options.k_max"] = num([](auto& c, double v) { c.options.k_max = v; });
    t["options.index_min"] = num([](auto& c, double v) { c.options.index_min = v; });
    t["options.index_max"] = num([](auto& c, double v) { c.options.index_max = v; });
    t["options.D_m"] = num([](auto& c, double v) { c.options.coil_diameter = v; });
    t["options.d_m"] = num([](auto& c, double v) { c.options.wire_diameter = v; });
    t["options.kkt_tolerance"] = num([](auto& c, double v) { c.options.kkt_tolerance = v; });
    t["options.steps"] = [](DesignProblemConfig& c, std::string_view v, int line, const std::string& key) {
      c.options.steps = parse_int(v, line, key);
    };
    t["options.oracle_refinements"] = [](DesignProblemConfig& c, std::string_view v, int line,
                                         const std::string& key) {
      c.options.oracle_refinements = parse_int(v, line, key);
    };
    t["options.out"] = [](DesignProblemConfig& c, std::string_view v, int, const std::string&) {
      c.options.out = std::string(v);
    };
    return t;
  }();
  return table;
}

const std::vector<std::string> kRequired = {
    "material.K_MPa", "material.n",       "material.nu",        "material.rho_kg_m3",
    "load.P_N",       "load.tau_max_MPa", "load.delta_max_m",   "spring.turns",
};

}  // namespace

std::vector<std::string> violations(const DesignProblemConfig& cfg) {
  std::vector<std::string> out;
  auto need = [&](bool ok, std::string msg) {
    if (!ok) out.push_back(std::move(msg));
  };
  const auto& m = cfg.material;
  const auto& l = cfg.load;
  const auto& o = cfg.options;
  need(m.bulk_modulus > 0.0, fmt::format("material.K_MPa must be > 0 (got {})", m.bulk_modulus / kPascalPerMegapascal));
  need(m.power_index > 0.0, fmt::format("material.n must be > 0 (got {})", m.power_index));
  need(m.poisson_ratio >= 0.0 && m.poisson_ratio < 0.5,
       fmt::format("material.nu must lie in [0, 0.5) (got {})", m.poisson_ratio));
  need(m.density > 0.0, fmt::format("material.rho_kg_m3 must be > 0 (got {})", m.density));
  need(l.axial_load > 0.0, fmt::format("load.P_N must be > 0 (got {})", l.axial_load));
  need(l.allow_stress > 0.0,
       fmt::format("load.tau_max_MPa must be > 0 (got {})", l.allow_stress / kPascalPerMegapascal));
  need(l.allow_deflection > 0.0,
       fmt::format("load.delta_max_m must be > 0 (got {})", l.allow_deflection));
  need(cfg.turns >= 1.0, fmt::format("spring.turns must be >= 1 (got {})", cfg.turns));

  if (o.k) need(*o.k > 1.0, fmt::format("options.k must exceed 1 (got {})", *o.k));
  if (o.k_min) need(*o.k_min > 1.0, fmt::format("options.k_min must exceed 1 (got {})", *o.k_min));
  if (o.k_min && o.k_max)
    need(*o.k_min < *o.k_max,
         fmt::format("options.k_min must be < options.k_max (got {} >= {})", *o.k_min, *o.k_max));
  if (o.k_max) need(*o.k_max > 1.0, fmt::format("options.k_max must exceed 1 (got {})", *o.k_max));
  if (o.steps) need(*o.steps >= 2, fmt::format("options.steps must be >= 2 (got {})", *o.steps));
  need(o.index_min > 1.0, fmt::format("options.index_min must exceed 1 (got {})", o.index_min));
  need(o.index_min < o.index_max,
       fmt::format("options.index_min must be < options.index_max (got {} >= {})", o.index_min,
                   o.index_max));
  if (o.coil_diameter)
    need(*o.coil_diameter > 0.0, fmt::format("options.D_m must be > 0 (got {})", *o.coil_diameter));
  if (o.wire_diameter)
    need(*o.wire_diameter > 0.0, fmt::format("options.d_m must be > 0 (got {})", *o.wire_diameter));
  need(o.kkt_tolerance > 0.0,
       fmt::format("options.kkt_tolerance must be > 0 (got {})", o.kkt_tolerance));
  need(o.oracle_refinements >= 1,
       fmt::format("options.oracle_refinements must be >= 1 (got {})", o.oracle_refinements));
  return out;
}

DesignProblemConfig parse_config_text(std::string_view text) {
  DesignProblemConfig cfg;
  std::set<std::string> seen;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.size() - pos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw ParseError(fmt::format("line {}: expected 'key = value', got '{}'", line_no, line),
                       line_no, "");
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));

    const auto it = setters().find(key);
    if (it == setters().end())
      throw ParseError(fmt::format("line {}: unknown key '{}'", line_no, key), line_no, key);
    if (!seen.insert(key).second)
      throw ParseError(fmt::format("line {}: duplicate key '{}'", line_no, key), line_no, key);
    if (value.empty())
      throw ParseError(fmt::format("line {}: {}: missing value", line_no, key), line_no, key);
    it->second(cfg, value, line_no, key);
  }

  for (const auto& key : kRequired)
    if (!seen.contains(key)) throw ParseError(fmt::format("missing required key '{}'", key), 0, key);

  if (auto bad = violations(cfg); !bad.empty()) throw ConfigValidationError(std::move(bad));
  return cfg;
}

DesignProblemConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(fmt::format("cannot open config file '{}'", path.string()), 0, "");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace springgp::config
