#pragma once

#include <iosfwd>
#include <string>

#include "springgp/config.hpp"

// springgp <command> [--config PATH] [--k FLOAT] [--k-min FLOAT --k-max FLOAT --steps INT]
//                    [--out PATH] [--format table|csv]
//                    [--coil-diameter M --wire-diameter M]
namespace springgp::cli {

enum class Command { Analyze, Interval, Solve, Sweep, Dual, Verify };
enum class Format { Table, Csv };

inline constexpr int kExitSuccess = 0;
inline constexpr int kExitInternal = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitNoAdmissibleIndex = 3;
inline constexpr int kExitVerificationFailed = 4;

/// 17 significant digits, locale independent.
std::string format_full(double v);
/// 6 significant digits, locale independent.
std::string format_short(double v);

/// Runs one command against an already validated config. `out` receives the
/// rendered result; `options.out`, when set, additionally receives CSV.
int run_command(const config::DesignProblemConfig& cfg, Command command, Format format,
                std::ostream& out, std::ostream& err);

/// Full argument handling, as used by the executable.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace springgp::cli
