#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace springgp {

/// An input violates a documented precondition or type invariant.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// g(k) = 0 has no root above 1, so no spring index satisfies the stress-active case.
class NoAdmissibleIndex : public std::runtime_error {
 public:
  NoAdmissibleIndex(const std::string& what, double k_star)
      : std::runtime_error(what), k_star_(k_star) {}

  /// Positive root of g(k) = 0 found during diagnosis (<= 1).
  double k_star() const noexcept { return k_star_; }

 private:
  double k_star_;
};

/// g(k) stayed negative up to the search cap; the root is not bracketed.
class RootNotBracketed : public std::runtime_error {
 public:
  RootNotBracketed(const std::string& what, double k_cap)
      : std::runtime_error(what), k_cap_(k_cap) {}
  double k_cap() const noexcept { return k_cap_; }

 private:
  double k_cap_;
};

/// A closed-form KKT case was requested at a k where its inequality does not hold.
class CaseInapplicable : public std::logic_error {
 public:
  explicit CaseInapplicable(const std::string& what) : std::logic_error(what) {}
};

/// The brute-force grid contained no feasible point.
class OracleInfeasible : public std::runtime_error {
 public:
  OracleInfeasible(const std::string& what, double x1_lo, double x1_hi, double x2_lo,
                   double x2_hi)
      : std::runtime_error(what), x1_lo(x1_lo), x1_hi(x1_hi), x2_lo(x2_lo), x2_hi(x2_hi) {}

  double x1_lo, x1_hi, x2_lo, x2_hi;
};

/// Malformed configuration text.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line, std::string key)
      : std::runtime_error(what), line_(line), key_(std::move(key)) {}

  /// 1-based line number, or 0 when the problem is not tied to a line (missing key).
  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

/// A parsed configuration violates one or more physical invariants.
class ConfigValidationError : public ValidationError {
 public:
  explicit ConfigValidationError(std::vector<std::string> violations)
      : ValidationError(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string out = "invalid configuration:";
    for (const auto& item : items) {
      out += "\n  ";
      out += item;
    }
    return out;
  }

  std::vector<std::string> violations_;
};

}  // namespace springgp
