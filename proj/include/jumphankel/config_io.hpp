#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "jumphankel/painleve.hpp"

namespace jumphankel {

/// Everything a CLI run depends on. Numeric inputs are kept as the decimal text
/// they were given in, so they are parsed once at the resolved precision and
/// echoed verbatim into every artifact.
struct RunConfig {
  std::vector<std::string> t;
  std::vector<std::string> omega{"1"};
  std::optional<std::vector<std::string>> c;  // path offsets; default t - t_1
  unsigned precision_bits = 256;
  int n_lo = 1;
  int n_hi = 6;
  std::optional<std::string> x0, x1;
  std::string ode_tol = "1e-10";
  std::string quadrature_tol = "1e-20";
  std::optional<std::string> fd_step;  // default 2^{-bits/6} scaled
  std::uint64_t seed = 1;
  long samples = 1000000;
  std::optional<std::string> region;
  int points = 11;

  Precision precision() const { return Precision(precision_bits); }
  Real real(const std::string& text, const char* field) const;
  /// The weight at the run's point: from t, or path().at(start()) when c is given.
  JumpWeightConfig weight() const;
  /// The diagonal path used by point and path commands.
  DiagonalPath path() const;
  /// x0 along path(), default t_1 (or 0 when c is given).
  Real start() const;
  std::optional<Real> step() const;

  nlohmann::ordered_json to_json() const;
};

/// "3", "1..6", "1-6" or "1:6". ConfigError("n") otherwise.
std::pair<int, int> parse_n_range(const std::string& text);
/// "0.5,-1" -> {"0.5", "-1"}. Entries are validated by the caller.
std::vector<std::string> split_list(const std::string& text);

/// Applies a JSON document on top of base. Fields: m, t, omega, precision_bits,
/// and optionally c, n, x0, x1, ode_tol, quadrature_tol, fd_step, seed,
/// samples, region, points. Numbers may be JSON numbers or strings. Unknown
/// keys and type errors throw ConfigError naming the field.
RunConfig apply_config_json(const nlohmann::json& doc, RunConfig base = {});
RunConfig load_config_file(const std::string& path, RunConfig base = {});

/// Checks that the config resolves (weight, path, tolerances). ConfigError.
void validate(const RunConfig& rc);

}  // namespace jumphankel
