#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "jumphankel/config_io.hpp"
#include "jumphankel/residual.hpp"

namespace jumphankel::cli {

struct Check {
  std::string identity;
  Real max_abs;
  Real max_rel;
  Real bound;
  bool lower = false;  // pass needs max_rel >= bound (negative controls)

  bool pass() const { return lower ? max_rel >= bound : max_rel <= bound; }
};

struct Artifact {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  nlohmann::ordered_json summary;  // command-specific extras

  bool passed() const;
};

/// Acceptance bound for an identity at the run's precision. Bounds are quoted
/// at 256 bits as 10^{-e}; e scales linearly with the working bits.
Real bound_for(const std::string& identity, const RunConfig& rc);
void add_checks(Artifact& a, const ResidualReport& rep, const RunConfig& rc);

/// Full round-trip digits of the value's precision.
std::string num(const Real& x);
/// Six significant digits, for residuals.
std::string short_num(const Real& x);
std::string num(double x);

std::string render_csv(const Artifact& a, const RunConfig& rc);
std::string render_json(const Artifact& a, const RunConfig& rc);

}  // namespace jumphankel::cli
