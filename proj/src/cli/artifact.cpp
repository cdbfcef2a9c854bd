#include "artifact.hpp"

#include <cstdio>
#include <map>
#include <sstream>
#include <stdexcept>

namespace jumphankel::cli {

bool Artifact::passed() const {
  for (const auto& c : checks)
    if (!c.pass()) return false;
  return true;
}

namespace {

// 256-bit bounds, 10^{-e}.
const std::map<std::string, double>& exponents() {
  static const std::map<std::string, double> e = {
      {"partition", 50},       {"hankel-direct", 40},  {"heine", 40},
      {"lowering", 35},        {"raising", 35},        {"S1", 35},
      {"S2", 35},              {"S2'", 35},            {"s1-1", 40},
      {"alR", 40},             {"s1-2", 40},           {"s2'-1", 40},
      {"btr", 40},             {"s2'-2", 40},          {"s2'-3", 40},
      {"p-1", 40},             {"p-2", 40},            {"iterate", 30},
      {"dlnD", 14},            {"dp", 14},             {"ric-R", 14},
      {"ric-r", 14},           {"pde-R", 14},          {"sigma-fd", 14},
      {"sigma-rR", 40},        {"bt-Dsig", 12},        {"r-sig", 12},
      {"R-sig", 12},           {"delta-nonneg", 12},   {"sigma-pde", 12},
      {"sigma-m1", 12},        {"sigma-m2", 12},       {"toda-beta", 18},
      {"toda-alpha", 18},      {"toda-2", 18},         {"toda-molecule", 18},
      {"dint", 8},             {"piv-roundtrip-Rr", 45}, {"piv-roundtrip-ab", 45},
      {"piv-akR", 40},         {"piv-btab", 40},       {"piv-sigma", 40},
      {"cpiv-hamilton", 8},    {"cpiv-a2", 6},         {"branch-flip", 5},
  };
  return e;
}

}  // namespace

Real bound_for(const std::string& identity, const RunConfig& rc) {
  const Precision p = rc.precision();
  // trajectory accuracy follows the integrator tolerance, not the word size
  if (identity == "cpiv-traj") return rc.real(rc.ode_tol, "ode_tol") * 10000L;
  if (identity == "mc-z") return Real(3L, p);
  const auto it = exponents().find(identity);
  if (it == exponents().end()) throw std::logic_error("no bound for identity " + identity);
  const double e = it->second * p.bits() / 256.0;
  return exp(-Real(e, p) * log(Real(10L, p)));
}

void add_checks(Artifact& a, const ResidualReport& rep, const RunConfig& rc) {
  for (const auto& id : rep.identities()) {
    Check c{id, rep.max_abs(id), rep.max_rel(id), bound_for(id, rc)};
    bool merged = false;
    for (auto& old : a.checks)
      if (old.identity == id) {
        old.max_abs = max(old.max_abs, c.max_abs);
        old.max_rel = max(old.max_rel, c.max_rel);
        merged = true;
      }
    if (!merged) a.checks.push_back(std::move(c));
  }
}

std::string num(const Real& x) { return x.to_string(); }

std::string short_num(const Real& x) { return x.to_string(6); }

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void csv_row(std::ostringstream& os, const std::vector<std::string>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << csv_field(cells[i]);
  os << '\n';
}

}  // namespace

std::string render_csv(const Artifact& a, const RunConfig& rc) {
  std::ostringstream os;
  os << "# jumphankel " << a.command << '\n';
  os << "# precision_bits: " << rc.precision_bits << '\n';
  os << "# config: " << rc.to_json().dump() << '\n';
  for (const auto& note : a.notes) os << "# note: " << note << '\n';
  if (!a.summary.empty()) os << "# summary: " << a.summary.dump() << '\n';
  if (!a.columns.empty()) {
    csv_row(os, a.columns);
    for (const auto& r : a.rows) csv_row(os, r);
  }
  if (!a.checks.empty()) {
    os << '\n';
    csv_row(os, {"identity", "max_abs", "max_rel", "bound", "pass"});
    for (const auto& c : a.checks)
      csv_row(os, {c.identity, short_num(c.max_abs), short_num(c.max_rel), (c.lower ? ">=" : "<=") + short_num(c.bound),
                   c.pass() ? "yes" : "no"});
  }
  os << "# status: " << (a.passed() ? "pass" : "fail") << '\n';
  return os.str();
}

std::string render_json(const Artifact& a, const RunConfig& rc) {
  nlohmann::ordered_json j;
  j["command"] = a.command;
  j["precision_bits"] = rc.precision_bits;
  j["config"] = rc.to_json();
  if (!a.notes.empty()) j["notes"] = a.notes;
  if (!a.summary.empty())
    for (const auto& [k, v] : a.summary.items()) j[k] = v;
  if (!a.columns.empty()) {
    j["columns"] = a.columns;
    j["rows"] = a.rows;
  }
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : a.checks) {
    nlohmann::ordered_json e;
    e["identity"] = c.identity;
    e["max_abs"] = short_num(c.max_abs);
    e["max_rel"] = short_num(c.max_rel);
    e["bound"] = short_num(c.bound);
    e["kind"] = c.lower ? "min" : "max";
    e["pass"] = c.pass();
    checks.push_back(std::move(e));
  }
  j["checks"] = checks;
  j["status"] = a.passed() ? "pass" : "fail";
  return j.dump(2) + "\n";
}

}  // namespace jumphankel::cli
