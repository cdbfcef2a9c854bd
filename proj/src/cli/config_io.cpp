#include "jumphankel/config_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "jumphankel/errors.hpp"

namespace jumphankel {

Real RunConfig::real(const std::string& text, const char* field) const {
  try {
    return Real::parse(text, precision());
  } catch (const std::exception&) {
    throw ConfigError(field, "not a number: '" + text + "'");
  }
}

JumpWeightConfig RunConfig::weight() const {
  if (c) {
    if (!t.empty()) throw ConfigError("c", "give the jumps either as t or as path offsets c, not both");
    return path().at(start());
  }
  std::vector<Real> tv, wv;
  for (const auto& s : t) tv.push_back(real(s, "t"));
  for (const auto& s : omega) wv.push_back(real(s, "omega"));
  return JumpWeightConfig::make(std::move(tv), std::move(wv), precision());
}

DiagonalPath RunConfig::path() const {
  if (!c) return DiagonalPath::through(weight());
  std::vector<Real> cv, wv;
  for (const auto& s : *c) cv.push_back(real(s, "c"));
  for (const auto& s : omega) wv.push_back(real(s, "omega"));
  return DiagonalPath::make(std::move(cv), std::move(wv), precision());
}

Real RunConfig::start() const {
  if (x0) return real(*x0, "x0");
  if (c) return Real(precision());
  if (t.empty()) throw ConfigError("t", "path commands need at least one jump");
  return real(t.front(), "t");
}

std::optional<Real> RunConfig::step() const {
  if (!fd_step) return std::nullopt;
  return real(*fd_step, "fd_step");
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["m"] = c ? c->size() : t.size();
  j["t"] = t;
  j["omega"] = omega;
  if (c) j["c"] = *c;
  j["precision_bits"] = precision_bits;
  j["n"] = std::to_string(n_lo) + ".." + std::to_string(n_hi);
  if (x0) j["x0"] = *x0;
  if (x1) j["x1"] = *x1;
  j["ode_tol"] = ode_tol;
  j["quadrature_tol"] = quadrature_tol;
  j["fd_step"] = fd_step ? *fd_step : "auto";
  j["seed"] = seed;
  j["samples"] = samples;
  if (region) j["region"] = *region;
  j["points"] = points;
  return j;
}

std::pair<int, int> parse_n_range(const std::string& text) {
  auto to_int = [&](const std::string& s) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw ConfigError("n", "expected an integer or a range lo..hi, got '" + text + "'");
    }
    if (used != s.size() || v < 0) throw ConfigError("n", "expected a nonnegative integer or range, got '" + text + "'");
    return v;
  };
  for (const std::string sep : {"..", "-", ":"}) {
    const auto pos = text.find(sep);
    if (pos == std::string::npos || pos == 0) continue;
    const int lo = to_int(text.substr(0, pos)), hi = to_int(text.substr(pos + sep.size()));
    if (lo > hi) throw ConfigError("n", "empty range '" + text + "'");
    return {lo, hi};
  }
  const int v = to_int(text);
  return {v, v};
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t"), e = item.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : item.substr(b, e - b + 1));
  }
  return out;
}

namespace {

std::string number_text(const nlohmann::json& v, const std::string& field) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number()) return v.dump();
  throw ConfigError(field, "expected a number or a numeric string");
}

std::vector<std::string> number_list(const nlohmann::json& v, const std::string& field) {
  if (!v.is_array()) throw ConfigError(field, "expected an array");
  std::vector<std::string> out;
  for (const auto& e : v) out.push_back(number_text(e, field));
  return out;
}

long integer(const nlohmann::json& v, const std::string& field) {
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_string()) {
    try {
      size_t used = 0;
      const long x = std::stol(v.get<std::string>(), &used);
      if (used == v.get<std::string>().size()) return x;
    } catch (const std::exception&) {
    }
  }
  throw ConfigError(field, "expected an integer");
}

}  // namespace

RunConfig apply_config_json(const nlohmann::json& doc, RunConfig rc) {
  if (!doc.is_object()) throw ConfigError("config", "top level must be a JSON object");
  static const std::set<std::string> known = {"m",     "t",       "omega",   "precision_bits", "c",
                                              "n",     "x0",      "x1",      "ode_tol",        "quadrature_tol",
                                              "fd_step", "seed",  "samples", "region",         "points"};
  for (const auto& [key, _] : doc.items())
    if (!known.count(key)) throw ConfigError(key, "unknown config field");
  if (doc.contains("t")) rc.t = number_list(doc["t"], "t");
  if (doc.contains("omega")) rc.omega = number_list(doc["omega"], "omega");
  if (doc.contains("precision_bits")) {
    const long b = integer(doc["precision_bits"], "precision_bits");
    if (b < static_cast<long>(Precision::kMinBits)) throw ConfigError("precision_bits", "must be >= " + std::to_string(Precision::kMinBits));
    rc.precision_bits = static_cast<unsigned>(b);
  }
  if (doc.contains("c")) rc.c = number_list(doc["c"], "c");
  if (doc.contains("m")) {
    const long m = integer(doc["m"], "m");
    const auto& jumps = rc.c ? *rc.c : rc.t;
    if (m < 0 || static_cast<size_t>(m) != jumps.size())
      throw ConfigError("m", "m = " + std::to_string(m) + " but " + (rc.c ? "c" : "t") + " has " +
                                 std::to_string(jumps.size()) + " entries");
  }
  if (doc.contains("n")) {
    const auto& v = doc["n"];
    if (v.is_number_integer()) {
      const int n = v.get<int>();
      if (n < 0) throw ConfigError("n", "must be >= 0");
      rc.n_lo = rc.n_hi = n;
    } else if (v.is_string()) {
      std::tie(rc.n_lo, rc.n_hi) = parse_n_range(v.get<std::string>());
    } else {
      throw ConfigError("n", "expected an integer or a range string");
    }
  }
  if (doc.contains("x0")) rc.x0 = number_text(doc["x0"], "x0");
  if (doc.contains("x1")) rc.x1 = number_text(doc["x1"], "x1");
  if (doc.contains("ode_tol")) rc.ode_tol = number_text(doc["ode_tol"], "ode_tol");
  if (doc.contains("quadrature_tol")) rc.quadrature_tol = number_text(doc["quadrature_tol"], "quadrature_tol");
  if (doc.contains("fd_step")) rc.fd_step = number_text(doc["fd_step"], "fd_step");
  if (doc.contains("seed")) {
    const long s = integer(doc["seed"], "seed");
    if (s < 0) throw ConfigError("seed", "must be >= 0");
    rc.seed = static_cast<std::uint64_t>(s);
  }
  if (doc.contains("samples")) rc.samples = integer(doc["samples"], "samples");
  if (doc.contains("region")) {
    if (!doc["region"].is_string()) throw ConfigError("region", "expected a string lo:hi,...");
    rc.region = doc["region"].get<std::string>();
  }
  if (doc.contains("points")) rc.points = static_cast<int>(integer(doc["points"], "points"));
  return rc;
}

RunConfig load_config_file(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config", std::string("invalid JSON: ") + e.what());
  }
  return apply_config_json(doc, std::move(base));
}

void validate(const RunConfig& rc) {
  if (rc.precision_bits < static_cast<unsigned>(Precision::kMinBits))
    throw ConfigError("precision_bits", "must be >= " + std::to_string(Precision::kMinBits));
  rc.weight();
  if (rc.c) rc.path();
  for (const auto& [text, field] : {std::pair{rc.ode_tol, "ode_tol"}, std::pair{rc.quadrature_tol, "quadrature_tol"}})
    if (!(rc.real(text, field) > 0L)) throw ConfigError(field, "must be > 0");
  if (rc.fd_step && !(rc.real(*rc.fd_step, "fd_step") > 0L)) throw ConfigError("fd_step", "must be > 0");
  if (rc.x0) rc.real(*rc.x0, "x0");
  if (rc.x1) rc.real(*rc.x1, "x1");
  if (rc.points < 1) throw ConfigError("points", "must be >= 1");
  if (rc.n_lo > rc.n_hi) throw ConfigError("n", "empty range");
}

}  // namespace jumphankel
