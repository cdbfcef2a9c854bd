#include "jumphankel/cli.hpp"

#include <fstream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"
#include "jumphankel/errors.hpp"

namespace jumphankel {

namespace {

struct Flags {
  std::string config, precision, n, out, format, seed, x0, x1, tol, t, omega, c, fd_step, samples, region, points;
  unsigned threads = 0;
  bool second_order = false;
};

void add_flags(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file (m, t, omega, precision_bits, ...)");
  sub->add_option("--precision", f.precision, "working precision in bits (>= 64, default 256)");
  sub->add_option("--n", f.n, "degree or range lo..hi");
  sub->add_option("--out", f.out, "write the artifact here instead of stdout");
  sub->add_option("--format", f.format, "csv or json");
  sub->add_option("--seed", f.seed, "Monte Carlo seed (u64)");
  sub->add_option("--x0", f.x0, "start of the path / evaluation point");
  sub->add_option("--x1", f.x1, "end of the path");
  sub->add_option("--tol", f.tol, "integrator tolerance (cpiv) or quadrature tolerance (others)");
  sub->add_option("--t", f.t, "jump locations, comma separated");
  sub->add_option("--omega", f.omega, "omega_0..omega_m, comma separated");
  sub->add_option("--c", f.c, "path offsets c_1 = 0 < c_2 < ..., comma separated");
  sub->add_option("--fd-step", f.fd_step, "finite-difference step (default 2^{-bits/6})");
  sub->add_option("--samples", f.samples, "Monte Carlo sample count");
  sub->add_option("--region", f.region, "Monte Carlo region lo:hi,lo:hi (inf allowed)");
  sub->add_option("--points", f.points, "scan grid points");
  sub->add_option("--threads", f.threads, "worker threads for scan and mc-compare (0 = all)");
  sub->add_flag("--second-order", f.second_order, "cpiv: also check the second-order equation for a_k");
}

long parse_long(const std::string& s, const char* flag) {
  try {
    size_t used = 0;
    const long v = std::stol(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError(flag, "expected an integer, got '" + s + "'");
}

RunConfig resolve(const std::string& command, const Flags& f, CLI::App* sub) {
  RunConfig rc;
  if (command == "hankel") rc.n_lo = 0, rc.n_hi = 10;
  if (command == "moments") rc.n_lo = 0, rc.n_hi = 12;
  if (command == "mc-compare") rc.n_lo = rc.n_hi = 2;
  if (command == "cpiv") rc.n_lo = rc.n_hi = 3;
  if (sub->count("--config")) rc = load_config_file(f.config, rc);
  auto given = [&](const char* name) { return sub->count(name) > 0; };
  if (given("--precision")) {
    const long b = parse_long(f.precision, "--precision");
    if (b < static_cast<long>(Precision::kMinBits))
      throw ConfigError("--precision", "must be >= " + std::to_string(Precision::kMinBits));
    rc.precision_bits = static_cast<unsigned>(b);
  }
  if (given("--n")) {
    try {
      std::tie(rc.n_lo, rc.n_hi) = parse_n_range(f.n);
    } catch (const ConfigError& e) {
      throw ConfigError("--n", e.what());
    }
  }
  if (given("--t")) rc.t = f.t.empty() ? std::vector<std::string>{} : split_list(f.t);
  if (given("--omega")) rc.omega = split_list(f.omega);
  if (given("--c")) rc.c = split_list(f.c);
  if (given("--x0")) rc.x0 = f.x0;
  if (given("--x1")) rc.x1 = f.x1;
  if (given("--tol")) (command == "cpiv" ? rc.ode_tol : rc.quadrature_tol) = f.tol;
  if (given("--fd-step")) rc.fd_step = f.fd_step;
  if (given("--seed")) {
    if (f.seed.empty() || f.seed[0] == '-') throw ConfigError("--seed", "expected an unsigned integer");
    try {
      size_t used = 0;
      rc.seed = std::stoull(f.seed, &used);
      if (used != f.seed.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw ConfigError("--seed", "expected an unsigned integer, got '" + f.seed + "'");
    }
  }
  if (given("--samples")) rc.samples = parse_long(f.samples, "--samples");
  if (given("--region")) rc.region = f.region;
  if (given("--points")) rc.points = static_cast<int>(parse_long(f.points, "--points"));
  validate(rc);
  return rc;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hankel determinants, ladder identities and Painleve checks for jump-Gaussian weights",
               "jumphankel"};
  app.require_subcommand(1);
  Flags f;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"moments", "moments mu_j of the weight, j in --n"},
      {"ops", "norms and recurrence coefficients of the orthogonal polynomials"},
      {"hankel", "Hankel determinants by two routes (and the closed form for the plain Gaussian)"},
      {"ladder", "R_{n,k}, r_{n,k} with the ladder and compatibility identities"},
      {"iterate", "difference-system iteration against direct ladder data"},
      {"verify", "every identity over the config and n range"},
      {"sigma-pde", "sigma_n, Delta_k and the sigma-form equations at x0"},
      {"riccati", "Riccati equations for R, r and the second-order equation for R at x0"},
      {"toda", "Toda equations along the diagonal path at x0"},
      {"cpiv", "integrate the coupled Painleve IV system from x0 to x1 and compare"},
      {"scan", "path identities over a grid from x0 to x1"},
      {"mc-compare", "GUE Monte Carlo against determinant probabilities"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_flags(sub, f);
    subs[name] = sub;
  }

  if (!args.empty() && !args[0].empty() && args[0][0] != '-' && !subs.count(args[0])) {
    err << "usage error: unknown subcommand '" << args[0] << "'\n";
    return kUsageError;
  }
  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }

  std::string command;
  CLI::App* sub = nullptr;
  for (const auto& [name, s] : subs)
    if (s->parsed()) command = name, sub = s;

  try {
    const RunConfig rc = resolve(command, f, sub);
    std::string format = sub->count("--format") ? f.format : (command == "mc-compare" ? "json" : "csv");
    if (format != "csv" && format != "json") throw ConfigError("--format", "expected csv or json, got '" + format + "'");

    cli::Artifact a;
    if (command == "moments") a = cli::cmd_moments(rc);
    else if (command == "ops") a = cli::cmd_ops(rc);
    else if (command == "hankel") a = cli::cmd_hankel(rc);
    else if (command == "ladder") a = cli::cmd_ladder(rc);
    else if (command == "iterate") a = cli::cmd_iterate(rc);
    else if (command == "verify") a = cli::cmd_verify(rc);
    else if (command == "sigma-pde") a = cli::cmd_sigma_pde(rc);
    else if (command == "riccati") a = cli::cmd_riccati(rc);
    else if (command == "toda") a = cli::cmd_toda(rc);
    else if (command == "cpiv") a = cli::cmd_cpiv(rc, f.second_order);
    else if (command == "scan") a = cli::cmd_scan(rc, f.threads);
    else a = cli::cmd_mc_compare(rc, f.threads);

    const std::string text = format == "csv" ? cli::render_csv(a, rc) : cli::render_json(a, rc);
    if (sub->count("--out")) {
      std::ofstream file(f.out, std::ios::binary);
      if (!file) throw ConfigError("--out", "cannot write '" + f.out + "'");
      file << text;
    } else {
      out << text;
    }
    if (!a.passed()) {
      for (const auto& c : a.checks)
        if (!c.pass())
          err << "residual violation: " << c.identity << " " << c.max_rel.to_string(3) << (c.lower ? " < " : " > ")
              << c.bound.to_string(3) << '\n';
      return kResidualViolation;
    }
    return kPass;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::out_of_range& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  }
}

}  // namespace jumphankel
