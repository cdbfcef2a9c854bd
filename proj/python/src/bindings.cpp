#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <sstream>

#include "jumphankel/cli.hpp"
#include "jumphankel/cpiv.hpp"
#include "jumphankel/errors.hpp"
#include "jumphankel/gue_mc.hpp"
#include "jumphankel/ladder.hpp"
#include "jumphankel/opsys.hpp"
#include "jumphankel/painleve.hpp"

namespace py = pybind11;
using namespace jumphankel;

namespace {

// Numbers cross the boundary as decimal strings; str(x) of a float is its shortest repr.
Real to_real(const py::handle& v, Precision p) { return Real::parse(py::str(v).cast<std::string>(), p); }

std::vector<Real> to_reals(const py::sequence& xs, Precision p) {
  std::vector<Real> out;
  for (const auto& x : xs) out.push_back(to_real(x, p));
  return out;
}

std::vector<std::string> strs(const std::vector<Real>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.to_string());
  return out;
}

JumpWeightConfig weight(const py::sequence& t, const py::sequence& omega, long bits) {
  const Precision p(bits);
  return JumpWeightConfig::make(to_reals(t, p), to_reals(omega, p), p);
}

py::dict ladder_dict(const LadderState& s) {
  py::dict d;
  d["n"] = s.n;
  d["R"] = strs(s.R);
  d["r"] = strs(s.r);
  return d;
}

py::dict piv_dict(const PIVState& s) {
  py::dict d;
  d["x"] = s.x.to_string();
  d["a"] = strs(s.a);
  d["b"] = strs(s.b);
  d["y_alias"] = s.y_alias.to_string();
  return d;
}

py::dict report_dict(const ResidualReport& rep) {
  py::dict d;
  for (const auto& id : rep.identities()) d[py::str(id)] = rep.max_rel(id).to_string(6);
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Hankel determinants and Painleve checks for jump-Gaussian weights";

  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  (void)numerical;

  const py::arg t("t"), omega("omega");
  const py::arg_v bits = py::arg("precision") = 256;

  m.def("moments", [](unsigned max_order, const py::sequence& t, const py::sequence& omega, long bits) {
        return strs(moments(weight(t, omega, bits), max_order).mu);
      }, py::arg("max_order"), t, omega, bits);

  m.def("hankel_det", [](int n, const py::sequence& t, const py::sequence& omega, long bits) {
        return hankel_det(n, weight(t, omega, bits)).to_string();
      }, py::arg("n"), t, omega, bits, "D_n via the orthogonal-polynomial norms");

  m.def("hankel_det_direct", [](int n, const py::sequence& t, const py::sequence& omega, long bits) {
        return hankel_det_direct(n, weight(t, omega, bits)).to_string();
      }, py::arg("n"), t, omega, bits, "D_n by elimination on the moment matrix");

  m.def("ops", [](int n_max, const py::sequence& t, const py::sequence& omega, long bits) {
        const auto sys = build_op_system(weight(t, omega, bits), n_max);
        py::dict d;
        d["h"] = strs(sys.h);
        d["alpha"] = strs(sys.alpha);
        d["beta"] = strs(sys.beta);
        d["p_sub"] = strs(sys.p_sub);
        return d;
      }, py::arg("n_max"), t, omega, bits);

  m.def("ladder", [](int n, const py::sequence& t, const py::sequence& omega, long bits) {
        return ladder_dict(compute_ladder(build_op_system(weight(t, omega, bits), n), n));
      }, py::arg("n"), t, omega, bits, "R_{n,k} and r_{n,k} for k = 1..m");

  m.def("iterate", [](int n_max, const py::sequence& t, const py::sequence& omega, long bits) {
        const auto it = iterate_difference(weight(t, omega, bits), n_max);
        py::list states;
        for (const auto& s : it.states) states.append(ladder_dict(s));
        return states;
      }, py::arg("n_max"), t, omega, bits, "ladder data from the difference system, degrees 0..n_max");

  m.def("sigma", [](int n, const py::sequence& t, const py::sequence& omega, long bits) {
        const auto s = sigma_sample(weight(t, omega, bits), n);
        py::dict d;
        d["sigma"] = s.sigma.to_string();
        d["sigma_fd"] = s.sigma_fd.to_string();
        d["sigma_rR"] = s.sigma_rR.to_string();
        d["delta"] = strs(s.delta);
        d["residuals"] = report_dict(check_sigma_pde(s));
        d["branch_flip_margin"] = branch_flip_margin(s).to_string(6);
        return d;
      }, py::arg("n"), t, omega, bits);

  m.def("map_to_piv", [](int n, const py::sequence& t, const py::sequence& omega, long bits) {
        return piv_dict(map_to_piv(weight(t, omega, bits), n));
      }, py::arg("n"), t, omega, bits, "state (x, a_k, b_k) of the coupled Painleve IV system");

  m.def("integrate_cpiv",
        [](int n, const py::sequence& c, const py::sequence& omega, const py::object& x0, const py::object& x1,
           const py::object& tol, long bits) {
          const Precision p(bits);
          const auto path = DiagonalPath::make(to_reals(c, p), to_reals(omega, p), p);
          const auto init = map_to_piv(path.at(to_real(x0, p)), n);
          const auto traj = integrate_cpiv(init, path, n, to_real(x1, p), to_real(tol, p));
          py::dict d;
          d["start"] = piv_dict(init);
          d["end"] = piv_dict(traj.back());
          d["direct"] = piv_dict(map_to_piv(path.at(to_real(x1, p)), n));
          d["steps"] = traj.nodes().size() - 1;
          d["rejected_steps"] = traj.rejected_steps();
          d["residuals"] = report_dict(check_cpiv_trajectory(path, n, traj, false));
          return d;
        },
        py::arg("n"), py::arg("c"), omega, py::arg("x0"), py::arg("x1"), py::arg("tol") = "1e-10", bits);

  m.def("determinant_probability", [](const std::string& region, int n, long bits) {
        return determinant_probability(parse_region(region), n, Precision(bits)).to_string();
      }, py::arg("region"), py::arg("n"), bits, "P(every GUE eigenvalue lies in region) as D_n ratio");

  m.def("estimate_probability",
        [](int n, const std::string& region, long samples, std::uint64_t seed, unsigned threads) {
          MCEstimate e;
          {
            py::gil_scoped_release release;
            e = estimate_probability(n, parse_region(region), samples, seed, threads);
          }
          py::dict d;
          d["samples"] = e.samples;
          d["hits"] = e.hits;
          d["p_hat"] = e.p_hat;
          d["std_err"] = e.std_err;
          return d;
        },
        py::arg("n"), py::arg("region"), py::arg("samples") = 100000, py::arg("seed") = 1,
        py::arg("threads") = 0);

  m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      }, py::arg("args"), "run a CLI subcommand; returns (exit_code, stdout, stderr)");
}
