#include <pybind11/complex.h>
#include <pybind11/gil_safe_call_once.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <specnp/gamma_core.hpp>
#include <specnp/serialization.hpp>

namespace py = pybind11;
using namespace specnp;

namespace {

GammaProblem gamma_problem(const std::vector<cplx>& nodes,
                           const std::vector<std::pair<cplx, cplx>>& values) {
  GammaProblem gp;
  gp.nodes = nodes;
  for (const auto& [s, p] : values) gp.values.push_back({s, p});
  return gp;
}

SolveOptions options(const std::string& config_json, std::optional<unsigned long long> seed) {
  SolveOptions opt;
  if (!config_json.empty()) opt.config = io::parse_config(io::json::parse(config_json));
  if (seed) opt.config.seed = *seed;
  return opt;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Spectral Nevanlinna-Pick solver for 2x2 targets";

  PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error;
  error.call_once_and_store_result(
      [&]() { return py::exception<Error>(m, "Error", PyExc_ValueError); });
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
      py::set_error(error.get_stored(), msg.c_str());
    }
  });

  m.def("trdet", [](const Matrix2& w) {
    const GammaPoint v = trdet(w);
    return std::make_pair(v.s, v.p);
  });
  m.def("in_gamma", [](cplx s, cplx p, double tol) { return in_gamma({s, p}, tol); },
        py::arg("s"), py::arg("p"), py::arg("tol") = kMembershipTol);
  m.def("magic_phi", [](cplx z, cplx s, cplx p) { return magic_phi(z, {s, p}); });
  m.def("spectral_radius", &spectral_radius_2x2);
  m.def("pseudo_hyperbolic", &pseudo_hyperbolic);
  m.def("two_point_antipodal_solvable", &two_point_antipodal_solvable);
  m.def("cayley", &cayley);
  m.def("cayley_inv", &cayley_inv);
  m.def("robust_threshold", &robust::robust_threshold);
  m.def("robust_criterion", &robust::robust_criterion);

  m.def(
      "_solve_gamma",
      [](const std::vector<cplx>& nodes, const std::vector<std::pair<cplx, cplx>>& values,
         const std::string& config, std::optional<unsigned long long> seed) {
        const SolveOutcome out = solve_gamma(gamma_problem(nodes, values), options(config, seed));
        io::json j = io::report_json(out);
        if (out.sw) j["realization"] = io::to_json(out.sw->realization);
        return j.dump();
      },
      py::arg("nodes"), py::arg("values"), py::arg("config") = "", py::arg("seed") = py::none());
  m.def(
      "_solve_spectral",
      [](const std::vector<cplx>& nodes, const std::vector<Matrix2>& targets,
         const std::string& config, std::optional<unsigned long long> seed) {
        SpectralProblem sp;
        sp.nodes = nodes;
        sp.targets = targets;
        const SolveOutcome out = solve_spectral(sp, options(config, seed));
        io::json j = io::report_json(out);
        if (out.sw) j["realization"] = io::to_json(out.sw->realization);
        return j.dump();
      },
      py::arg("nodes"), py::arg("targets"), py::arg("config") = "", py::arg("seed") = py::none());
  m.def(
      "_mu_demo",
      [](cplx a, cplx c, int grid, bool synthesize) {
        MuDemoOptions opt;
        opt.grid = grid;
        opt.synthesize = synthesize;
        return io::report_json(run_mu_demo(a, c, opt)).dump();
      },
      py::arg("a"), py::arg("c"), py::arg("grid") = 400, py::arg("synthesize") = true);
}
