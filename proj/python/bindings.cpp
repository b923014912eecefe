#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "padmm/bench.hpp"
#include "padmm/error.hpp"
#include "padmm/parameters.hpp"

namespace py = pybind11;
using namespace padmm;

namespace {

// (exit_code, message, report, trace_csv, certificate) with JSON documents as text;
// the Python side decodes them.
py::tuple artifacts_tuple(const RunArtifacts& a) {
  const std::string cert = a.certificate ? certificate_to_json(*a.certificate).dump() : "";
  const std::string report = a.report.is_null() ? "" : a.report.dump();
  return py::make_tuple(a.exit_code, a.message, report, a.trace_csv, cert);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Proximal ADMM with over-relaxation and a runtime certifier";

  // Translators are tried newest first, so the base class goes first.
  py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<AssumptionError>(m, "AssumptionError", PyExc_ValueError);

  m.def(
      "execute_json",
      [](const std::string& config, const std::string& base_dir) {
        RunArtifacts a;
        {
          py::gil_scoped_release release;
          try {
            a = execute(run_config_from_json(Json::parse(config), base_dir));
          } catch (const Json::exception& e) {
            throw ConfigError(e.what());
          }
        }
        return artifacts_tuple(a);
      },
      py::arg("config"), py::arg("base_dir") = "");

  m.def("run_config", [](const std::string& path) {
    RunArtifacts a;
    {
      py::gil_scoped_release release;
      a = run_config(path);
    }
    return artifacts_tuple(a);
  });

  m.def(
      "generate_json",
      [](const std::string& family, int n, int p, int l, std::uint64_t seed,
         const std::string& params) {
        GeneratorSpec spec{family, n, p, l, seed, {}};
        if (!params.empty()) {
          Json doc = generator_spec_to_json(spec);
          doc["params"] = Json::parse(params);
          spec = generator_spec_from_json(doc);
        }
        return instance_to_json(generate_instance(spec)).dump();
      },
      py::arg("family"), py::arg("n"), py::arg("p"), py::arg("l"), py::arg("seed"),
      py::arg("params") = "");

  m.def("families", [] { return generator_families(); });

  m.def("gamma", &gamma_of, py::arg("theta"));
  m.def("c1", &c1_of, py::arg("theta"), py::arg("beta"), py::arg("sigma_B_plus"));
  m.def("delta1", &delta1_of, py::arg("beta"), py::arg("tau"), py::arg("m"), py::arg("L"),
        py::arg("gamma"), py::arg("sigma_B"), py::arg("sigma_B_plus"));
  m.def("delta2", &delta2_of, py::arg("beta"), py::arg("theta"), py::arg("gamma"), py::arg("L"),
        py::arg("tau"), py::arg("sigma_B_plus"), py::arg("delta1"));

  m.def("spectral_summary", [](const Matrix& B) {
    const SpectralSummary s = spectral_summary(B);
    py::dict d;
    d["sigma_B"] = s.sigma_B;
    d["sigma_B_plus"] = s.sigma_B_plus;
    d["norm_BtB"] = s.norm_BtB;
    d["rank"] = s.rank;
    return d;
  });

  m.def(
      "eta0",
      [](double theta, double tau, double beta, double m_, const Matrix& B, const Vector& rhs) {
        const SpectralSummary s = spectral_summary(B);
        Eta0Input in;
        in.theta = theta;
        in.tau = tau;
        in.beta = beta;
        in.m = m_;
        in.sigma_B = s.sigma_B;
        in.sigma_B_plus = s.sigma_B_plus;
        in.rhs = rhs;
        const Eta0Solution e = solve_eta0(in, B);
        return py::make_tuple(e.value, e.feasible);
      },
      py::arg("theta"), py::arg("tau"), py::arg("beta"), py::arg("m"), py::arg("B"),
      py::arg("rhs"));
}
