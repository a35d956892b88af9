#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pinchlab/campaign.hpp"
#include "pinchlab/gentle.hpp"
#include "pinchlab/json_io.hpp"
#include "pinchlab/pinching.hpp"
#include "pinchlab/spectrahedron.hpp"

namespace py = pybind11;
using namespace pinchlab;

namespace {

using Matrices = std::vector<ComplexMatrix>;

// Structured results cross the boundary as plain dicts.
py::object to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

Tolerance tolerance(double psd_slack, double band) {
  Tolerance t{psd_slack, band};
  t.validate();
  return t;
}

#define TOL_ARGS py::arg("psd_slack") = 1e-9, py::arg("band") = 1e-7

}  // namespace

PYBIND11_MODULE(_pinchlab, m) {
  m.doc() = "Pinching inequalities, weight spectrahedra and gentle-measurement bounds";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<json::InputError>(m, "InputError", base.ptr());

  m.def("hermitize", [](const ComplexMatrix& a) { return hermitize(a); }, py::arg("m"));
  m.def(
      "is_psd",
      [](const ComplexMatrix& a, double s, double b) { return to_py(json::to_json(is_psd(a, tolerance(s, b)))); },
      py::arg("m"), TOL_ARGS);
  m.def(
      "loewner_leq",
      [](const ComplexMatrix& a, const ComplexMatrix& b, double s, double band) {
        return to_py(json::to_json(loewner_leq(a, b, tolerance(s, band))));
      },
      py::arg("a"), py::arg("b"), TOL_ARGS);
  m.def("trace_norm", [](const ComplexMatrix& a) { return trace_norm(a); }, py::arg("m"));

  auto membership = [&m](const char* name, MembershipVerdict (*fn)(const WeightVector&, const Tolerance&)) {
    m.def(
        name,
        [fn](std::vector<double> w, double s, double b) {
          return to_py(json::to_json(fn(WeightVector(std::move(w)), tolerance(s, b))));
        },
        py::arg("weights"), TOL_ARGS);
  };
  membership("in_A_direct", &in_A_direct);
  membership("in_A_recursive", &in_A_recursive);
  membership("in_A", &in_A);
  membership("in_A3_closed_form", &in_A3_closed_form);
  membership("in_B_direct", &in_B_direct);
  m.def(
      "sign_structure",
      [](std::vector<double> w) { return std::string(to_string(b_sign_structure(WeightVector(std::move(w))))); },
      py::arg("weights"));

  m.def(
      "sample_A_boundary",
      [](std::size_t n, std::optional<std::vector<double>> prefix, std::uint64_t seed) {
        const WeightVector w = sample_A_boundary(n, std::move(prefix), seed);
        return std::vector<double>(w.values().begin(), w.values().end());
      },
      py::arg("n"), py::arg("prefix") = py::none(), py::arg("seed") = 0);
  m.def(
      "sample_B2_boundary",
      [](double t) {
        const WeightVector w = sample_B2_boundary(t);
        return std::vector<double>(w.values().begin(), w.values().end());
      },
      py::arg("t"));
  m.def(
      "sample_A2_boundary",
      [](double t) {
        const WeightVector w = sample_A2_boundary(t);
        return std::vector<double>(w.values().begin(), w.values().end());
      },
      py::arg("t"));

  m.def(
      "pinch",
      [](const ComplexMatrix& rho, Matrices projectors) { return pinch(rho, ProjectivePOVM(std::move(projectors))); },
      py::arg("rho"), py::arg("projectors"));
  m.def(
      "weighted_conjugation",
      [](const ComplexMatrix& rho, Matrices ops, std::vector<double> w) {
        return weighted_conjugation(rho, OperatorFamily(std::move(ops)), WeightVector(std::move(w)));
      },
      py::arg("rho"), py::arg("operators"), py::arg("weights"));
  m.def(
      "verify_generalized",
      [](Matrices ops, std::vector<double> alpha, const ComplexMatrix& rho, double s, double b) {
        return to_py(json::to_json(
            verify_generalized(OperatorFamily(std::move(ops)), WeightVector(std::move(alpha)), rho, tolerance(s, b))));
      },
      py::arg("operators"), py::arg("alpha"), py::arg("rho"), TOL_ARGS);
  m.def(
      "verify_reverse",
      [](Matrices ops, std::vector<double> beta, const ComplexMatrix& rho, double s, double b) {
        return to_py(json::to_json(
            verify_reverse(OperatorFamily(std::move(ops)), WeightVector(std::move(beta)), rho, tolerance(s, b))));
      },
      py::arg("operators"), py::arg("beta"), py::arg("rho"), TOL_ARGS);
  m.def(
      "converse_witness",
      [](Matrices projectors, std::optional<std::uint64_t> seed) {
        return converse_witness(ProjectivePOVM(std::move(projectors)), seed);
      },
      py::arg("projectors"), py::arg("seed") = py::none());
  m.def(
      "converse_check",
      [](Matrices projectors, std::vector<double> alpha, std::optional<std::uint64_t> seed, double s, double b) {
        const Tolerance tol = tolerance(s, b);
        return converse_check(ProjectivePOVM(std::move(projectors), tol), WeightVector(std::move(alpha)), seed, tol);
      },
      py::arg("projectors"), py::arg("alpha"), py::arg("seed") = py::none(), TOL_ARGS);
  m.def(
      "converse_verdict",
      [](Matrices projectors, std::vector<double> alpha, std::optional<std::uint64_t> seed, double s, double b) {
        const Tolerance tol = tolerance(s, b);
        return to_py(json::to_json(
            converse_verdict(ProjectivePOVM(std::move(projectors), tol), WeightVector(std::move(alpha)), seed, tol)));
      },
      py::arg("projectors"), py::arg("alpha"), py::arg("seed") = py::none(), TOL_ARGS);

  m.def(
      "gentle_analysis",
      [](const ComplexMatrix& rho, const ComplexMatrix& p, std::optional<double> eps, double s, double b) {
        const Tolerance tol = tolerance(s, b);
        const GentleInstance inst =
            eps ? GentleInstance(rho, p, *eps, tol) : GentleInstance::tight(rho, p, tol);
        nlohmann::json j = json::to_json(analyze_gentle(inst, tol));
        j["epsilon"] = inst.epsilon();
        return to_py(j);
      },
      py::arg("rho"), py::arg("projector"), py::arg("epsilon") = py::none(), TOL_ARGS);

  m.def(
      "run_campaign",
      [](const std::string& mode, std::size_t trials, std::uint64_t seed, std::optional<std::vector<std::size_t>> dims,
         std::optional<std::vector<std::size_t>> arities, unsigned threads) {
        CampaignConfig cfg;
        const auto parsed = parse_campaign_mode(mode);
        if (!parsed) throw DomainError("unknown campaign mode: " + mode);
        cfg.mode = *parsed;
        cfg.trials = trials;
        cfg.master_seed = seed;
        cfg.threads = threads;
        if (dims) cfg.dims = *dims;
        if (arities) cfg.arities = *arities;
        CampaignReport r;
        {
          py::gil_scoped_release release;
          r = run_campaign(cfg);
        }
        return to_py(json::to_json(r));
      },
      py::arg("mode"), py::arg("trials") = 100, py::arg("seed") = 0, py::arg("dims") = py::none(),
      py::arg("arities") = py::none(), py::arg("threads") = 1);
}
