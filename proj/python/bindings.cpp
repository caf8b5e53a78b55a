// Copyright 2026 The steerlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Python bindings: module steerlab._core.

#include <string>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "steerlab/assemblage.hpp"
#include "steerlab/errors.hpp"
#include "steerlab/filtering.hpp"
#include "steerlab/io.hpp"
#include "steerlab/lhs.hpp"
#include "steerlab/metrics.hpp"
#include "steerlab/tomosim.hpp"

namespace py = pybind11;
using namespace steerlab;

namespace {

std::vector<CMatrix> to_matrices(const std::vector<HermMat>& hs) {
    std::vector<CMatrix> out;
    out.reserve(hs.size());
    for (const auto& h : hs) out.push_back(h.matrix());
    return out;
}

std::vector<HermMat> to_herm(const std::vector<CMatrix>& ms) {
    std::vector<HermMat> out;
    out.reserve(ms.size());
    for (const auto& m : ms) out.emplace_back(m);
    return out;
}

py::list violations_to_py(const std::vector<Violation>& vs) {
    py::list out;
    for (const auto& v : vs) {
        py::dict d;
        d["kind"] = to_string(v.kind);
        d["a"] = v.a;
        d["x"] = v.x;
        d["magnitude"] = v.magnitude;
        d["message"] = v.message;
        out.append(d);
    }
    return out;
}

RobustnessFlavor parse_flavor(const std::string& name) {
    if (name == "lhs") return RobustnessFlavor::kLhsNoise;
    if (name == "generalized") return RobustnessFlavor::kGeneralizedNoise;
    throw DomainError("flavor must be \"lhs\" or \"generalized\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Quantum steering assemblages: filtering, distillation, fidelity and robustness.";

    static py::exception<Error> base(m, "SteerlabError", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<DimensionMismatch>(m, "DimensionMismatch", base.ptr());
    py::register_exception<ShapeMismatch>(m, "ShapeMismatch", base.ptr());
    py::register_exception<NotPSD>(m, "NotPSD", base.ptr());
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<ZeroProbabilityBranch>(m, "ZeroProbabilityBranch", base.ptr());
    py::register_exception<InsufficientCounts>(m, "InsufficientCounts", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<SolverFailure>(m, "SolverFailure", base.ptr());

    py::class_<Assemblage>(m, "Assemblage")
        .def(py::init([](int n_inputs, int n_outputs, int dim, const std::vector<CMatrix>& components) {
                 return Assemblage(n_inputs, n_outputs, dim, to_herm(components));
             }),
             py::arg("n_inputs"), py::arg("n_outputs"), py::arg("dim"), py::arg("components"),
             "Components are ordered x * n_outputs + a; each is Hermitian-symmetrized.")
        .def_property_readonly("n_inputs", &Assemblage::n_inputs)
        .def_property_readonly("n_outputs", &Assemblage::n_outputs)
        .def_property_readonly("dim", &Assemblage::dim)
        .def("component", [](const Assemblage& s, int a, int x) { return s.component(a, x).matrix(); },
             py::arg("a"), py::arg("x"))
        .def("components", [](const Assemblage& s) { return to_matrices(s.components()); })
        .def("probability", &Assemblage::probability, py::arg("a"), py::arg("x"))
        .def("reduced_state", [](const Assemblage& s) { return s.reduced_state().matrix(); })
        .def("validate", [](const Assemblage& s, double tol) { return violations_to_py(validate(s, tol)); },
             py::arg("tol") = kValidationTolerance)
        .def("to_json", [](const Assemblage& s) { return to_json(s).dump(); })
        .def_static("from_json", [](const std::string& text) { return assemblage_from_json(Json::parse(text)); })
        .def("__repr__", [](const Assemblage& s) {
            return "<Assemblage inputs=" + std::to_string(s.n_inputs()) + " outputs=" + std::to_string(s.n_outputs()) +
                   " dim=" + std::to_string(s.dim()) + ">";
        });

    m.def("singlet_assemblage", &singlet_assemblage);
    m.def("alpha_assemblage", &alpha_assemblage, py::arg("alpha2"));
    m.def(
        "from_state",
        [](const CMatrix& state, const std::vector<std::vector<CMatrix>>& measurements) {
            MeasurementSet meas;
            for (const auto& povm : measurements) meas.elements.push_back(to_herm(povm));
            return from_state(HermMat(state), meas);
        },
        py::arg("state"), py::arg("measurements"), "Measurements are a list of POVMs, one per input.");
    m.def("tensor", &tensor);
    m.def("mix", &mix, py::arg("lhs"), py::arg("rhs"), py::arg("p"));
    m.def("max_abs_diff", py::overload_cast<const Assemblage&, const Assemblage&>(&max_abs_diff));
    m.def(
        "uhlmann_fidelity", [](const CMatrix& a, const CMatrix& b) { return uhlmann_fidelity(HermMat(a), HermMat(b)); },
        py::arg("a"), py::arg("b"));

    // filtering
    m.def(
        "paper_filter", [](double alpha2) {
            const KrausFilter f = paper_filter(alpha2);
            std::vector<CMatrix> out;
            for (int w = 0; w < f.n_outcomes(); ++w) out.push_back(f.kraus(w));
            return out;
        },
        py::arg("alpha2"), "Kraus operators of the distillation filter.");
    m.def(
        "apply_filter",
        [](const Assemblage& s, const std::vector<CMatrix>& kraus, int outcome) {
            const FilterOutcome r = apply_filter(s, KrausFilter(kraus), outcome);
            return py::make_tuple(r.output, r.probability);
        },
        py::arg("assemblage"), py::arg("kraus"), py::arg("outcome"), "Returns (output, probability).");

    py::class_<ProtocolResult>(m, "ProtocolResult")
        .def_readonly("n_copies", &ProtocolResult::n_copies)
        .def_readonly("outcomes", &ProtocolResult::outcomes)
        .def_readonly("kept_indices", &ProtocolResult::kept_indices)
        .def_readonly("probability", &ProtocolResult::probability)
        .def("output", &ProtocolResult::output)
        .def("first_kept", &ProtocolResult::first_kept)
        .def("succeeded", &ProtocolResult::succeeded);
    m.def("run_protocol_exact", &run_protocol_exact, py::arg("alpha2"), py::arg("n_copies"));
    m.def("averaged_output", &averaged_output, py::arg("alpha2"), py::arg("n_copies"));

    py::class_<SampledProtocolReport>(m, "SampledProtocolReport")
        .def_readonly("n_copies", &SampledProtocolReport::n_copies)
        .def_readonly("trials", &SampledProtocolReport::trials)
        .def_readonly("seed", &SampledProtocolReport::seed)
        .def_readonly("branch_counts", &SampledProtocolReport::branch_counts)
        .def_readonly("success_count", &SampledProtocolReport::success_count)
        .def_readonly("success_frequency", &SampledProtocolReport::success_frequency)
        .def_readonly("averaged", &SampledProtocolReport::averaged);
    m.def("run_protocol_sampled", &run_protocol_sampled, py::arg("alpha2"), py::arg("n_copies"), py::arg("trials"),
          py::arg("seed"));

    py::class_<RateReport>(m, "RateReport")
        .def_readonly("n_copies", &RateReport::n_copies)
        .def_readonly("p_success", &RateReport::p_success)
        .def_readonly("p_fail", &RateReport::p_fail)
        .def_readonly("rate", &RateReport::rate)
        .def_readonly("asymptotic_rate", &RateReport::asymptotic_rate);
    m.def("rate_report", &rate_report, py::arg("alpha2"), py::arg("n_copies"));

    // metrics
    m.def("assemblage_fidelity", &assemblage_fidelity);
    m.def("assemblage_fidelity_dist", &assemblage_fidelity_dist);
    m.def("singlet_fraction", &singlet_fraction);

    py::class_<ClosedFormReport>(m, "ClosedFormReport")
        .def_readonly("alpha2", &ClosedFormReport::alpha2)
        .def_readonly("n_copies", &ClosedFormReport::n_copies)
        .def_readonly("delta", &ClosedFormReport::delta)
        .def_readonly("p_fail", &ClosedFormReport::p_fail)
        .def_readonly("f0", &ClosedFormReport::f0)
        .def_readonly("f1", &ClosedFormReport::f1)
        .def_readonly("u", &ClosedFormReport::u)
        .def_readonly("v", &ClosedFormReport::v)
        .def_readonly("u2_minus_v2", &ClosedFormReport::u2_minus_v2)
        .def_readonly("fraction", &ClosedFormReport::fraction);
    m.def("closed_forms", &closed_forms, py::arg("alpha2"), py::arg("n_copies"));

    // lhs
    py::class_<RobustnessResult>(m, "RobustnessResult")
        .def_property_readonly("flavor", [](const RobustnessResult& r) { return to_string(r.flavor); })
        .def_readonly("t_star", &RobustnessResult::t_star)
        .def_readonly("dual_bound", &RobustnessResult::dual_bound)
        .def_readonly("noise", &RobustnessResult::noise)
        .def_readonly("mixed", &RobustnessResult::mixed)
        .def_readonly("solver_iters", &RobustnessResult::solver_iters)
        .def_readonly("residual", &RobustnessResult::residual)
        .def_property_readonly("certificate_weights",
                               [](const RobustnessResult& r) { return to_matrices(r.certificate.weights); });
    m.def(
        "lhs_robustness",
        [](const Assemblage& s, const std::string& flavor) { return lhs_robustness(s, parse_flavor(flavor)); },
        py::arg("assemblage"), py::arg("flavor") = "lhs");
    m.def(
        "lhs_membership",
        [](const Assemblage& s) {
            const MembershipResult r = lhs_membership(s);
            py::dict d;
            d["feasible"] = r.feasible;
            d["infeasibility_gap"] = r.infeasibility_gap;
            d["dual_bound"] = r.dual_bound;
            d["residual"] = r.residual;
            d["weights"] = r.model ? py::cast(to_matrices(r.model->weights)) : py::none();
            return d;
        },
        py::arg("assemblage"));
    m.def(
        "lhs_robustness_alternating", [](const Assemblage& s) { return lhs_robustness_alternating(s).t_star; },
        py::arg("assemblage"));

    // tomosim
    m.def(
        "run_tomography",
        [](const Assemblage& s, std::uint64_t shots, std::uint64_t seed) {
            const TomographyRun run = run_tomography(s, shots, seed);
            return py::make_tuple(run.reconstructed, run.reconstruction_residual);
        },
        py::arg("assemblage"), py::arg("shots"), py::arg("seed"), "Returns (reconstructed, residual).");
    m.def("default_alpha2_grid", &default_alpha2_grid);
    m.def(
        "figure3_sweep",
        [](const std::vector<double>& grid, std::uint64_t shots, std::uint64_t seed, int replicas,
           const std::string& flavor) {
            SweepConfig cfg;
            cfg.alpha2_grid = grid.empty() ? default_alpha2_grid() : grid;
            cfg.shots = shots;
            cfg.seed = seed;
            cfg.replicas = replicas;
            cfg.flavor = parse_flavor(flavor);
            py::list rows;
            for (const auto& r : figure3_sweep(cfg)) {
                py::dict d;
                d["alpha2"] = r.alpha2;
                d["delta"] = r.delta;
                d["curve"] = r.curve;
                d["metric"] = r.metric;
                d["exact"] = r.exact;
                d["mean_reconstructed"] = r.mean_reconstructed;
                d["stddev_reconstructed"] = r.stddev_reconstructed;
                d["shots"] = r.shots;
                d["seed"] = r.seed;
                rows.append(d);
            }
            return rows;
        },
        py::arg("alpha2_grid") = std::vector<double>{}, py::arg("shots") = 100000, py::arg("seed") = 1,
        py::arg("replicas") = 10, py::arg("flavor") = "lhs", "Rows as dicts; an empty grid means the default grid.");
}
