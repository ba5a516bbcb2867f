// Copyright 2026 The vdclab Authors
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

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "vdc/cli.h"
#include "vdc/ensemble.h"
#include "vdc/field.h"
#include "vdc/observables.h"
#include "vdc/prepare.h"
#include "vdc/tomography.h"

namespace py = pybind11;
using namespace vdc;

namespace {

using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

CMat4 to_cmat(const ComplexArray &a) {
    if (a.ndim() != 2 || a.shape(0) != 4 || a.shape(1) != 4) {
        throw py::value_error("expected a 4x4 matrix");
    }
    auto r = a.unchecked<2>();
    CMat4 m;
    for (py::ssize_t i = 0; i < 4; i++) {
        for (py::ssize_t j = 0; j < 4; j++) {
            m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = r(i, j);
        }
    }
    return m;
}

ComplexArray to_array(const CMat4 &m) {
    ComplexArray a({4, 4});
    auto w = a.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < 4; i++) {
        for (py::ssize_t j = 0; j < 4; j++) {
            w(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
        }
    }
    return a;
}

CoherenceMatrix to_coherence(const ComplexArray &a) {
    return CoherenceMatrix(to_cmat(a));
}

}  // namespace

PYBIND11_MODULE(_vdclab, m) {
    m.doc() = "Visibility, distinguishability and concurrence of two-path optical fields";

    py::class_<ObservableTriple>(m, "ObservableTriple")
        .def(py::init<double, double, double>(), py::arg("v"), py::arg("d"), py::arg("c"))
        .def_readwrite("v", &ObservableTriple::v)
        .def_readwrite("d", &ObservableTriple::d)
        .def_readwrite("c", &ObservableTriple::c)
        .def_property_readonly("p", &ObservableTriple::p)
        .def_property_readonly("sum", &ObservableTriple::sum)
        .def("__repr__", [](const ObservableTriple &t) {
            std::ostringstream ss;
            ss << "ObservableTriple(v=" << t.v << ", d=" << t.d << ", c=" << t.c << ")";
            return ss.str();
        });

    py::class_<SpinState>(m, "SpinState")
        .def(py::init<Complex, Complex>(), py::arg("cx"), py::arg("cy"))
        .def_static("x", &SpinState::x)
        .def_static("y", &SpinState::y)
        .def_static("canonical", &SpinState::canonical, py::arg("theta"), py::arg("xi") = 0.0)
        .def_property_readonly("cx", &SpinState::cx)
        .def_property_readonly("cy", &SpinState::cy);

    py::class_<TwoPathBeam>(m, "TwoPathBeam")
        .def(py::init<Complex, Complex, SpinState, SpinState>(), py::arg("amp_a"), py::arg("amp_b"),
             py::arg("spin_a"), py::arg("spin_b"))
        .def_property_readonly("amp_a", &TwoPathBeam::amp_a)
        .def_property_readonly("amp_b", &TwoPathBeam::amp_b)
        .def_property_readonly("spin_a", &TwoPathBeam::spin_a)
        .def_property_readonly("spin_b", &TwoPathBeam::spin_b)
        .def_property_readonly("intensity_a", &TwoPathBeam::intensity_a)
        .def_property_readonly("intensity_b", &TwoPathBeam::intensity_b);

    m.def("observe", &observe, py::arg("beam"), "(V, D, C) of a pure two-path beam");
    m.def("mutual_coherence", &mutual_coherence, py::arg("beam"));
    m.def("concurrence_pure", &concurrence_pure, py::arg("beam"));
    m.def("degree_of_polarization", &degree_of_polarization, py::arg("beam"));
    m.def("coherence_matrix", [](const TwoPathBeam &b) { return to_array(to_coherence_matrix(b).matrix()); },
          py::arg("beam"), "4x4 coherence matrix in the basis (a x, a y, b x, b y)");
    m.def(
        "fringe_scan",
        [](const TwoPathBeam &b, std::size_t n, double lo, double hi) {
            std::vector<std::pair<double, double>> out;
            for (const FringeSample &s : fringe_scan(b, n, lo, hi)) {
                out.emplace_back(s.phase, s.intensity);
            }
            return out;
        },
        py::arg("beam"), py::arg("n_points") = 101, py::arg("phase_min") = 0.0,
        py::arg("phase_max") = 2 * 3.14159265358979323846);
    m.def(
        "classify_extreme",
        [](const TwoPathBeam &b) {
            const ExtremeClass c = classify_extreme(b);
            return py::make_tuple(std::string(to_string(c.kind)), c.factored_phase);
        },
        py::arg("beam"), "(kind, factored phase or None)");

    py::class_<PreparationParams>(m, "PreparationParams")
        .def(py::init<>())
        .def_readwrite("r", &PreparationParams::r)
        .def_readwrite("theta", &PreparationParams::theta)
        .def_readwrite("xi", &PreparationParams::xi)
        .def_readwrite("theta_indeterminate", &PreparationParams::theta_indeterminate);
    m.def("predict", &predict, py::arg("params"));
    m.def("solve_target", py::overload_cast<double, double, double>(&solve_target), py::arg("v"), py::arg("d"),
          py::arg("c"));
    m.def("realize", &realize, py::arg("params"), py::arg("total_intensity") = 1.0);
    m.def("sample_octant", &sample_octant, py::arg("n"), py::arg("seed") = 0);

    py::class_<GridState>(m, "GridState")
        .def_readonly("index", &GridState::index)
        .def_readonly("target", &GridState::target)
        .def_readonly("r_squared", &GridState::r_squared)
        .def_readonly("cos_theta", &GridState::cos_theta)
        .def_readonly("params", &GridState::params)
        .def_readonly("measured", &GridState::measured);
    m.def("grid_states", &grid_states);

    py::class_<NoiseModel>(m, "NoiseModel")
        .def(py::init([](double sigma_rel, double sys_visibility, std::uint64_t seed) {
                 NoiseModel n{sigma_rel, sys_visibility, seed};
                 n.validate();
                 return n;
             }),
             py::arg("sigma_rel") = 0.0, py::arg("sys_visibility") = 1.0, py::arg("seed") = 0)
        .def_readonly("sigma_rel", &NoiseModel::sigma_rel)
        .def_readonly("sys_visibility", &NoiseModel::sys_visibility)
        .def_readonly("seed", &NoiseModel::seed);

    py::enum_<Correction>(m, "Correction")
        .value("NONE", Correction::kNone)
        .value("VISIBILITY", Correction::kVisibility)
        .value("COHERENCE", Correction::kCoherence);

    m.def(
        "measure",
        [](const ComplexArray &w, const NoiseModel &noise) {
            const TomographyRecord r = measure(to_coherence(w), noise);
            return std::vector<double>(r.intensities.begin(), r.intensities.end());
        },
        py::arg("w"), py::arg("noise") = NoiseModel{}, "36 joint projection intensities, spatial-major");
    m.def(
        "reconstruct",
        [](const std::vector<double> &intensities) {
            if (intensities.size() != kJointBases) {
                throw py::value_error("expected 36 intensities");
            }
            TomographyRecord rec;
            std::copy(intensities.begin(), intensities.end(), rec.intensities.begin());
            const Reconstruction r = reconstruct(rec);
            return py::make_tuple(to_array(r.w.matrix()), r.min_raw_eigenvalue, r.nonphysical);
        },
        py::arg("intensities"), "(matrix, smallest raw eigenvalue, nonphysical flag)");
    m.def(
        "wootters_concurrence", [](const ComplexArray &w) { return wootters_concurrence(to_coherence(w)); },
        py::arg("w"));
    m.def(
        "observables_from_matrix",
        [](const ComplexArray &w, double sys_visibility, Correction mode) {
            return corrected_observables(to_coherence(w), sys_visibility, mode);
        },
        py::arg("w"), py::arg("sys_visibility") = 1.0, py::arg("correction") = Correction::kNone);

    py::class_<ConvergenceRow>(m, "ConvergenceRow")
        .def_readonly("n", &ConvergenceRow::n)
        .def_readonly("v_err", &ConvergenceRow::v_err)
        .def_readonly("d_err", &ConvergenceRow::d_err)
        .def_readonly("c_err", &ConvergenceRow::c_err)
        .def_readonly("gamma_err", &ConvergenceRow::gamma_err);
    py::class_<ConvergenceStudy>(m, "ConvergenceStudy")
        .def_readonly("rows", &ConvergenceStudy::rows)
        .def_readonly("v_slope", &ConvergenceStudy::v_slope)
        .def_readonly("d_slope", &ConvergenceStudy::d_slope)
        .def_readonly("c_slope", &ConvergenceStudy::c_slope)
        .def_readonly("gamma_slope", &ConvergenceStudy::gamma_slope);
    m.def(
        "convergence_study",
        [](Complex gamma, Complex amp_a, Complex amp_b, std::vector<std::size_t> schedule, std::size_t replicates,
           std::size_t n_time_samples, std::uint64_t seed) {
            ConvergenceConfig cfg{gamma, amp_a, amp_b, std::move(schedule), replicates, n_time_samples, seed};
            py::gil_scoped_release release;
            return convergence_study(cfg);
        },
        py::arg("gamma"), py::arg("amp_a") = Complex(1), py::arg("amp_b") = Complex(1),
        py::arg("schedule") = ConvergenceConfig{}.schedule, py::arg("replicates") = ConvergenceConfig{}.replicates,
        py::arg("n_time_samples") = ConvergenceConfig{}.n_time_samples, py::arg("seed") = 0);
    m.def(
        "ensemble_estimate",
        [](Complex gamma, std::size_t n, std::uint64_t seed, Complex amp_a, Complex amp_b, std::size_t t) {
            py::gil_scoped_release release;
            auto [a, b] = generate_pair(gamma, n, seed, t);
            const EnsembleEstimate e = empirical_observables(a, b, amp_a, amp_b);
            return std::make_pair(e.triple, e.gamma_hat);
        },
        py::arg("gamma"), py::arg("n"), py::arg("seed") = 0, py::arg("amp_a") = Complex(1),
        py::arg("amp_b") = Complex(1), py::arg("n_time_samples") = kDefaultTimeSamples,
        "(estimated triple, estimated gamma) from one Monte Carlo ensemble");

    m.def(
        "run_cli",
        [](const std::vector<std::string> &args) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line front end in-process: (exit code, stdout, stderr)");
}
