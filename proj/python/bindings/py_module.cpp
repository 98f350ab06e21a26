#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "schro/feynman_kac.hpp"
#include "schro/renorm.hpp"
#include "schro/spde.hpp"

namespace py = pybind11;
using namespace schro;

namespace {

// long Monte Carlo / ensemble calls run without the GIL
constexpr auto nogil = py::call_guard<py::gil_scoped_release>();

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "white-noise Schrödinger renormalization: constants, Brownian "
              "functionals and the periodic-box reference solver";

    py::class_<MollifierSpec>(m, "MollifierSpec")
        .def_readonly("half_width", &MollifierSpec::half_width)
        .def_readonly("normalization", &MollifierSpec::normalization)
        .def_readonly("eval_points", &MollifierSpec::eval_points)
        .def("eta", &MollifierSpec::eta, py::arg("t"))
        .def("__call__", &MollifierSpec::eta, py::arg("t"))
        .def("__repr__", [](const MollifierSpec& s) {
            return "MollifierSpec(half_width=" + std::to_string(s.half_width) + ")";
        });
    m.def("make_bump_eta", &make_bump_eta, py::arg("half_width"),
          py::arg("eval_points") = 512);
    m.def("eta_hat", &eta_hat, py::arg("eta"), py::arg("omega"));
    m.def("eval_R_tilde", &eval_R_tilde, py::arg("eta"), py::arg("omega"), py::arg("xi"));

    py::class_<TemporalCovariance>(m, "TemporalCovariance")
        .def_static("build", &TemporalCovariance::build, py::arg("eta"),
                    py::arg("grid_step"))
        .def("__call__", &TemporalCovariance::operator(), py::arg("t"))
        .def_property_readonly("support_radius", &TemporalCovariance::support_radius)
        .def_property_readonly("grid_step", &TemporalCovariance::grid_step)
        .def_property_readonly("at_zero", &TemporalCovariance::at_zero)
        .def_property_readonly("l1_norm", &TemporalCovariance::l1_norm);

    py::class_<MCEstimate>(m, "MCEstimate")
        .def_readonly("value", &MCEstimate::value)
        .def_readonly("se_re", &MCEstimate::se_re)
        .def_readonly("se_im", &MCEstimate::se_im)
        .def_readonly("n_samples", &MCEstimate::n_samples)
        .def("se_abs", &MCEstimate::se_abs)
        .def("__repr__", [](const MCEstimate& e) {
            return "MCEstimate(value=(" + std::to_string(e.value.real()) + "," +
                   std::to_string(e.value.imag()) + "), n=" + std::to_string(e.n_samples) +
                   ")";
        });

    py::class_<CovMatrixA>(m, "CovMatrixA")
        .def_readonly("a11", &CovMatrixA::a11)
        .def_readonly("a12", &CovMatrixA::a12)
        .def_readonly("a22", &CovMatrixA::a22)
        .def_readonly("se11", &CovMatrixA::se11)
        .def_readonly("se12", &CovMatrixA::se12)
        .def_readonly("se22", &CovMatrixA::se22)
        .def_readonly("n_samples", &CovMatrixA::n_samples);

    py::class_<ErrorBarred>(m, "ErrorBarred")
        .def_readonly("value", &ErrorBarred::value)
        .def_readonly("se_re", &ErrorBarred::se_re)
        .def_readonly("se_im", &ErrorBarred::se_im);

    m.def("compute_z1", &compute_z1, py::arg("R"), py::arg("abs_tol") = 1e-10);
    m.def("mean_growth_correction", &mean_growth_correction, py::arg("R"),
          py::arg("abs_tol") = 1e-10);
    m.def("cross_section", &cross_section, py::arg("eta"), py::arg("abs_tol") = 1e-10);
    m.def("compute_z2", &compute_z2, py::arg("A"));
    m.def("limit_profile", &limit_profile, py::arg("xi"), py::arg("t"), py::arg("z2"),
          py::arg("phi0_hat"));
    m.def("gaussian_phase_mean", &gaussian_phase_mean, py::arg("u"));

    py::class_<FunctionalSample>(m, "FunctionalSample")
        .def_readonly("eps_B_T", &FunctionalSample::eps_B_T)
        .def_readonly("X", &FunctionalSample::X)
        .def_readonly("X_centered", &FunctionalSample::X_centered)
        .def_readonly("t", &FunctionalSample::t)
        .def_readonly("eps", &FunctionalSample::eps);

    py::class_<FeynmanKacEngine>(m, "FeynmanKacEngine")
        .def(py::init<TemporalCovariance, double>(), py::arg("R"), py::arg("delta"))
        .def_property_readonly("delta", &FeynmanKacEngine::delta)
        .def_property_readonly("z1", &FeynmanKacEngine::z1)
        .def_property_readonly("c0", &FeynmanKacEngine::c0)
        .def("deterministic_bound", &FeynmanKacEngine::deterministic_bound, py::arg("eps"),
             py::arg("t"))
        .def("fk_wave_estimator", &FeynmanKacEngine::fk_wave_estimator, py::arg("xi"),
             py::arg("t"), py::arg("eps"), py::arg("n_paths"), py::arg("seed"), nogil)
        .def("dyson_truncated_mean", &FeynmanKacEngine::dyson_truncated_mean, py::arg("xi"),
             py::arg("t"), py::arg("max_pairs"), py::arg("tail_tol") = 1e-3)
        .def("dyson_tail_bound", &FeynmanKacEngine::dyson_tail_bound, py::arg("xi"),
             py::arg("t"), py::arg("after_pairs"))
        .def("estimate_A", &FeynmanKacEngine::estimate_A, py::arg("n_samples"),
             py::arg("seed"), nogil)
        .def("estimate_mean_Y0", &FeynmanKacEngine::estimate_mean_Y0, py::arg("n_samples"),
             py::arg("seed"), nogil)
        .def("estimate_mean_X", &FeynmanKacEngine::estimate_mean_X, py::arg("t"),
             py::arg("eps"), py::arg("n_paths"), py::arg("seed"), nogil)
        .def("mean_X_quadrature", &FeynmanKacEngine::mean_X_quadrature, py::arg("t"),
             py::arg("eps"))
        .def("exp_moment_batch", &FeynmanKacEngine::exp_moment_batch, py::arg("lambdas"),
             py::arg("t"), py::arg("eps"), py::arg("n_paths"), py::arg("seed"), nogil)
        .def("sample_functionals", &FeynmanKacEngine::sample_functionals, py::arg("t"),
             py::arg("eps"), py::arg("n"), py::arg("seed"), py::arg("purpose"), nogil);

    py::class_<SpdeParams>(m, "SpdeParams")
        .def(py::init<>())
        .def_readwrite("length", &SpdeParams::length)
        .def_readwrite("n_points", &SpdeParams::n_points)
        .def_readwrite("dt", &SpdeParams::dt)
        .def_readwrite("eps", &SpdeParams::eps)
        .def_readwrite("t_final", &SpdeParams::t_final);

    py::class_<EnsembleResult>(m, "EnsembleResult")
        .def_readonly("xi_probes", &EnsembleResult::xi_probes)
        .def_readonly("phi_hat", &EnsembleResult::phi_hat);

    m.def("initial_bump_hat", &initial_bump_hat, py::arg("params"), py::arg("xi"));
    m.def("potential_variance", &potential_variance, py::arg("params"), py::arg("eta"));
    m.def("ensemble_mean_fourier", &ensemble_mean_fourier, py::arg("params"),
          py::arg("eta"), py::arg("xi_probes"), py::arg("n_realizations"), py::arg("seed"),
          nogil);
}
