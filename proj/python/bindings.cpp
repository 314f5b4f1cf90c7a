#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ccgf/ed.hpp"
#include "ccgf/measure.hpp"
#include "ccgf/spectral.hpp"

namespace py = pybind11;
using namespace ccgf;

namespace {

CCAmplitudes solve_both(const AimParams& p) {
    CCAmplitudes amps = solve_t_amplitudes(p, reference_state(p));
    solve_lambda_amplitudes(p, amps);
    return amps;
}

py::list term_list(const std::vector<LcuTerm>& terms) {
    py::list out;
    for (const LcuTerm& t : terms)
        out.append(py::make_tuple(t.coefficient, t.tier, t.modes, t.w.label()));
    return out;
}

}  // namespace

PYBIND11_MODULE(pyccgf, m) {
    m.doc() = "hybrid coupled-cluster Green's function toolkit";

    py::class_<AimParams>(m, "AimParams")
        .def(py::init<>())
        .def_readwrite("n_bath", &AimParams::n_bath)
        .def_readwrite("u_c", &AimParams::u_c)
        .def_readwrite("eps", &AimParams::eps)
        .def_readwrite("v", &AimParams::v)
        .def("dim", &AimParams::dim)
        .def("n_spin_orbitals", &AimParams::n_spin_orbitals);

    py::class_<ReferenceState>(m, "ReferenceState")
        .def_readonly("occupation", &ReferenceState::occupation)
        .def("bitstring", &ReferenceState::bitstring);

    py::class_<CCAmplitudes>(m, "CCAmplitudes")
        .def_readonly("e_ref", &CCAmplitudes::e_ref)
        .def_readonly("e_corr", &CCAmplitudes::e_corr)
        .def_readonly("e_cc", &CCAmplitudes::e_cc)
        .def_readonly("iterations", &CCAmplitudes::iterations)
        .def_readonly("t_residual", &CCAmplitudes::t_residual)
        .def_readonly("lambda_residual", &CCAmplitudes::lambda_residual)
        .def("t1", &CCAmplitudes::t1)
        .def("t2", &CCAmplitudes::t2)
        .def("lam1", &CCAmplitudes::lam1)
        .def("lam2", &CCAmplitudes::lam2);

    py::class_<GreensSeries>(m, "GreensSeries")
        .def_readonly("grid", &GreensSeries::grid)
        .def_readonly("lesser", &GreensSeries::lesser)
        .def_readonly("greater", &GreensSeries::greater)
        .def_readonly("total", &GreensSeries::total)
        .def_readonly("stderr_re", &GreensSeries::stderr_re)
        .def_readonly("stderr_im", &GreensSeries::stderr_im)
        .def_readonly("mode", &GreensSeries::mode);

    py::class_<SpectralSeries>(m, "SpectralSeries")
        .def_readonly("omega", &SpectralSeries::omega)
        .def_readonly("a", &SpectralSeries::a)
        .def_readonly("delta", &SpectralSeries::delta);

    py::class_<ResourceReport>(m, "ResourceReport")
        .def_readonly("method", &ResourceReport::method)
        .def_readonly("gates", &ResourceReport::gates)
        .def_readonly("ancillas", &ResourceReport::ancillas)
        .def_readonly("queries", &ResourceReport::queries)
        .def_readonly("upsilon", &ResourceReport::upsilon)
        .def_readonly("alpha_norm", &ResourceReport::alpha_norm);

    m.def("reference_state",
          [](const AimParams& p) { return reference_state(p); },
          py::arg("params"));
    m.def("solve", &solve_both, py::arg("params"),
          "converged cluster and response amplitudes of the default reference");
    m.def(
        "site_greens",
        [](const AimParams& p, const CCAmplitudes& amps,
           const std::vector<double>& grid, bool trotter, int substeps) {
            EvolutionConfig ecfg;
            ecfg.trotter = trotter;
            ecfg.r = substeps;
            MeasurementConfig mcfg;
            return site_greens_series(p, amps, grid, ecfg, mcfg);
        },
        py::arg("params"), py::arg("amps"), py::arg("grid"),
        py::arg("trotter") = false, py::arg("substeps") = 0,
        "spin-averaged impurity series in the exact-expectation limit");
    m.def(
        "site_exact",
        [](const AimParams& p, const std::vector<double>& grid) {
            return site_exact_greens(p, grid);
        },
        py::arg("params"), py::arg("grid"),
        "the same series from exact diagonalization");
    m.def(
        "lesser_terms",
        [](int orb_p, int orb_q, const CCAmplitudes& amps) {
            const LcuExpansion x = build_lesser_lcu(orb_p, orb_q, amps);
            return py::make_tuple(term_list(x.ket), term_list(x.bra));
        },
        py::arg("orb_p"), py::arg("orb_q"), py::arg("amps"));
    m.def(
        "greater_terms",
        [](int orb_p, int orb_q, const CCAmplitudes& amps) {
            const LcuExpansion x = build_greater_lcu(orb_p, orb_q, amps);
            return py::make_tuple(term_list(x.ket), term_list(x.bra));
        },
        py::arg("orb_p"), py::arg("orb_q"), py::arg("amps"));
    m.def(
        "spectral",
        [](const GreensSeries& g, double delta, int pad) {
            return spectral_function(g, delta, pad);
        },
        py::arg("series"), py::arg("delta") = 0.1, py::arg("pad") = 4);
    m.def("spectral_weight", &spectral_weight, py::arg("series"));
    m.def("upsilon", &upsilon, py::arg("params"));
    m.def(
        "tgate_estimate",
        [](const std::string& method, const AimParams& p, double t, double eps_s,
           double eps_m, double p_f) {
            return tgate_estimate(cost_method_from_name(method), p, t, eps_s,
                                  eps_m, p_f);
        },
        py::arg("method"), py::arg("params"), py::arg("t") = 1.0,
        py::arg("eps_s") = 1e-3, py::arg("eps_m") = 1e-3, py::arg("p_f") = 0.1);
}
