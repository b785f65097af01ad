// Python bindings for the main operations. Thin layer: all logic lives
// in the core library.

#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <vector>

#include "hopf/curvature.hpp"
#include "hopf/flow.hpp"
#include "hopf/forms.hpp"
#include "hopf/metric.hpp"
#include "hopf/soliton.hpp"
#include "hopf/surface.hpp"

namespace py = pybind11;
using namespace hopf;

namespace {

py::object mat_to_py(const Mat2c& m) {
    return py::make_tuple(py::make_tuple(m.a11, m.a12), py::make_tuple(m.a21, m.a22));
}

} // namespace

PYBIND11_MODULE(hopfsoliton, m) {
    m.doc() = "Pluriclosed steady solitons on diagonal Hopf surfaces: profile construction, "
              "Bismut-Ricci curvature, reduced flow, and generalized Kahler checks";

    py::class_<SurfaceParams>(m, "SurfaceParams")
        .def_readonly("alpha", &SurfaceParams::alpha)
        .def_readonly("beta", &SurfaceParams::beta)
        .def_readonly("a", &SurfaceParams::a)
        .def_readonly("b", &SurfaceParams::b)
        .def_readonly("mu", &SurfaceParams::mu)
        .def_readonly("c_k", &SurfaceParams::c_k)
        .def("equal_moduli", &SurfaceParams::equal_moduli)
        .def("__repr__", [](const SurfaceParams& p) {
            return "SurfaceParams(a=" + std::to_string(p.a) + ", b=" + std::to_string(p.b) + ")";
        });

    m.def("surface_params", &surface_params, py::arg("alpha"), py::arg("beta"),
          "Hopf surface parameters from the deck transformation factors");

    py::class_<MetricProfile>(m, "MetricProfile")
        .def("k",
             [](const MetricProfile& g, double x) {
                 const Jet2 j = g.k(x);
                 return py::make_tuple(j.v, j.d1, j.d2);
             })
        .def("n", [](const MetricProfile& g, double x) {
            const Jet2 j = g.n(x);
            return py::make_tuple(j.v, j.d1, j.d2);
        });

    m.def(
        "diagonal_profile",
        [](std::function<py::tuple(double)> f) {
            return MetricProfile::diagonal([f = std::move(f)](double x) {
                const py::tuple t = f(x);
                return Jet2{t[0].cast<double>(), t[1].cast<double>(), t[2].cast<double>()};
            });
        },
        "diagonal ansatz k = n, m = 0, p = 1 from a callable x -> (k, k', k'')");

    py::class_<SolitonProfile>(m, "SolitonProfile")
        .def(py::init<const SurfaceParams&>())
        .def(py::init<const SurfaceParams&, double>())
        .def_property_readonly("gauge", &SolitonProfile::gauge)
        .def_property_readonly("logistic_case", &SolitonProfile::logistic_case)
        .def("k_of_x", &SolitonProfile::k_of_x)
        .def("x_of_k", &SolitonProfile::x_of_k)
        .def("logit_of_x", &SolitonProfile::logit_of_x)
        .def("x_of_logit", &SolitonProfile::x_of_logit)
        .def("jet",
             [](const SolitonProfile& s, double x) {
                 const Jet2 j = s.jet(x);
                 return py::make_tuple(j.v, j.d1, j.d2);
             })
        .def("as_metric_profile", &SolitonProfile::as_metric_profile);

    m.def(
        "solve_profile",
        [](const SurfaceParams& p, const std::vector<double>& grid) {
            return solve_profile(p, grid);
        },
        py::arg("params"), py::arg("grid"));
    m.def("profile_ode_rhs", &profile_ode_rhs);
    m.def("implicit_x", &implicit_x);
    m.def("logistic_profile", &logistic_profile);
    m.def("kappa_inverse", &kappa_inverse);
    m.def("extension_r2", &extension_r2);

    m.def(
        "check_asymptotics",
        [](const MetricProfile& g, const SurfaceParams& p, double L, double tol) {
            const AsymptoticsReport rep = check_asymptotics(g, p, L, tol);
            py::list items;
            for (const auto& it : rep.items) items.append(py::make_tuple(it.name, it.value, it.pass));
            return py::make_tuple(items, rep.all_pass);
        },
        py::arg("profile"), py::arg("params"), py::arg("L"), py::arg("tol") = 1e-6);

    m.def("metric_u", [](const MetricProfile& g, double x) { return mat_to_py(metric_u(g, x)); });
    m.def("metric_z", [](const MetricProfile& g, const SurfaceParams& p, std::complex<double> z1,
                         std::complex<double> z2) { return mat_to_py(metric_z(g, p, z1, z2)); });
    m.def("metric_w", [](const MetricProfile& g, const SurfaceParams& p, double x) {
        return mat_to_py(metric_w(g, p, x));
    });
    m.def("volume_V", &volume_V);
    m.def(
        "is_pluriclosed",
        [](const MetricProfile& g, const std::vector<double>& grid, double tol) {
            const auto r = is_pluriclosed(g, grid, tol);
            return py::make_tuple(r.flag, r.residual);
        },
        py::arg("profile"), py::arg("grid"), py::arg("tol") = 1e-10);

    m.def("bismut_ricci",
          [](const MetricProfile& g, double x) { return mat_to_py(bismut_ricci(g, x)); });
    m.def("chern_ricci",
          [](const MetricProfile& g, double x) { return mat_to_py(chern_ricci(g, x)); });
    m.def("bismut_ricci_oracle", [](const MetricProfile& g, double x, double h) {
        return mat_to_py(bismut_ricci_oracle(g, x, h));
    });
    m.def("lie_derivative_Y",
          [](const MetricProfile& g, double x) { return mat_to_py(lie_derivative_Y(g, x)); });
    m.def("soliton_residual",
          [](const MetricProfile& g, double mu, const std::vector<double>& grid) {
              return soliton_residual(g, mu, grid);
          });

    // generalized Kahler checks
    m.def("frobenius_residual", &forms::frobenius_residual, py::arg("profile"), py::arg("params"),
          py::arg("x"), py::arg("perturbed") = false);
    m.def("isotropy_residual", &forms::isotropy_residual);
    m.def("real_part_residual", &forms::real_part_residual);
    m.def("projection_identity_residual",
          [](const MetricProfile& g, const SurfaceParams& p, double x) {
              const auto r = forms::projection_identity_residual(g, p, x);
              return py::make_tuple(r.residual, r.lambda, r.fit_residual);
          });
    m.def("odd_type_residual", &forms::odd_type_residual);
    m.def("phi_solve", &forms::phi_solve);
    m.def(
        "ddbar_log_phi",
        [](std::complex<double> z1, std::complex<double> z2, const SurfaceParams& p, double h) {
            return mat_to_py(forms::ddbar_log_phi(z1, z2, p, h));
        },
        py::arg("z1"), py::arg("z2"), py::arg("params"), py::arg("h") = 2e-3);

    // flow
    py::class_<FlowDiagnostics>(m, "FlowDiagnostics")
        .def_readonly("t", &FlowDiagnostics::t)
        .def_readonly("C_low", &FlowDiagnostics::C_low)
        .def_readonly("C_high", &FlowDiagnostics::C_high)
        .def_readonly("shift", &FlowDiagnostics::shift)
        .def_readonly("aligned_sup_error", &FlowDiagnostics::aligned_sup_error)
        .def_readonly("torsion_norm", &FlowDiagnostics::torsion_norm);

    py::class_<FlowState>(m, "FlowState")
        .def_readonly("grid", &FlowState::grid)
        .def_readonly("theta", &FlowState::theta)
        .def_readonly("t", &FlowState::t)
        .def("k", [](const FlowState& s) {
            std::vector<double> out(s.theta.size());
            for (std::size_t i = 0; i < out.size(); ++i) out[i] = s.k_at(i);
            return out;
        });

    m.def("soliton_with_bump", &soliton_with_bump, py::arg("soliton"), py::arg("amplitude"),
          py::arg("center"), py::arg("width"));

    m.def(
        "run_flow",
        [](const MetricProfile& initial, const SurfaceParams& p, double T, double L, int N,
           double dt0, double dt_max, double record_dt, double target) {
            FlowControls c;
            c.L = L;
            c.N = N;
            c.dt0 = dt0;
            c.dt_max = dt_max;
            c.record_dt = record_dt;
            c.target = target;
            FlowState final_state;
            auto traj = run_flow(initial, p, T, c, &final_state);
            return py::make_tuple(traj, final_state);
        },
        py::arg("initial"), py::arg("params"), py::arg("T"), py::arg("L") = 40.0,
        py::arg("N") = 2001, py::arg("dt0") = 1e-2, py::arg("dt_max") = 0.5,
        py::arg("record_dt") = 1.0, py::arg("target") = 0.0);
}
