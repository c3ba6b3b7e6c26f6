#include "fracspec/convergence.hpp"
#include "fracspec/eigensystem.hpp"
#include "fracspec/error.hpp"
#include "fracspec/io.hpp"
#include "fracspec/mittag_leffler.hpp"
#include "fracspec/oracle.hpp"
#include "fracspec/solver.hpp"

#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

namespace py = pybind11;
using namespace fracspec;

namespace {

py::array_t<double> to_array(const Matrix& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            view(i, j) = m(i, j);
        }
    }
    return out;
}

Integrand wrap(const std::function<double(double)>& f, double hint) { return Integrand{f, hint}; }

}  // namespace

PYBIND11_MODULE(_fracspec, m) {
    m.doc() = "Spectral solver for the Caputo time-fractional diffusion equation on [0, 1]";

    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    auto numerical = py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<NonConvergence>(m, "NonConvergence", numerical.ptr());
    py::register_exception<QuadratureFailure>(m, "QuadratureFailure", numerical.ptr());
    py::register_exception<BracketFailure>(m, "BracketFailure", numerical.ptr());
    py::register_exception<ToleranceNotReached>(m, "ToleranceNotReached", numerical.ptr());
    py::register_exception<SingularSystem>(m, "SingularSystem", numerical.ptr());

    m.def("mittag_leffler", &mittag_leffler, py::arg("alpha"), py::arg("x"), py::arg("tol") = kDefaultMlTolerance,
          "E_alpha(-x) for 0 < alpha <= 1, x >= 0.");
    m.def(
        "ml_series",
        [](double alpha, double x, double tol, std::size_t max_terms) {
            return ml_series(MLQuery{alpha, x, tol}, max_terms);
        },
        py::arg("alpha"), py::arg("x"), py::arg("tol") = kDefaultMlTolerance,
        py::arg("max_terms") = kDefaultSeriesTermCap);
    m.def(
        "ml_integral", [](double alpha, double x, double tol) { return ml_integral(MLQuery{alpha, x, tol}); },
        py::arg("alpha"), py::arg("x"), py::arg("tol") = kDefaultMlTolerance);

    py::class_<BoundarySpec>(m, "BoundarySpec")
        .def_static("dirichlet", &BoundarySpec::dirichlet)
        .def_static("robin", &BoundarySpec::robin, py::arg("beta"))
        .def_property_readonly("is_dirichlet", &BoundarySpec::is_dirichlet)
        .def_property_readonly("is_robin", &BoundarySpec::is_robin)
        .def_property_readonly("beta", &BoundarySpec::beta)
        .def("__eq__", [](const BoundarySpec& a, const BoundarySpec& b) { return a == b; })
        .def("__repr__", &BoundarySpec::describe);

    py::class_<EigenPair>(m, "EigenPair")
        .def_readonly("index", &EigenPair::index)
        .def_readonly("lambda_", &EigenPair::lambda)
        .def_readonly("amplitude", &EigenPair::amplitude)
        .def_readonly("boundary", &EigenPair::boundary)
        .def("__call__", &eigenfunction_eval, py::arg("x"))
        .def("derivative", &eigenfunction_deriv, py::arg("x"))
        .def("__repr__", [](const EigenPair& p) {
            return "EigenPair(k=" + std::to_string(p.index) + ", lambda=" + format_double(p.lambda) + ")";
        });

    m.def("eigenpairs", &eigenpairs, py::arg("boundary"), py::arg("n"), py::arg("tol") = kDefaultRootTolerance);
    m.def("robin_char", &robin_char, py::arg("beta"), py::arg("lambda_"));

    py::class_<SpectralSolution>(m, "SpectralSolution")
        .def_readonly("alpha", &SpectralSolution::alpha)
        .def_readonly("boundary", &SpectralSolution::boundary)
        .def_readonly("horizon", &SpectralSolution::horizon)
        .def_readonly("pairs", &SpectralSolution::pairs)
        .def_readonly("coeffs", &SpectralSolution::coeffs)
        .def_readonly("u0_norm", &SpectralSolution::u0_norm)
        .def("__len__", &SpectralSolution::size)
        .def("evaluate", &evaluate, py::arg("x"), py::arg("t"))
        .def("evaluate_dx", &evaluate_dx, py::arg("x"), py::arg("t"))
        .def(
            "evaluate_grid",
            [](const SpectralSolution& sol, const std::vector<double>& xs, const std::vector<double>& ts) {
                Matrix values;
                {
                    py::gil_scoped_release release;
                    values = evaluate_grid(sol, xs, ts);
                }
                return to_array(values);
            },
            py::arg("xs"), py::arg("ts"))
        .def("truncation_bound", &truncation_bound, py::arg("t"))
        .def("to_json", [](const SpectralSolution& sol) { return to_json(sol).dump(); })
        .def_static(
            "from_json",
            [](const std::string& text) { return spectral_solution_from_json(nlohmann::json::parse(text)); },
            py::arg("text"));

    m.def(
        "solve_spectral",
        [](double alpha, const BoundarySpec& boundary, const std::function<double(double)>& u0, int n,
           double horizon, double oscillation_hint) {
            return solve_spectral(alpha, boundary, wrap(u0, oscillation_hint), n, horizon);
        },
        py::arg("alpha"), py::arg("boundary"), py::arg("u0"), py::arg("n") = kDefaultTruncation,
        py::arg("horizon") = 1.0, py::arg("oscillation_hint") = 0.0);

    py::class_<GridSolution>(m, "GridSolution")
        .def_readonly("nx", &GridSolution::nx)
        .def_readonly("nt", &GridSolution::nt)
        .def_readonly("dx", &GridSolution::dx)
        .def_readonly("dt", &GridSolution::dt)
        .def_property_readonly("xs", &GridSolution::xs)
        .def_property_readonly("values", [](const GridSolution& g) { return to_array(g.values); })
        .def("interpolate", &interpolate, py::arg("level"), py::arg("x"));

    m.def(
        "fd_solve",
        [](double alpha, const BoundarySpec& boundary, const std::function<double(double)>& u0, int nx, int nt,
           double horizon) { return fd_solve(alpha, boundary, wrap(u0, 0.0), nx, nt, horizon); },
        py::arg("alpha"), py::arg("boundary"), py::arg("u0"), py::arg("nx"), py::arg("nt"), py::arg("horizon") = 1.0);
    m.def("caputo_l1", &caputo_l1, py::arg("samples"), py::arg("alpha"), py::arg("dt"));

    m.def(
        "eigen_gap_table",
        [](const std::vector<double>& betas, int kmax) {
            py::list rows;
            for (const auto& r : eigen_gap_table(betas, kmax).eigen_rows) {
                rows.append(py::dict(py::arg("k") = r.k, py::arg("beta") = r.beta, py::arg("lambda") = r.lambda,
                                     py::arg("lambda_dirichlet") = r.lambda_dirichlet, py::arg("gap") = r.gap,
                                     py::arg("normalized") = r.normalized));
            }
            return rows;
        },
        py::arg("betas"), py::arg("kmax"));
    m.def(
        "check_gap_bound",
        [](const std::vector<double>& betas, int kmax) {
            const GapCheck c = check_gap_bound(eigen_gap_table(betas, kmax));
            return py::dict(py::arg("passes") = c.passes, py::arg("C1_hat") = c.c1_hat,
                            py::arg("monotone_in_beta") = c.monotone_in_beta);
        },
        py::arg("betas"), py::arg("kmax"));
}
