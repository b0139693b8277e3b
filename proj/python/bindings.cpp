#include "fracadapt/barriers.hpp"
#include "fracadapt/errors.hpp"
#include "fracadapt/experiments.hpp"
#include "fracadapt/l1.hpp"
#include "fracadapt/mesh.hpp"
#include "fracadapt/specfun.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <vector>

namespace py = pybind11;
using namespace fracadapt;

namespace {

py::dict report_dict(const ErrorReport& r) {
    std::vector<double> t, error, bound, estimate;
    for (const auto& row : r.rows) {
        t.push_back(row.t);
        error.push_back(row.error);
        bound.push_back(row.bound);
        estimate.push_back(row.estimate);
    }
    py::dict d;
    d["M"] = r.M;
    d["N"] = r.N;
    d["max_node_error"] = r.max_node_error;
    d["runtime_seconds"] = r.runtime_seconds;
    d["rejected_steps"] = r.rejected_steps;
    d["r1_tau"] = r.r1_tau;
    d["has_estimate"] = r.has_estimate;
    d["t"] = py::array_t<double>(py::cast(t));
    d["error"] = py::array_t<double>(py::cast(error));
    d["bound"] = py::array_t<double>(py::cast(bound));
    d["estimate"] = py::array_t<double>(py::cast(estimate));
    return d;
}

// Levels as a (size, dim) array next to the times.
py::tuple history_arrays(const SolutionHistory& h) {
    py::array_t<double> times(static_cast<py::ssize_t>(h.size()), h.times().data());
    py::array_t<double> values({static_cast<py::ssize_t>(h.size()), static_cast<py::ssize_t>(h.dim())},
                               h.values().data());
    return py::make_tuple(times, values);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Adaptive L1 schemes for multiterm time-fractional problems";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
    py::register_exception<EvaluationError>(m, "EvaluationError", base.ptr());
    py::register_exception<OutOfRangeError>(m, "OutOfRangeError", base.ptr());
    py::register_exception<ExponentUndefinedError>(m, "ExponentUndefinedError", base.ptr());

    m.def("gamma", &specfun::gamma, py::arg("x"));
    m.def("rgamma", &specfun::rgamma, py::arg("x"), "1/Gamma(x), zero at the poles");
    m.def("ml_two_param", &specfun::ml_two_param, py::arg("alpha"), py::arg("beta"), py::arg("x"),
          "Two-parameter Mittag-Leffler function E_{alpha,beta}(x)");
    m.def(
        "mml_series",
        [](double beta0, std::vector<double> orders, std::vector<double> args) {
            return specfun::mml_series({beta0, std::move(orders), std::move(args)});
        },
        py::arg("beta0"), py::arg("orders"), py::arg("args"), "Multinomial Mittag-Leffler function");
    m.def(
        "f_kernel",
        [](std::vector<double> mus, double beta, std::vector<double> as, double t) {
            return specfun::f_kernel({std::move(mus), beta, std::move(as), t});
        },
        py::arg("mus"), py::arg("beta"), py::arg("as_"), py::arg("t"),
        "t^{beta-1} E_{(mus),beta}(-a_1 t^{mu_1}, ...)");
    m.def("gauss_2f1", &specfun::gauss_2f1, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("s"));
    m.def("rho", &specfun::rho, py::arg("alpha_i"), py::arg("alpha1"), py::arg("s"));
    m.def(
        "mml_contour",
        [](double t, double beta, double lambda_, std::vector<double> lower_qs, std::vector<double> alphas) {
            return specfun::mml_contour(t, beta, lambda_, lower_qs, alphas);
        },
        py::arg("t"), py::arg("beta"), py::arg("lambda_"), py::arg("lower_qs"), py::arg("alphas"));
    m.def(
        "homogeneous_solution",
        [](double t, double lambda_, std::vector<double> qs, std::vector<double> alphas) {
            return specfun::homogeneous_solution(t, lambda_, qs, alphas);
        },
        py::arg("t"), py::arg("lambda_"), py::arg("qs"), py::arg("alphas"));
    m.def(
        "caputo_exponential_barrier", &caputo_exponential_barrier, py::arg("alpha"), py::arg("mu"), py::arg("t"),
        "Caputo derivative of 1 - exp(-mu t)");

    m.def(
        "uniform_mesh", [](int M, double T) { return mesh::uniform(M, T).points(); }, py::arg("M"),
        py::arg("T") = 1.0);
    m.def(
        "graded_mesh", [](int M, double r, double T) { return mesh::graded(M, r, T).points(); }, py::arg("M"),
        py::arg("r"), py::arg("T") = 1.0);

    m.def(
        "run_json",
        [](const std::string& config_json) {
            const auto c = config_from_json(config_json);
            ErrorReport r;
            {
                py::gil_scoped_release release;
                r = run_example(c);
            }
            return report_dict(r);
        },
        py::arg("config_json"), "Runs one experiment described by a JSON configuration");
    m.def(
        "solve_json",
        [](const std::string& config_json, std::vector<double> points) {
            const auto p = make_example(config_from_json(config_json));
            SolutionHistory h({0.0});
            {
                py::gil_scoped_release release;
                h = solve(p, TemporalMesh(std::move(points)));
            }
            return history_arrays(h);
        },
        py::arg("config_json"), py::arg("points"),
        "L1 solution of the configured example on the given mesh: (times, values)");
    m.def("default_config_json", [] { return config_to_json(RunConfig{}); });
}
