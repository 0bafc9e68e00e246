#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dkp/app.hpp"
#include "dkp/torus.hpp"
#include "json.hpp"

namespace py = pybind11;
using namespace dkp::app;

namespace {

std::optional<nlohmann::json> parse_state(const std::optional<std::string>& text)
{
    if (!text) return std::nullopt;
    return nlohmann::json::parse(*text);
}

}  // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Discrete KP hierarchy core; every call returns a JSON string.";
    py::register_exception<dkp::GcdError>(m, "GcdError", PyExc_ValueError);

    m.def("version", &version);
    m.def("suite_names", &suite_names);

    m.def(
        "curve",
        [](int N, int M, const std::string& mode, bool numeric, std::uint64_t seed, std::optional<std::string> state) {
            CurveOptions o;
            o.mode = mode;
            o.numeric = numeric;
            o.state = parse_state(state);
            py::gil_scoped_release release;
            return curve_report(N, M, seed, o).dump();
        },
        py::arg("N"), py::arg("M"), py::arg("mode") = "ab", py::arg("numeric") = false, py::arg("seed") = 1,
        py::arg("state") = py::none());

    m.def(
        "check",
        [](int N, int M, const std::string& suite, std::uint64_t seed) {
            py::gil_scoped_release release;
            return check_report(N, M, seed, suite).dump();
        },
        py::arg("N"), py::arg("M"), py::arg("suite") = "all", py::arg("seed") = 1);

    m.def(
        "flow",
        [](int N, int M, std::optional<int> degree, double dt, double T, std::uint64_t seed, int sample_every, bool order,
           std::optional<std::string> state) {
            FlowOptions o;
            o.degree = degree;
            o.dt = dt;
            o.T = T;
            o.sample_every = sample_every;
            o.order_check = order;
            o.state = parse_state(state);
            py::gil_scoped_release release;
            return flow_report(N, M, seed, o).dump();
        },
        py::arg("N"), py::arg("M"), py::arg("degree") = py::none(), py::arg("dt") = 1e-3, py::arg("T") = 1.0, py::arg("seed") = 1,
        py::arg("sample_every") = 0, py::arg("order_check") = false, py::arg("state") = py::none());

    m.def(
        "pipes",
        [](int N, int M, std::optional<int> degree, bool pairings, bool sum_zero, std::uint64_t seed) {
            PipesOptions o;
            o.degree = degree;
            o.pairings = pairings;
            o.sum_zero = sum_zero;
            py::gil_scoped_release release;
            return pipes_report(N, M, seed, o).dump();
        },
        py::arg("N"), py::arg("M"), py::arg("degree") = py::none(), py::arg("pairings") = false, py::arg("sum_zero") = false,
        py::arg("seed") = 1);

    m.def(
        "torus",
        [](int N, int M, std::uint64_t seed) {
            py::gil_scoped_release release;
            return torus_report(N, M, seed).dump();
        },
        py::arg("N"), py::arg("M"), py::arg("seed") = 1);
}
