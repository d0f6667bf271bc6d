#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subfvm/cf_laplace.hpp"
#include "subfvm/homogenize.hpp"
#include "subfvm/layered.hpp"
#include "subfvm/mesh_synth.hpp"
#include "subfvm/mittag_leffler.hpp"
#include "subfvm/weights.hpp"

namespace py = pybind11;
using namespace subfvm;

namespace {

MorphologySpec morphology_by_name(const std::string& name) {
    if (name == "rect") return MorphologySpec::rectangle();
    if (name == "circle") return MorphologySpec::circle();
    if (name == "lshape") return MorphologySpec::lshape();
    if (name == "tagged") return MorphologySpec::from_tags();
    throw DomainError("unknown morphology: " + name);
}

Mesh mesh_for(const std::string& morphology, int n) {
    if (morphology == "circle") return circle_inclusion_unit_square(n, n / 8, n / 4);
    return structured_unit_square(n);
}

}  // namespace

PYBIND11_MODULE(_subfvm, m) {
    m.doc() = "Control-volume subdiffusion solver and homogenisation toolkit";

    m.def("mittag_leffler",
          py::overload_cast<double, double, double>(&mittag_leffler),
          py::arg("alpha"), py::arg("beta"), py::arg("z"));
    m.def("invert_laplace", &invert_laplace, py::arg("F"), py::arg("t"), py::arg("K") = 14);
    m.def("gl_weights", &gl_weights, py::arg("alpha"), py::arg("n"));
    m.def("wsgl_weights", &wsgl_weights, py::arg("alpha"), py::arg("n"));
    m.def("cn_wsgl_weights", &cn_wsgl_weights, py::arg("alpha"), py::arg("n"));
    m.def("bounds", &bounds, py::arg("eps1"), py::arg("Db1"), py::arg("Db2"));

    py::class_<Mesh>(m, "Mesh")
        .def_property_readonly("num_nodes", &Mesh::num_nodes)
        .def_property_readonly("num_triangles", &Mesh::num_triangles)
        .def("total_area", &Mesh::total_area)
        .def_property_readonly("nodes",
                               [](const Mesh& mesh) {
                                   std::vector<std::pair<double, double>> out;
                                   for (const auto& p : mesh.nodes) out.emplace_back(p.x, p.y);
                                   return out;
                               })
        .def_property_readonly("triangles",
                               [](const Mesh& mesh) { return mesh.triangles; });
    m.def("structured_unit_square", &structured_unit_square, py::arg("n"),
          py::arg("alternate") = true);
    m.def("circle_inclusion_unit_square", &circle_inclusion_unit_square, py::arg("n_theta"),
          py::arg("rings_inner"), py::arg("rings_outer"), py::arg("area_fraction") = 0.25);
    m.def("parse_msh", &parse_msh, py::arg("path"));
    m.def("write_msh", &write_msh, py::arg("mesh"), py::arg("path"));

    py::class_<LayeredSpec>(m, "LayeredSpec")
        .def(py::init<>())
        .def_readwrite("breakpoints", &LayeredSpec::breakpoints)
        .def_readwrite("diffusivity", &LayeredSpec::diffusivity)
        .def_readwrite("gamma", &LayeredSpec::gamma)
        .def_readwrite("q0", &LayeredSpec::q0)
        .def_readwrite("u0", &LayeredSpec::u0)
        .def_readwrite("m_trunc", &LayeredSpec::m_trunc);
    py::class_<LayeredOracle>(m, "LayeredOracle")
        .def(py::init<LayeredSpec>())
        .def("evaluate", &LayeredOracle::evaluate, py::arg("x"), py::arg("t"))
        .def("mass_balance", &LayeredOracle::mass_balance, py::arg("t"))
        .def("initial_mean", &LayeredOracle::initial_mean);

    py::class_<Tensor2>(m, "Tensor2")
        .def_readonly("xx", &Tensor2::xx)
        .def_readonly("xy", &Tensor2::xy)
        .def_readonly("yx", &Tensor2::yx)
        .def_readonly("yy", &Tensor2::yy);
    m.def(
        "homogenize",
        [](const std::string& morphology, int n, double ratio, double gamma1, double gamma2,
           double tau, int max_steps, double steady_tol) {
            CellProblemSpec spec;
            spec.mesh = mesh_for(morphology, n);
            spec.morphology = morphology == "circle" ? MorphologySpec::from_tags()
                                                     : morphology_by_name(morphology);
            spec.medium.region[1] = {ratio, ratio, gamma1, 1.0};
            spec.medium.region[0] = {1.0, 1.0, gamma2, 1.0};
            spec.tau = tau;
            spec.max_steps = max_steps;
            spec.steady_tol = steady_tol;
            auto series = run_cell_problem(spec);
            py::dict out;
            out["tensor"] = series.final_tensor;
            out["k1"] = series.k1;
            out["k2"] = series.k2;
            out["steady"] = series.steady;
            out["steps"] = series.steps;
            return out;
        },
        py::arg("morphology"), py::arg("n") = 16, py::arg("ratio") = 10.0,
        py::arg("gamma1") = 1.0, py::arg("gamma2") = 1.0, py::arg("tau") = 1e-2,
        py::arg("max_steps") = 5000, py::arg("steady_tol") = 1e-8);
}
