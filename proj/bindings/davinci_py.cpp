#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "davinci/builtins.hpp"
#include "davinci/embed_defect.hpp"
#include "davinci/form_find.hpp"
#include "davinci/io.hpp"
#include "davinci/periodic_pattern.hpp"
#include "davinci/rod_model.hpp"
#include "davinci/wallpaper.hpp"

namespace py = pybind11;
using namespace davinci;

namespace {

PeriodicPattern pattern_by_name(const std::string& name) {
    const PeriodicPattern* p = find_pattern(name);
    if (!p) throw py::value_error("unknown pattern '" + name + "'");
    return *p;
}

py::dict euler_report(const PeriodicPattern& p) {
    SurfaceMap q = torus_quotient(p);
    py::dict out;
    out["V"] = q.vertex_count();
    out["E"] = q.edge_count();
    out["F"] = q.face_count();
    out["chi"] = q.euler_characteristic();
    py::dict census;
    for (auto& [deg, count] : face_census(q).histogram) census[py::int_(deg)] = count;
    out["face_census"] = census;
    return out;
}

}  // namespace

PYBIND11_MODULE(_davinci, m) {
    m.doc() = "Da Vinci dome toolkit: rod patterns, surface maps, angular defects, form-finding";

    py::class_<PeriodicPattern>(m, "Pattern")
        .def_property_readonly("name", [](const PeriodicPattern& p) { return p.name; })
        .def_property_readonly("vertex_count", &PeriodicPattern::vertex_count)
        .def_property_readonly("edge_count", &PeriodicPattern::edge_count)
        .def_property_readonly("rod_count",
                               [](const PeriodicPattern& p) { return p.rods.size(); })
        .def("euler", &euler_report, "Quotient counts and face census on the torus")
        .def("wallpaper",
             [](const PeriodicPattern& p) { return classify_wallpaper(p).name; })
        .def("replication_series",
             [](const PeriodicPattern& p, int n_max) {
                 ReplicationSeries s = replication_series(p, n_max);
                 py::dict out;
                 py::list samples;
                 for (const auto& smp : s.samples) {
                     py::dict d;
                     d["n"] = smp.n;
                     d["V"] = smp.V;
                     d["E"] = smp.E;
                     d["F"] = smp.F;
                     d["sphere_identity"] = smp.sphere_identity_ok;
                     samples.append(d);
                 }
                 out["samples"] = samples;
                 out["chi_estimate"] = s.chi_estimate.str();
                 return out;
             },
             py::arg("n_max") = 6)
        .def("validate",
             [](const PeriodicPattern& p) {
                 p.validate();
                 if (!p.rods.empty())
                     return validate_network(rod_network_from_pattern(p)).valid();
                 return true;
             })
        .def("to_text", [](const PeriodicPattern& p) {
            std::ostringstream os;
            write_pattern_file(os, p);
            return os.str();
        });

    m.def("catalog_names", []() {
        py::list names;
        for (const PeriodicPattern& p : catalog()) names.append(p.name);
        return names;
    });
    m.def("pattern", &pattern_by_name, py::arg("name"));
    m.def("parse_pattern", [](const std::string& text) {
        std::istringstream is(text);
        return parse_pattern_file(is);
    });

    m.def(
        "decompose",
        [](int vertex_count, const std::vector<std::pair<int, int>>& edges,
           std::optional<int> limit) -> py::object {
            Graph g{vertex_count, edges};
            if (limit) {
                py::list nets;
                for (const RodNetwork& net : decompose_all(g, *limit)) {
                    py::list rods;
                    for (const Rod& r : net.rods)
                        rods.append(py::make_tuple(r.vertices[0], r.vertices[1], r.vertices[2],
                                                   r.vertices[3]));
                    nets.append(rods);
                }
                return nets;
            }
            auto net = decompose(g);
            if (!net) return py::none();
            py::list rods;
            for (const Rod& r : net->rods)
                rods.append(py::make_tuple(r.vertices[0], r.vertices[1], r.vertices[2],
                                           r.vertices[3]));
            return rods;
        },
        py::arg("vertex_count"), py::arg("edges"), py::arg("limit") = py::none(),
        "Rod decomposition of a cubic graph; None when the exhaustive search finds no partition");

    m.def("builtin_graph", [](const std::string& name) {
        auto e = builtin_embedding(name);
        if (!e) throw py::value_error("unknown builtin '" + name + "'");
        py::dict out;
        out["vertex_count"] = e->map.vertex_count();
        out["edges"] = e->map.edges();
        return out;
    });

    m.def("defect_total", [](const std::string& name) {
        auto e = builtin_embedding(name);
        if (!e) throw py::value_error("unknown builtin '" + name + "'");
        return descartes_sum(triangulate(*e)).total;
    });

    m.def(
        "formfind",
        [](const std::string& pattern_name, int rings, double thickness, double depth_deep,
           double depth_shallow, int max_iter, double tol) {
            PeriodicPattern p = pattern_by_name(pattern_name);
            FormFindConfig config;
            config.max_iterations = max_iter;
            config.residual_tol = tol;
            FormFindProblem problem =
                build_problem(patch(p, rings), thickness, depth_deep, depth_shallow, config);
            Solution sol = solve(problem);
            ElevationProfile profile = elevation_profile(problem, sol);
            py::dict out;
            out["rods"] = sol.poses.size();
            out["residual"] = sol.residual;
            out["elevation"] = sol.elevation;
            out["converged"] = sol.converged;
            out["iterations"] = sol.iterations;
            out["center_height"] = profile.inner_mean;
            out["rim_height"] = profile.outer_mean;
            return out;
        },
        py::arg("pattern"), py::arg("rings") = 2, py::arg("thickness") = 10.0,
        py::arg("depth_deep") = 4.0, py::arg("depth_shallow") = 2.0, py::arg("max_iter") = 500,
        py::arg("tol") = 1e-9);

    m.attr("__version__") = "0.1.0";
}
