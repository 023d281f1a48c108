// Thin bindings: structured results cross the boundary as JSON text.
#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "horonet/errors.hpp"
#include "horonet/io.hpp"

namespace py = pybind11;
using namespace horonet;
using namespace horonet::io;

namespace {

std::string check_pattern(const std::string& text, double tol) {
    auto z = pattern_from_json(json::parse(text));
    auto r = verify_closure(cross_ratios_of(z));
    return json{{"product", r.product}, {"sum", r.sum}, {"branching", r.branching}, {"non_delaunay", r.non_delaunay},
                {"ok", r.ok(tol) && r.non_delaunay.empty()}}
        .dump();
}

std::pair<CirclePattern, CirclePattern> pair_of(const std::string& a, const std::string& b) {
    auto z = pattern_from_json(json::parse(a));
    return {z, pattern_on(z.disk, json::parse(b))};
}

std::string sample(const std::string& name, double eps, const std::string& pipeline, double alpha, double beta) {
    auto d = smooth_case(name);
    auto spec = lattice_for(d, eps, alpha, beta);
    auto p = pipeline == "solved" ? shear_preserving_solve(d, spec) : sampled_pattern(d, spec);
    return json{{"lattice", pattern_to_json(p.lattice)}, {"image", pattern_to_json(p.image)},
                {"newton_iterations", p.newton_iterations}}
        .dump();
}

std::string toda(int n, int m, double t, const std::string& mode) {
    auto sol = square_grid_toda(n, m);
    if (mode == "cmc1") return net_report(cmc1_from_toda(sol, t)).dump();
    if (mode == "equidistant") {
        auto p = toda_pair(sol, t, -t);
        return equidistant_report(build_equidistant(p.z, p.zt)).dump();
    }
    fail(ErrorCode::BadInput, "mode must be 'cmc1' or 'equidistant'");
}

} // namespace

PYBIND11_MODULE(_horonet, m) {
    m.doc() = "horospherical nets from circle patterns";

    static py::exception<Error> error(m, "HoronetError");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::object err = error;
            py::object inst = err(std::string(error_name(e.code())) + ": " + e.what());
            inst.attr("code") = int(e.code());
            inst.attr("name") = error_name(e.code());
            PyErr_SetObject(error.ptr(), inst.ptr());
        }
    });

    m.def("version", [] { return std::string(tool_version()); });
    m.def("cross_ratio", [](cplx zk, cplx zi, cplx zl, cplx zj) {
        return edge_cross_ratio(SpherePoint::finite(zk), SpherePoint::finite(zi), SpherePoint::finite(zl), SpherePoint::finite(zj));
    });
    m.def("schwarzian_limit", [](double alpha, double beta, cplx S, int k) {
        LatticeSpec s;
        s.alpha = alpha, s.beta = beta, s.gamma = M_PI - alpha - beta;
        return schwarzian_limit(s, S, k);
    });
    m.def("lattice_pattern", [](double eps, double xmin, double xmax, double ymin, double ymax) {
        auto p = lattice_subcomplex(LatticeSpec::equilateral(eps, xmin, xmax, ymin, ymax));
        return pattern_to_json(CirclePattern::from_complex(share(p.disk), p.position)).dump();
    });
    m.def("check_pattern", &check_pattern, py::arg("pattern"), py::arg("tol") = 1e-10);
    m.def("cmc1_report", [](const std::string& a, const std::string& b) {
        auto [z, zt] = pair_of(a, b);
        return net_report(build_cmc1(z, zt)).dump();
    });
    m.def("equidistant_report", [](const std::string& a, const std::string& b) {
        auto [z, zt] = pair_of(a, b);
        return equidistant_report(build_equidistant(z, zt)).dump();
    });
    m.def("net_obj", [](const std::string& a, const std::string& b, int arcs) {
        auto [z, zt] = pair_of(a, b);
        return to_obj(net_geometry(build_cmc1(z, zt), arcs));
    }, py::arg("a"), py::arg("b"), py::arg("arcs") = 16);
    m.def("sample", &sample, py::arg("case"), py::arg("eps"), py::arg("pipeline") = "solved",
          py::arg("alpha") = M_PI / 3, py::arg("beta") = M_PI / 3);
    m.def("toda", &toda, py::arg("n"), py::arg("m"), py::arg("t"), py::arg("mode") = "cmc1");
    m.def("converge", [](const std::string& name, const std::vector<double>& eps, const std::string& pipeline, double alpha,
                         double beta) {
        return convergence_json(run_convergence(smooth_case(name), eps, pipeline, alpha, beta)).dump();
    }, py::arg("case"), py::arg("eps"), py::arg("pipeline") = "solved", py::arg("alpha") = M_PI / 3,
          py::arg("beta") = M_PI / 3);
    m.def("minimal_points", [](const std::string& pattern, const std::vector<cplx>& zdot) {
        auto z = pattern_from_json(json::parse(pattern));
        return minimal_surface(osculating_vector_field(z, zdot));
    });
}
