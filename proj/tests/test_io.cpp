#include <cstdlib>
#include <functional>

#include "doctest.h"
#include "horonet/errors.hpp"
#include "horonet/io.hpp"
#include "support.hpp"

using namespace horonet;
using namespace horonet::io;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::BadInput;
}

HorosphericalNet toda_net(int n = 6, double t = 0.05) {
    auto p = toda_pair(square_grid_toda(n, n), cplx(0, t), cplx(0, -t));
    return build_cmc1(p.z, p.zt);
}

double max_point_gap(const PolyMesh& a, const PolyMesh& b) {
    double m = 0;
    for (size_t k = 0; k < a.points.size(); ++k)
        for (int c = 0; c < 3; ++c) m = std::max(m, std::abs(a.points[k][c] - b.points[k][c]));
    return m;
}

} // namespace

TEST_CASE("complex numbers and infinity") {
    CHECK(complex_from_json(to_json(cplx(1.5, -2.25))) == cplx(1.5, -2.25));
    CHECK(to_json(SpherePoint::infinity()) == json("inf"));
    CHECK(point_from_json(json("inf")).is_infinity());
    CHECK(point_from_json(json::parse(R"({"re": 0.5, "im": 2})")).affine() == cplx(0.5, 2));
    CHECK(code_of([] { point_from_json(json("nan")); }) == ErrorCode::BadInput);
    CHECK(code_of([] { complex_from_json(json::parse("[1, 2]")); }) == ErrorCode::BadInput);
    Mat2 m{cplx(1, 2), cplx(3, 4), cplx(5, 6), cplx(7, 8)};
    Mat2 back = matrix_from_json(to_json(m));
    CHECK(distance(m, back) == 0.0);
}

TEST_CASE("patterns round trip exactly through text") {
    std::mt19937_64 g(5);
    auto patch = testing::small_lattice(4.2, 3.6);
    auto z = testing::jiggle(patch, g, 0.05);
    z.z[0] = SpherePoint::infinity();
    auto back = pattern_from_json(json::parse(dump(pattern_to_json(z))));
    CHECK(back.disk->faces() == z.disk->faces());
    CHECK(back.z[0].is_infinity());
    for (size_t v = 1; v < z.z.size(); ++v) CHECK(std::abs(back.z[v].affine() - z.z[v].affine()) <= 1e-14);
    CHECK(dump(pattern_to_json(back)) == dump(pattern_to_json(z)));
}

TEST_CASE("pattern files are checked against the mesh") {
    auto j = json::parse(R"({"faces": [[0,1,2]], "positions": [{"re":0,"im":0}, {"re":1,"im":0}]})");
    CHECK(code_of([&] { pattern_from_json(j); }) == ErrorCode::MeshMismatch);
    CHECK(code_of([] { pattern_from_json(json::parse(R"({"positions": []})")); }) == ErrorCode::BadInput);
    auto k = json::parse(R"({"faces": [[0,1,2]], "positions": [{"re":0,"im":0}, {"re":0,"im":0}, {"re":1,"im":0}]})");
    CHECK(code_of([&] { pattern_from_json(k); }) == ErrorCode::DegenerateFace);
}

TEST_CASE("cross ratio files") {
    auto z = testing::lattice_pattern(testing::small_lattice(4.2, 3.6));
    auto X = cross_ratios_of(z);
    auto back = cross_ratios_from_json(z.disk, json::parse(dump(cross_ratios_to_json(X))));
    for (int e : z.disk->interior_edges()) CHECK(back.X[e] == X.X[e]);
    auto j = cross_ratios_to_json(X);
    j["edges"].erase(0);
    CHECK(code_of([&] { cross_ratios_from_json(z.disk, j); }) == ErrorCode::MeshMismatch);
}

TEST_CASE("toda files") {
    auto s = rect_grid_toda(4, 5, 1.0, 0.7, 0.3);
    auto back = toda_from_json(json::parse(dump(toda_to_json(s))));
    CHECK(back.mesh->faces == s.mesh->faces);
    for (size_t e = 0; e < s.q.size(); ++e) CHECK(back.q[e] == s.q[e]);
    CHECK(back.residuals.vertex_sum <= 1e-12);
    auto j = toda_to_json(s);
    j["edges"][0]["q_re"] = 5.0;
    auto r = toda_from_json(j).residuals;
    CHECK(std::max({r.vertex_sum, r.face_sum, r.weighted_sum}) > 1.0);
}

TEST_CASE("frame files") {
    auto net = toda_net();
    auto back = frame_from_json(json::parse(dump(frame_to_json(*net.frame))));
    CHECK(back.coherent == net.frame->coherent);
    for (size_t f = 0; f < back.A.size(); ++f) CHECK(distance(back.A[f], net.frame->A[f]) == 0.0);
    auto dual = dual_surface(net);
    HorosphericalNet reloaded = net;
    reloaded.frame = back;
    auto dual2 = dual_surface(reloaded);
    for (size_t f = 0; f < dual.f.size(); ++f) CHECK(frobenius(dual.f[f] - dual2.f[f]) <= 1e-12);
}

TEST_CASE("net report") {
    auto net = toda_net();
    auto r = net_report(net);
    CHECK(r["kind"] == "cmc1");
    CHECK(r["faces"].size() == net.disk->interior_vertices().size());
    CHECK(r["edges"].size() == net.disk->interior_edges().size());
    CHECK(r["summary"]["max_ratio_deviation"].get<double>() <= 1e-9);
    for (auto& f : r["faces"]) CHECK(std::abs(f["ratio"].get<double>() - 1.0) <= 1e-9);
    HorosphericalNet raw = net;
    raw.measured = false;
    CHECK(code_of([&] { net_report(raw); }) == ErrorCode::UnmeasuredNet);
}

TEST_CASE("exported arcs and patches lie on the horospheres") {
    auto net = toda_net();
    auto m = net_geometry(net, 16);
    const auto& d = *net.disk;
    CHECK(m.lines.size() == d.interior_edges().size());
    double worst = 0;
    for (size_t k = 0; k < m.lines.size(); ++k) {
        const Edge& ed = d.edges()[d.interior_edges()[k]];
        const auto& line = m.lines[k];
        CHECK(line.size() == 17);
        for (int p : line) {
            Hermitian x = from_poincare_ball(m.points[p]);
            worst = std::max(worst, std::abs(-inner(x, net.horospheres[ed.v0].U) - 1.0));
            worst = std::max(worst, std::abs(-inner(x, net.horospheres[ed.v1].U) - 1.0));
        }
    }
    CHECK(worst <= 1e-8);
    size_t arcs = 0;
    for (int i : d.interior_vertices()) arcs += d.ring(i).size();
    CHECK(m.triangles.size() == 16 * arcs);
    for (auto& t : m.triangles)
        for (int p : t) CHECK(std::abs(from_poincare_ball(m.points[p]).det() - 1.0) <= 1e-8);
}

TEST_CASE("obj and ply round trips") {
    auto m = net_geometry(toda_net(), 16);
    auto o = from_obj(to_obj(m));
    CHECK(o.points.size() == m.points.size());
    CHECK(max_point_gap(m, o) <= 1e-12);
    CHECK(o.lines == m.lines);
    CHECK(o.triangles == m.triangles);
    auto p = from_ply(to_ply(m));
    CHECK(max_point_gap(m, p) <= 1e-12);
    CHECK(p.triangles == m.triangles);
    size_t segments = 0;
    for (auto& l : m.lines) segments += l.size() - 1;
    CHECK(p.lines.size() == segments);
    CHECK(to_obj(m) == to_obj(net_geometry(toda_net(), 16)));
    CHECK(code_of([] { from_ply("not a ply"); }) == ErrorCode::BadInput);
    CHECK(code_of([] { from_obj("v 0 0 0\nl 1 3\n"); }) == ErrorCode::BadInput);
}

TEST_CASE("one arc sample gives the straight skeleton") {
    auto net = toda_net();
    auto m = net_geometry(net, 1);
    CHECK(m.points.size() >= (size_t)net.disk->num_faces());
    for (auto& l : m.lines) CHECK(l.size() == 2);
    CHECK(code_of([&] { net_geometry(net, 0); }) == ErrorCode::BadInput);
}

TEST_CASE("degenerate nets export one point") {
    auto z = testing::lattice_pattern(testing::small_lattice(4.2, 3.6));
    auto net = build_cmc1(z, z);
    auto m = net_geometry(net);
    CHECK(m.points.size() == 1);
    CHECK_FALSE(m.warning.empty());
    CHECK(to_obj(m).find("# warning") != std::string::npos);
}

TEST_CASE("equidistant and minimal geometry") {
    auto p = toda_pair(square_grid_toda(6, 6), 0.05, -0.05);
    auto net = build_equidistant(p.z, p.zt);
    auto m = equidistant_geometry(net, 8);
    CHECK(m.lines.size() == net.disk->interior_edges().size());
    CHECK(m.lines[0].size() == 9);
    auto r = equidistant_report(net);
    CHECK(r["kind"] == "equidistant");

    auto z = testing::lattice_pattern(testing::small_lattice(4.2, 3.6));
    std::vector<cplx> zdot;
    for (auto& w : z.z) zdot.push_back(w.affine() * w.affine() * w.affine());
    auto pts = minimal_surface(osculating_vector_field(z, zdot));
    auto mm = point_geometry(*z.disk, pts);
    CHECK(mm.points.size() == pts.size());
    std::vector<cplx> flat(z.z.size(), cplx(1.0));
    auto still = point_geometry(*z.disk, minimal_surface(osculating_vector_field(z, flat)));
    CHECK(still.points.size() == 1);
}

TEST_CASE("convergence csv") {
    ConvergenceReport rep{"exp", "solved", M_PI / 3, M_PI / 3, 0.25, false, {}};
    for (double e : {0.1, 0.05}) {
        ConvergenceRow r;
        r.eps = e;
        r.frame_error = r.surface_error = r.schwarzian_error = r.hopf_error = e;
        rep.rows.push_back(r);
    }
    auto csv = convergence_csv(rep);
    CHECK(csv.rfind("eps,vertices,", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    auto j = convergence_json(rep);
    CHECK(j["orders"]["frame"].get<double>() == doctest::Approx(1.0));
}

TEST_CASE("manifests") {
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    setenv("SOURCE_DATE_EPOCH", "0", 1);
    CHECK(run_timestamp() == "1970-01-01T00:00:00Z");
    unsetenv("SOURCE_DATE_EPOCH");
    RunManifest m{"check", {{"p.json", sha256_hex("x")}}, {{"closure", 1e-10}}, 3, tool_version(), "1970-01-01T00:00:00Z", {}};
    m.extra["note"] = "fixed";
    auto text = dump(manifest_to_json(m));
    CHECK(dump(manifest_to_json(manifest_from_json(json::parse(text)))) == text);
}
