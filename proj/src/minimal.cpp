#include "horonet/minimal.hpp"

#include <cmath>
#include <string>

#include "horonet/errors.hpp"

namespace horonet {

cplx vector_field(const Mat2& a, cplx z) { return -a.c * z * z + 2.0 * a.a * z + a.b; }

MoebiusVectorFrame osculating_vector_field(const CirclePattern& z, const std::vector<cplx>& zdot) {
    const auto& d = *z.disk;
    if ((int)zdot.size() != d.num_vertices()) fail(ErrorCode::MeshMismatch, "velocity field does not match the mesh");
    MoebiusVectorFrame out{z.disk, {}};
    out.a.reserve(d.num_faces());
    for (int f = 0; f < d.num_faces(); ++f) {
        const Face& t = d.face(f);
        cplx p[3], v[3];
        for (int s = 0; s < 3; ++s) {
            if (z.z[t[s]].is_infinity()) fail(ErrorCode::InfinityInFace, "face " + std::to_string(f) + " has a vertex at infinity");
            p[s] = z.z[t[s]].affine();
            v[s] = zdot[t[s]];
        }
        double scale = std::max({std::abs(p[0] - p[1]), std::abs(p[1] - p[2]), std::abs(p[2] - p[0])});
        for (int s = 0; s < 3; ++s)
            if (std::abs(p[s] - p[(s + 1) % 3]) <= 1e-13 * std::max(1.0, scale))
                fail(ErrorCode::DegenerateFace, "face " + std::to_string(f) + " has coincident vertices");
        // divided differences: c2 z^2 + c1 z + c0
        cplx d01 = (v[1] - v[0]) / (p[1] - p[0]), d12 = (v[2] - v[1]) / (p[2] - p[1]);
        cplx c2 = (d12 - d01) / (p[2] - p[0]);
        cplx c1 = d01 - c2 * (p[0] + p[1]);
        cplx c0 = v[0] - c1 * p[0] - c2 * p[0] * p[0];
        out.a.push_back(Mat2{0.5 * c1, c0, -c2, -0.5 * c1});
    }
    return out;
}

std::array<cplx, 3> to_c3(const Mat2& a) {
    const cplx I(0.0, 1.0);
    return {0.5 * (a.b + a.c), -0.5 * I * (a.b - a.c), a.a};
}

std::vector<Point3> minimal_surface(const MoebiusVectorFrame& frame) {
    std::vector<Point3> out;
    out.reserve(frame.a.size());
    for (auto& a : frame.a) {
        auto c = to_c3(a);
        out.push_back({c[0].real(), c[1].real(), c[2].real()});
    }
    return out;
}

double edge_compatibility(const MoebiusVectorFrame& frame, const CirclePattern& z) {
    const auto& d = *frame.disk;
    double worst = 0.0;
    for (int e : d.interior_edges()) {
        const Edge& ed = d.edges()[e];
        Mat2 diff = frame.a[ed.left] - frame.a[ed.right];
        for (int v : {ed.v0, ed.v1}) worst = std::max(worst, std::abs(vector_field(diff, z.z[v].affine())));
    }
    return worst;
}

double point_spread(const std::vector<Point3>& pts) {
    double m = 0.0;
    for (auto& p : pts) m = std::max(m, std::hypot(p[0] - pts[0][0], p[1] - pts[0][1], p[2] - pts[0][2]));
    return m;
}

Mat2 smooth_vector_osculating(cplx h, cplx h1, cplx h2, cplx z) {
    return {0.5 * (h1 - z * h2), 0.5 * (z * z * h2 - 2.0 * z * h1 + 2.0 * h), -0.5 * h2, 0.5 * (z * h2 - h1)};
}

} // namespace horonet
