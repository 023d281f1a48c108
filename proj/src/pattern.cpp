#include "horonet/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "horonet/errors.hpp"

namespace horonet {

CirclePattern CirclePattern::from_complex(DiskPtr disk, const std::vector<cplx>& pts) {
    CirclePattern p{std::move(disk), {}};
    p.z.reserve(pts.size());
    for (auto c : pts) p.z.push_back(SpherePoint::finite(c));
    return p;
}

void CirclePattern::validate() const {
    if (!disk || (int)z.size() != disk->num_vertices()) fail(ErrorCode::MeshMismatch, "pattern size differs from mesh");
    for (int f = 0; f < disk->num_faces(); ++f) {
        const Face& t = disk->face(f);
        for (int s = 0; s < 3; ++s)
            if (chordal_distance(z[t[s]], z[t[(s + 1) % 3]]) < 1e-13)
                fail(ErrorCode::DegenerateFace, "face " + std::to_string(f) + " has coincident vertices");
    }
}

CirclePattern CirclePattern::mapped(const MoebiusMap& m) const {
    CirclePattern out{disk, {}};
    out.z.reserve(z.size());
    for (auto& p : z) out.z.push_back(apply(m, p));
    return out;
}

bool CrossRatioSystem::all_delaunay(double tol) const {
    for (int e : disk->interior_edges())
        if (!delaunay(e, tol)) return false;
    return true;
}

CrossRatioSystem cross_ratios_of(const CirclePattern& pattern) {
    pattern.validate();
    const auto& d = *pattern.disk;
    CrossRatioSystem out{pattern.disk, std::vector<cplx>(d.edges().size(), cplx(0.0))};
    for (int e : d.interior_edges()) {
        const Edge& ed = d.edges()[e];
        int i = ed.v0, j = ed.v1;
        int k = d.third_vertex(ed.left, i, j), l = d.third_vertex(ed.right, i, j);
        try {
            out.X[e] = edge_cross_ratio(pattern.z[k], pattern.z[i], pattern.z[l], pattern.z[j]);
        } catch (const Error&) {
            fail(ErrorCode::DegenerateFace, "degenerate quad at edge {" + std::to_string(i) + "," + std::to_string(j) + "}");
        }
    }
    return out;
}

ClosureReport verify_closure(const CrossRatioSystem& X) {
    ClosureReport r;
    const auto& d = *X.disk;
    for (int v : d.interior_vertices()) {
        const auto& ring = d.ring(v);
        cplx prod = 1.0, sum = 0.0;
        double args = 0.0, scale = 1.0;
        for (int j : ring) {
            cplx x = X.at(v, j);
            prod *= x;
            sum += prod;
            scale = std::max(scale, std::abs(prod));
            args += arg_pi(x);
        }
        r.product = std::max(r.product, std::abs(prod - 1.0));
        r.sum = std::max(r.sum, std::abs(sum) / scale);
        r.branching = std::max(r.branching, std::abs(args - 2.0 * M_PI));
    }
    for (int e : d.interior_edges())
        if (!X.delaunay(e)) r.non_delaunay.push_back(e);
    return r;
}

CirclePattern develop(const DiskPtr& disk, const CrossRatioSystem& X, int seed_face,
                      const std::array<SpherePoint, 3>& seed, double closure_tol) {
    const auto& d = *disk;
    if (seed_face < 0 || seed_face >= d.num_faces()) fail(ErrorCode::DegenerateSeed, "seed face out of range");
    for (int s = 0; s < 3; ++s)
        if (chordal_distance(seed[s], seed[(s + 1) % 3]) < 1e-13) fail(ErrorCode::DegenerateSeed, "seed points coincide");

    std::vector<SpherePoint> z(d.num_vertices());
    std::vector<bool> placed(d.num_vertices(), false);
    for (int s = 0; s < 3; ++s) {
        z[d.face(seed_face)[s]] = seed[s];
        placed[d.face(seed_face)[s]] = true;
    }
    std::vector<bool> visited(d.num_faces(), false);
    std::queue<int> q;
    q.push(seed_face);
    visited[seed_face] = true;
    double worst = 0.0;
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        const Face& t = d.face(f);
        for (int s = 0; s < 3; ++s) {
            int i = t[s], j = t[(s + 1) % 3], k = t[(s + 2) % 3];
            int g = d.right_face(i, j);
            if (g < 0) continue;
            int l = d.third_vertex(g, i, j);
            cplx x = X.at(i, j);
            cplx jk = bracket(z[j], z[k]), ik = bracket(z[i], z[k]);
            cplx p = x * jk * z[i].p + ik * z[j].p;
            cplx qq = x * jk * z[i].q + ik * z[j].q;
            if (std::abs(p) + std::abs(qq) == 0.0 || !std::isfinite(std::abs(p) + std::abs(qq)))
                fail(ErrorCode::ClosureViolation, "degenerate propagation");
            SpherePoint cand(p, qq);
            if (placed[l]) {
                worst = std::max(worst, chordal_distance(cand, z[l]));
            } else {
                z[l] = cand;
                placed[l] = true;
            }
            if (!visited[g]) {
                visited[g] = true;
                q.push(g);
            }
        }
    }
    if (worst > closure_tol)
        fail(ErrorCode::ClosureViolation, "developing depends on the path (residual " + std::to_string(worst) + ")");
    return CirclePattern{disk, std::move(z)};
}

CirclePattern develop_like(const CrossRatioSystem& X, const CirclePattern& reference, int seed_face) {
    const Face& t = reference.disk->face(seed_face);
    return develop(X.disk, X, seed_face, {reference.z[t[0]], reference.z[t[1]], reference.z[t[2]]});
}

double shear_match(const CrossRatioSystem& X, const CrossRatioSystem& Y) {
    if (X.disk->num_vertices() != Y.disk->num_vertices() || X.X.size() != Y.X.size())
        fail(ErrorCode::MeshMismatch, "systems on different meshes");
    double m = 0.0;
    for (int e : X.disk->interior_edges()) m = std::max(m, std::abs(std::log(std::abs(X.X[e])) - std::log(std::abs(Y.X[e]))));
    return m;
}

double angle_match(const CrossRatioSystem& X, const CrossRatioSystem& Y) {
    if (X.disk->num_vertices() != Y.disk->num_vertices() || X.X.size() != Y.X.size())
        fail(ErrorCode::MeshMismatch, "systems on different meshes");
    double m = 0.0;
    for (int e : X.disk->interior_edges()) m = std::max(m, std::abs(X.arg(e) - Y.arg(e)));
    return m;
}

double pattern_distance(const CirclePattern& a, const CirclePattern& b) {
    double m = 0.0;
    for (size_t v = 0; v < a.z.size(); ++v) m = std::max(m, chordal_distance(a.z[v], b.z[v]));
    return m;
}

} // namespace horonet
