#include "horonet/osculating.hpp"

#include <cmath>
#include <queue>
#include <string>

#include "horonet/errors.hpp"

namespace horonet {

MoebiusFrame osculating_frame(const CirclePattern& z, const CirclePattern& zt) {
    z.validate();
    zt.validate();
    if (z.disk->num_vertices() != zt.disk->num_vertices() || z.disk->num_faces() != zt.disk->num_faces())
        fail(ErrorCode::MeshMismatch, "patterns on different meshes");
    MoebiusFrame F{z.disk, z.z, zt.z, {}, false, {}};
    const auto& d = *z.disk;
    F.A.reserve(d.num_faces());
    for (int f = 0; f < d.num_faces(); ++f) {
        const Face& t = d.face(f);
        try {
            F.A.push_back(mobius_from_triples(z.z[t[0]], z.z[t[1]], z.z[t[2]], zt.z[t[0]], zt.z[t[1]], zt.z[t[2]]));
        } catch (const Error&) {
            fail(ErrorCode::DegenerateFace, "face " + std::to_string(f) + " is degenerate");
        }
    }
    return F;
}

namespace {

cplx rayleigh(const Mat2& T, const SpherePoint& v) {
    cplx tp = T.a * v.p + T.b * v.q, tq = T.c * v.p + T.d * v.q;
    return (std::conj(v.p) * tp + std::conj(v.q) * tq) / (std::norm(v.p) + std::norm(v.q));
}

bool in_right_half(cplx x) {
    double t = std::arg(x);
    return t > -M_PI / 2 && t <= M_PI / 2;
}

} // namespace

Transition transition(const MoebiusFrame& F, int i, int j) {
    const auto& d = *F.disk;
    int e = d.edge_index(i, j);
    if (e < 0) fail(ErrorCode::BadInput, "not an edge");
    int fl = d.left_face(i, j), fr = d.right_face(i, j);
    if (fl < 0 || fr < 0) fail(ErrorCode::BoundaryEdge, "transition across a boundary edge");
    Mat2 T = F.A[fr].inv() * F.A[fl];
    return {T, rayleigh(T, F.source[i])};
}

Mat2 eigen_matrix(const SpherePoint& a, const SpherePoint& b, cplx lam) {
    Mat2 P{a.p, b.p, a.q, b.q};
    Mat2 D{lam, 0.0, 0.0, 1.0 / lam};
    return P * D * P.inverse();
}

Mat2 transition_closed_form(const SpherePoint& zi, const SpherePoint& zj, cplx lam) { return eigen_matrix(zi, zj, lam); }

Mat2 inverse_transition_closed_form(const SpherePoint& zti, const SpherePoint& ztj, cplx lam) {
    return eigen_matrix(zti, ztj, 1.0 / lam);
}

cplx lambda_from_cross_ratios(cplx X, cplx Xt) {
    cplx l = std::sqrt(X / Xt);
    return in_right_half(l) ? l : -l;
}

Mat2 vertex_monodromy(const std::vector<SpherePoint>& z, const CrossRatioSystem& X, const CrossRatioSystem& Xt, int v) {
    const auto& ring = interior_star(*X.disk, v);
    Mat2 M = Mat2::identity();
    for (int j : ring) M = transition_closed_form(z[v], z[j], lambda_from_cross_ratios(X.at(v, j), Xt.at(v, j))) * M;
    return M;
}

MoebiusFrame coherent_lift(const MoebiusFrame& frame, const CrossRatioSystem& X, const CrossRatioSystem& Xt) {
    if (!X.all_delaunay()) fail(ErrorCode::NotDelaunay, "source cross ratios are not Delaunay");
    if (!Xt.all_delaunay()) fail(ErrorCode::NotDelaunay, "target cross ratios are not Delaunay");
    const auto& d = *frame.disk;
    for (int v : d.interior_vertices()) {
        Mat2 M = vertex_monodromy(frame.source, X, Xt, v);
        double plus = distance(M, Mat2::identity()), minus = distance(M, -Mat2::identity());
        if (minus < plus) fail(ErrorCode::MonodromyObstruction, "monodromy -I at vertex " + std::to_string(v));
    }

    MoebiusFrame F = frame;
    // Root face sign: (2,2) entry in the right half plane.
    if (std::abs(F.A[0].d) > 1e-14 * F.A[0].norm()) {
        if (!in_right_half(F.A[0].d)) F.A[0] = -F.A[0];
    } else {
        F.A[0] = canonical_sign(F.A[0]);
    }
    std::vector<bool> seen(d.num_faces(), false);
    seen[0] = true;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        int f = q.front();
        q.pop();
        const Face& t = d.face(f);
        for (int s = 0; s < 3; ++s) {
            int i = t[s], j = t[(s + 1) % 3];
            int g = d.right_face(i, j);
            if (g < 0 || seen[g]) continue;
            Mat2 T = F.A[g].inv() * F.A[f];
            if (!in_right_half(rayleigh(T, F.source[i]))) F.A[g] = -F.A[g];
            seen[g] = true;
            q.push(g);
        }
    }

    F.lambda.assign(d.edges().size(), cplx(0.0));
    for (int e : d.interior_edges()) {
        const Edge& ed = d.edges()[e];
        Transition tr = transition(F, ed.v0, ed.v1);
        cplx expect = lambda_from_cross_ratios(X.X[e], Xt.X[e]);
        if (std::abs(tr.lambda - expect) > 1e-6 * std::max(1.0, std::abs(expect)))
            fail(ErrorCode::MonodromyObstruction, "sign inconsistency on edge {" + std::to_string(ed.v0) + "," +
                                                      std::to_string(ed.v1) + "}");
        F.lambda[e] = tr.lambda;
    }
    F.coherent = true;
    return F;
}

MoebiusFrame compose_frames(const MoebiusFrame& first, const MoebiusFrame& second) {
    if (first.A.size() != second.A.size() || first.target.size() != second.source.size())
        fail(ErrorCode::MeshMismatch, "frames on different meshes");
    for (size_t v = 0; v < first.target.size(); ++v)
        if (!same_point(first.target[v], second.source[v], 1e-10))
            fail(ErrorCode::MeshMismatch, "intermediate patterns differ");
    MoebiusFrame F{first.disk, first.source, second.target, {}, false, {}};
    F.A.reserve(first.A.size());
    for (size_t f = 0; f < first.A.size(); ++f) F.A.push_back(second.A[f] * first.A[f]);
    return F;
}

MoebiusFrame inverse_frame(const MoebiusFrame& frame) {
    MoebiusFrame F{frame.disk, frame.target, frame.source, {}, frame.coherent, {}};
    for (auto& a : frame.A) F.A.push_back(a.inv());
    if (!frame.lambda.empty()) {
        // A_jil A_ijk^-1 has eigenvalue 1/lambda at z~_i; the inverse frame's transition is its inverse.
        F.lambda = frame.lambda;
    }
    return F;
}

// ---- smooth ----

Holo Holo::identity() {
    return {[](cplx z) { return z; }, [](cplx) { return cplx(1.0); }, [](cplx) { return cplx(0.0); },
            [](cplx) { return cplx(0.0); }};
}

Holo Holo::exponential() {
    auto e = [](cplx z) { return std::exp(z); };
    return {e, e, e, e};
}

Holo Holo::power(int n) {
    auto pw = [](cplx z, int k) { return k < 0 ? cplx(0.0) : std::pow(z, k); };
    double c1 = n, c2 = double(n) * (n - 1), c3 = double(n) * (n - 1) * (n - 2);
    return {[=](cplx z) { return pw(z, n); }, [=](cplx z) { return c1 * pw(z, n - 1); },
            [=](cplx z) { return c2 * pw(z, n - 2); }, [=](cplx z) { return c3 * pw(z, n - 3); }};
}

Holo Holo::moebius(cplx a, cplx b, cplx c, cplx d) {
    cplx det = a * d - b * c;
    return {[=](cplx z) { return (a * z + b) / (c * z + d); },
            [=](cplx z) { return det / ((c * z + d) * (c * z + d)); },
            [=](cplx z) { return -2.0 * c * det / std::pow(c * z + d, 3); },
            [=](cplx z) { return 6.0 * c * c * det / std::pow(c * z + d, 4); }};
}

Holo compose(const Holo& f, const Holo& g) {
    return {[=](cplx z) { return f.h(g.h(z)); },
            [=](cplx z) { return f.d1(g.h(z)) * g.d1(z); },
            [=](cplx z) {
                cplx w = g.h(z), g1 = g.d1(z);
                return f.d2(w) * g1 * g1 + f.d1(w) * g.d2(z);
            },
            [=](cplx z) {
                cplx w = g.h(z), g1 = g.d1(z), g2 = g.d2(z);
                return f.d3(w) * g1 * g1 * g1 + 3.0 * f.d2(w) * g1 * g2 + f.d1(w) * g.d3(z);
            }};
}

cplx schwarzian(const Holo& h, cplx z) {
    cplx a = h.d1(z), b = h.d2(z), c = h.d3(z);
    if (std::abs(a) == 0.0) fail(ErrorCode::CriticalPoint, "h' vanishes");
    return c / a - 1.5 * (b / a) * (b / a);
}

MoebiusMap smooth_osculating(const Holo& f, cplx z, BranchState* branch) {
    cplx h = f.h(z), h1 = f.d1(z), h2 = f.d2(z);
    if (std::abs(h1) < 1e-300) fail(ErrorCode::CriticalPoint, "h' vanishes");
    cplx s = std::sqrt(h1 * h1 * h1);
    if (branch) {
        if (branch->started && std::abs(s + branch->root) < std::abs(s - branch->root)) s = -s;
        branch->started = true;
        branch->root = s;
    }
    Mat2 m{h1 * h1 - 0.5 * h * h2, 0.5 * z * h * h2 + h * h1 - z * h1 * h1, -0.5 * h2, 0.5 * z * h2 + h1};
    return (1.0 / s) * m;
}

MoebiusMap smooth_pair_frame(const Holo& g, const Holo& gt, cplx z, BranchState* bg, BranchState* bgt) {
    return smooth_osculating(gt, z, bgt) * smooth_osculating(g, z, bg).inv();
}

Mat2 maurer_cartan(cplx S, cplx z) { return (-0.5 * S) * Mat2{z, -z * z, 1.0, -z}; }

} // namespace horonet
