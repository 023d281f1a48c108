#include "horonet/cmc1.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "horonet/errors.hpp"

namespace horonet {

namespace {

using Vec4 = Eigen::Vector4d;

Vec4 coords(const Hermitian& h) { return {h.x0(), h.x1(), h.x2(), h.x3()}; }
Hermitian from_vec(const Vec4& v) { return Hermitian::from_coords(v[0], v[1], v[2], v[3]); }
double mink(const Vec4& x, const Vec4& y) { return -x[0] * y[0] + x[1] * y[1] + x[2] * y[2] + x[3] * y[3]; }

double cross2(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

struct Directed {
    double theta, alpha, ell, d, rt;
    cplx u, v;
    double radial;  // | |u - w| - r | and | |v - w| - r |
};

// Edge i -> j seen from the chart of vertex i.
Directed measure_directed(const HorosphericalNet& net, const MoebiusMap& C, int i, int j) {
    const auto& disk = *net.disk;
    int fl = disk.left_face(i, j), fr = disk.right_face(i, j);
    Hermitian Nj = act_on_hermitian(C, net.horospheres[j].U);
    if (!(Nj.d > 0.0) || Nj.d < 1e-14 * Nj.trace())
        fail(ErrorCode::NonIntersectingHorospheres, "horospheres share a tangency point");
    double d = 2.0 / Nj.d;
    if (d <= 1.0)
        fail(ErrorCode::NonIntersectingHorospheres,
             "horospheres at " + std::to_string(i) + " and " + std::to_string(j) + " do not intersect");
    cplx w = Nj.b / Nj.d;
    cplx u = to_half_space(act_on_hermitian(C, net.f[fl])).w;
    cplx v = to_half_space(act_on_hermitian(C, net.f[fr])).w;
    double rt = std::sqrt(d - 1.0);
    double psi = std::arg((v - w) / (u - w));
    if (u == w || v == w) psi = 0.0;
    double theta = -psi;
    double a = std::acos(1.0 - 2.0 / d);
    double alpha = theta >= 0.0 ? a : -a;
    double radial = std::max(std::abs(std::abs(u - w) - rt), std::abs(std::abs(v - w) - rt));
    return {theta, alpha, std::abs(theta) * rt, d, rt, u, v, radial};
}

HorosphericalNet net_from_frame(const MoebiusFrame& F) {
    const auto& d = *F.disk;
    HorosphericalNet net;
    net.disk = F.disk;
    net.gauss = F.target;
    net.frame = F;
    net.f.reserve(d.num_faces());
    for (auto& a : F.A) net.f.push_back(lift_point(a));

    net.horospheres.assign(d.num_vertices(), Horosphere{});
    std::vector<bool> have(d.num_vertices(), false);
    for (int f = 0; f < d.num_faces(); ++f)
        for (int v : d.face(f)) {
            Horosphere h = act_on_horosphere(F.A[f], horosphere(F.source[v], 1.0));
            if (!have[v]) {
                net.horospheres[v] = h;
                have[v] = true;
            } else {
                double s = frobenius(h.U - net.horospheres[v].U) / std::max(1e-300, frobenius(h.U));
                net.horosphere_spread = std::max(net.horosphere_spread, s);
            }
        }
    double spread = 0.0;
    for (auto& x : net.f) spread = std::max(spread, frobenius(x - net.f[0]));
    net.degenerate = spread < 1e-12;
    measure_net(net);
    return net;
}

} // namespace

double HorosphericalNet::ell_tan(int e) const { return edge[e].ell * std::tan(0.5 * edge[e].alpha); }

MoebiusMap horosphere_chart(const Horosphere& h) {
    MoebiusMap B = send_to_infinity(h.z);
    Hermitian Up = act_on_hermitian(B, h.U);
    double h0 = 0.5 * Up.a;
    if (!(h0 > 0.0)) fail(ErrorCode::BadInput, "degenerate horosphere");
    double s = std::sqrt(h0);
    return Mat2{1.0 / s, 0.0, 0.0, s} * B;
}

void measure_net(HorosphericalNet& net) {
    const auto& disk = *net.disk;
    const int nv = disk.num_vertices();
    std::vector<MoebiusMap> chart(nv);
    for (int v = 0; v < nv; ++v) chart[v] = horosphere_chart(net.horospheres[v]);

    net.incidence_residual = 0.0;
    for (int f = 0; f < disk.num_faces(); ++f)
        for (int v : disk.face(f))
            net.incidence_residual = std::max(net.incidence_residual, std::abs(-inner(net.f[f], net.horospheres[v].U) - 1.0));

    net.edge.assign(disk.edges().size(), EdgeMeasure{});
    for (int e : disk.interior_edges()) {
        const Edge& ed = disk.edges()[e];
        Directed a = measure_directed(net, chart[ed.v0], ed.v0, ed.v1);
        Directed b = measure_directed(net, chart[ed.v1], ed.v1, ed.v0);
        EdgeMeasure& m = net.edge[e];
        m.theta = a.theta;
        m.alpha = a.alpha;
        m.ell = a.ell;
        m.diameter = a.d;
        m.theta_other = b.theta;
        m.tie = std::abs(M_PI - std::abs(a.theta)) < 1e-9;
    }

    net.area.assign(nv, 0.0);
    net.H.assign(nv, 0.0);
    for (int i : disk.interior_vertices()) {
        const auto& ring = disk.ring(i);
        std::vector<Directed> arcs;
        arcs.reserve(ring.size());
        for (int j : ring) arcs.push_back(measure_directed(net, chart[i], i, j));
        cplx centre = 0.0;
        for (auto& a : arcs) centre += a.u;
        centre /= double(arcs.size());
        double signed_area = 0.0, bend = 0.0;
        for (auto& a : arcs) {
            double psi = -a.theta;
            signed_area += 0.5 * cross2(a.u - centre, a.v - centre) + 0.5 * a.rt * a.rt * (psi - std::sin(psi));
            bend += a.ell * std::tan(0.5 * a.alpha);
        }
        net.area[i] = std::abs(signed_area);
        net.H[i] = net.area[i] + 0.5 * bend;
    }
    net.measured = true;
}

HorosphericalNet build_cmc1(const CirclePattern& z, const CirclePattern& zt) {
    z.validate();
    zt.validate();
    if (z.disk->num_faces() != zt.disk->num_faces() || z.disk->num_vertices() != zt.disk->num_vertices())
        fail(ErrorCode::MeshMismatch, "patterns on different meshes");
    if (z.disk->interior_vertices().empty()) fail(ErrorCode::BadInput, "mesh has no interior vertex");
    CrossRatioSystem X = cross_ratios_of(z), Xt = cross_ratios_of(zt);
    if (!X.all_delaunay() || !Xt.all_delaunay()) fail(ErrorCode::NotDelaunay, "patterns must be Delaunay");
    double sm = shear_match(X, Xt);
    if (sm > 1e-9) fail(ErrorCode::NotShearMatched, "shear coordinates differ by " + std::to_string(sm));
    MoebiusFrame F;
    try {
        F = coherent_lift(osculating_frame(z, zt), X, Xt);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MonodromyObstruction) fail(ErrorCode::LiftFailed, e.what());
        throw;
    }
    return net_from_frame(F);
}

HorosphericalNet net_from_points(const DiskPtr& disk, std::vector<Hermitian> f, std::vector<SpherePoint> gauss) {
    if ((int)f.size() != disk->num_faces() || (int)gauss.size() != disk->num_vertices())
        fail(ErrorCode::MeshMismatch, "net data does not match the mesh");
    HorosphericalNet net;
    net.disk = disk;
    net.f = std::move(f);
    net.gauss = std::move(gauss);
    std::vector<double> sum(disk->num_vertices(), 0.0);
    std::vector<int> cnt(disk->num_vertices(), 0);
    for (int fc = 0; fc < disk->num_faces(); ++fc)
        for (int v : disk->face(fc)) {
            double s = -inner(net.f[fc], horosphere(net.gauss[v], 1.0).U);
            sum[v] += 1.0 / s;
            ++cnt[v];
        }
    for (int v = 0; v < disk->num_vertices(); ++v) net.horospheres.push_back(horosphere(net.gauss[v], sum[v] / cnt[v]));
    double spread = 0.0;
    for (auto& x : net.f) spread = std::max(spread, frobenius(x - net.f[0]));
    net.degenerate = spread < 1e-12;
    measure_net(net);
    return net;
}

CurvatureReport integrated_mean_curvature(const HorosphericalNet& net) {
    if (!net.measured) fail(ErrorCode::UnmeasuredNet, "net has not been measured");
    CurvatureReport r;
    for (int v : net.disk->interior_vertices()) {
        if (net.area[v] < 1e-13) fail(ErrorCode::ZeroArea, "dual face of vertex " + std::to_string(v) + " has zero area");
        r.vertex.push_back(v);
        r.area.push_back(net.area[v]);
        r.H.push_back(net.H[v]);
        r.ratio.push_back(net.H[v] / net.area[v]);
        r.max_deviation = std::max(r.max_deviation, std::abs(r.ratio.back() - 1.0));
    }
    return r;
}

BalanceReport vertex_balance(const HorosphericalNet& net) {
    BalanceReport b;
    const auto& d = *net.disk;
    for (int i : d.interior_vertices()) {
        double th = 0.0, lt = 0.0;
        for (int j : d.ring(i)) {
            int e = d.edge_index(i, j);
            th += i == d.edges()[e].v0 ? net.edge[e].theta : net.edge[e].theta_other;
            lt += net.ell_tan(e);
        }
        b.theta = std::max(b.theta, std::abs(th));
        b.ell_tan = std::max(b.ell_tan, std::abs(lt));
    }
    return b;
}

double edge_condition_violation(const HorosphericalNet& net) {
    CrossRatioSystem Xt = cross_ratios_of(CirclePattern{net.disk, net.gauss});
    double worst = 0.0;
    for (int e : net.disk->interior_edges()) {
        double s = net.ell_tan(e) + Xt.arg(e);
        if (s < 0.0) worst = std::max(worst, -s);
        if (s >= M_PI) worst = std::max(worst, s - M_PI + 1e-300);
    }
    return worst;
}

namespace {

// Point on three horospheres closest to `near`.
Hermitian intersect_three(const Hermitian& U0, const Hermitian& U1, const Hermitian& U2, const Hermitian& near) {
    Eigen::Matrix<double, 3, 4> M;
    const Hermitian* us[3] = {&U0, &U1, &U2};
    for (int r = 0; r < 3; ++r) {
        Vec4 u = coords(*us[r]);
        M.row(r) << u[0], -u[1], -u[2], -u[3];
    }
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(M, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Vec4 p = svd.solve(Eigen::Vector3d::Ones());
    Vec4 n = svd.matrixV().col(3);
    double a = mink(n, n), b = mink(p, n), c = mink(p, p) + 1.0;
    double disc = b * b - a * c;
    if (disc < 0.0) {
        if (disc < -1e-12 * (b * b + std::abs(a * c))) fail(ErrorCode::OffsetTooLarge, "offset horospheres do not meet");
        disc = 0.0;
    }
    Vec4 target = coords(near);
    Vec4 best;
    double best_dist = INFINITY;
    for (double sgn : {-1.0, 1.0}) {
        double s = std::abs(a) > 1e-300 ? (-b + sgn * std::sqrt(disc)) / a : -c / (2.0 * b);
        Vec4 x = p + s * n;
        if (x[0] <= 0.0) continue;
        double dd = (x - target).norm();
        if (dd < best_dist) {
            best_dist = dd;
            best = x;
        }
    }
    if (!std::isfinite(best_dist)) fail(ErrorCode::OffsetTooLarge, "no intersection on the hyperboloid");
    return from_vec(best);
}

} // namespace

HorosphericalNet parallel_net(const HorosphericalNet& net, double t) {
    const auto& d = *net.disk;
    HorosphericalNet out;
    out.disk = net.disk;
    out.gauss = net.gauss;
    double k = std::exp(t);
    for (auto& h : net.horospheres) out.horospheres.push_back(horosphere_from_lightcone(k * h.U));
    // Real radii need exp(2t) < 1/sin^2(alpha/2) on every edge.
    if (net.measured)
        for (int e : d.interior_edges()) {
            double s = std::sin(0.5 * net.edge[e].alpha);
            if (s != 0.0 && std::exp(2.0 * t) >= 1.0 / (s * s)) fail(ErrorCode::OffsetTooLarge, "offset exceeds the real-radius bound");
        }
    for (int f = 0; f < d.num_faces(); ++f) {
        const Face& tr = d.face(f);
        out.f.push_back(intersect_three(out.horospheres[tr[0]].U, out.horospheres[tr[1]].U, out.horospheres[tr[2]].U, net.f[f]));
    }
    out.degenerate = net.degenerate;
    try {
        measure_net(out);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::NonIntersectingHorospheres) fail(ErrorCode::OffsetTooLarge, e.what());
        throw;
    }
    return out;
}

std::vector<SteinerRow> steiner_check(const HorosphericalNet& net, double t0) {
    HorosphericalNet n1 = parallel_net(net, t0), n2 = parallel_net(net, t0 / 2), n3 = parallel_net(net, t0 / 4);
    std::vector<SteinerRow> rows;
    for (int v : net.disk->interior_vertices()) {
        double a0 = net.area[v];
        double D1 = (n1.area[v] - a0) / t0, D2 = (n2.area[v] - a0) / (t0 / 2), D3 = (n3.area[v] - a0) / (t0 / 4);
        double R1 = 2 * D2 - D1, R2 = 2 * D3 - D2;
        double R = (4 * R2 - R1) / 3;
        double expected = -2.0 * net.H[v];
        rows.push_back({v, R, expected, std::abs(R - expected) / std::max(std::abs(expected), 1e-300)});
    }
    return rows;
}

Hermitian offset_on_horosphere(const Hermitian& x, const Horosphere& h, double t) {
    Hermitian n = h.U + inner(x, h.U) * x;
    double len = std::sqrt(inner(n, n));
    return std::cosh(t) * x + (std::sinh(t) / len) * n;
}

double horosphere_polygon_area(const Horosphere& h, const std::vector<Hermitian>& pts) {
    MoebiusMap C = horosphere_chart(h);
    std::vector<cplx> w;
    for (auto& p : pts) w.push_back(to_half_space(act_on_hermitian(C, p)).w);
    double s = 0.0;
    for (size_t k = 0; k < w.size(); ++k) s += cross2(w[k] - w[0], w[(k + 1) % w.size()] - w[0]);
    return 0.5 * std::abs(s);
}

HorosphericalNet dual_surface(const HorosphericalNet& net) {
    if (!net.frame) fail(ErrorCode::FrameUnavailable, "net carries no frame");
    return net_from_frame(inverse_frame(*net.frame));
}

ExtractedPair integrate_transports(const DiskPtr& disk, const std::vector<Hermitian>& f,
                                   const std::vector<SpherePoint>& gauss, const std::vector<Mat2>& eta, double tol) {
    const auto& d = *disk;
    ExtractedPair out{{disk, {}}, {disk, gauss}, {}, 0, 0, 0};
    auto directed = [&](int i, int j) {
        int e = d.edge_index(i, j);
        return i == d.edges()[e].v0 ? eta[e] : eta[e].inv();
    };
    for (int i : d.interior_vertices()) {
        Mat2 P = Mat2::identity();
        for (int j : d.ring(i)) P = directed(i, j) * P;
        out.eta_residual = std::max(out.eta_residual, distance(P, Mat2::identity()));
    }
    for (int e : d.interior_edges()) {
        const Edge& ed = d.edges()[e];
        Hermitian moved = act_on_hermitian(eta[e], f[ed.left]);
        out.transport_residual =
            std::max(out.transport_residual, frobenius(moved - f[ed.right]) / std::max(1.0, frobenius(f[ed.right])));
    }
    if (out.eta_residual > tol || out.transport_residual > tol)
        fail(ErrorCode::EtaNotClosed, "transports do not close (product " + std::to_string(out.eta_residual) +
                                          ", transport " + std::to_string(out.transport_residual) + ")");

    std::vector<Mat2> A(d.num_faces());
    std::vector<bool> seen(d.num_faces(), false);
    A[0] = Mat2::identity();
    seen[0] = true;
    std::queue<int> q;
    q.push(0);
    while (!q.empty()) {
        int fc = q.front();
        q.pop();
        const Face& t = d.face(fc);
        for (int s = 0; s < 3; ++s) {
            int i = t[s], j = t[(s + 1) % 3];
            int g = d.right_face(i, j);
            if (g < 0 || seen[g]) continue;
            A[g] = directed(i, j) * A[fc];
            seen[g] = true;
            q.push(g);
        }
    }
    Mat2 C = hermitian_sqrt(f[0]);
    for (auto& a : A) a = a * C;
    for (int fc = 0; fc < d.num_faces(); ++fc)
        out.fit_residual = std::max(out.fit_residual, frobenius(lift_point(A[fc]) - f[fc]) / std::max(1.0, frobenius(f[fc])));

    std::vector<SpherePoint> z(d.num_vertices());
    std::vector<bool> have(d.num_vertices(), false);
    for (int fc = 0; fc < d.num_faces(); ++fc)
        for (int v : d.face(fc)) {
            SpherePoint p = apply(A[fc].inv(), gauss[v]);
            if (!have[v]) {
                z[v] = p;
                have[v] = true;
            } else {
                out.fit_residual = std::max(out.fit_residual, chordal_distance(p, z[v]));
            }
        }
    out.z.z = std::move(z);
    out.frame = MoebiusFrame{disk, out.z.z, gauss, std::move(A), true, {}};
    out.frame.lambda.assign(d.edges().size(), cplx(0.0));
    for (int e : d.interior_edges()) out.frame.lambda[e] = transition(out.frame, d.edges()[e].v0, d.edges()[e].v1).lambda;
    return out;
}

ExtractedPair extract_patterns(const HorosphericalNet& input, double tol) {
    if (input.degenerate) fail(ErrorCode::NotCMC1, "degenerate net");
    HorosphericalNet net = input;
    if (!net.measured) measure_net(net);
    CurvatureReport r;
    try {
        r = integrated_mean_curvature(net);
    } catch (const Error& e) {
        fail(ErrorCode::NotCMC1, e.what());
    }
    if (r.max_deviation > tol) fail(ErrorCode::NotCMC1, "mean curvature ratio deviates by " + std::to_string(r.max_deviation));
    if (edge_condition_violation(net) > tol) fail(ErrorCode::NotCMC1, "edge condition fails");

    const auto& d = *net.disk;
    std::vector<Mat2> eta(d.edges().size());
    for (int e : d.interior_edges()) {
        const Edge& ed = d.edges()[e];
        cplx lam = std::polar(1.0, 0.5 * net.ell_tan(e));
        eta[e] = inverse_transition_closed_form(net.gauss[ed.v0], net.gauss[ed.v1], lam);
    }
    return integrate_transports(net.disk, net.f, net.gauss, eta, tol);
}

double isometry_residual(const std::vector<Hermitian>& a, const std::vector<Hermitian>& b) {
    if (a.size() != b.size()) fail(ErrorCode::MeshMismatch, "point sets differ in size");
    const size_t n = a.size();
    const size_t stride = n > 400 ? n / 200 : 1;
    double worst = 0.0;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; j += stride)
            worst = std::max(worst, std::abs(hyperbolic_distance(a[i], a[j]) - hyperbolic_distance(b[i], b[j])));
    return worst;
}

} // namespace horonet
