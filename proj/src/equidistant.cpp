#include "horonet/equidistant.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>

#include "horonet/errors.hpp"

namespace horonet {

namespace {

// <P, U> as a linear form in (a, d, Re b, Im b) of P.
Eigen::RowVector4d inner_row(const Hermitian& U) {
    return {-0.5 * U.d, -0.5 * U.a, U.b.real(), U.b.imag()};
}

Hermitian circle_functional(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c) {
    Eigen::Matrix<double, 3, 4> M;
    M.row(0) = inner_row(horosphere(a, 1.0).U);
    M.row(1) = inner_row(horosphere(b, 1.0).U);
    M.row(2) = inner_row(horosphere(c, 1.0).U);
    Eigen::JacobiSVD<Eigen::Matrix<double, 3, 4>> svd(M, Eigen::ComputeFullV);
    Eigen::Vector4d v = svd.matrixV().col(3);
    Hermitian P{v(0), v(1), cplx(v(2), v(3))};
    double n = inner(P, P);
    if (!(n > 0)) fail(ErrorCode::DegenerateFace, "Gauss points of a face are not distinct");
    return (1.0 / std::sqrt(n)) * P;
}

void fit_functionals(EquidistantNet& net) {
    const auto& d = *net.disk;
    net.P.clear();
    net.c.clear();
    for (int f = 0; f < d.num_faces(); ++f) {
        const Face& t = d.face(f);
        Hermitian P = circle_functional(net.gauss[t[0]], net.gauss[t[1]], net.gauss[t[2]]);
        net.P.push_back(P);
        net.c.push_back(inner(net.f[f], P));
    }
    net.lambda.assign(d.edges().size(), 0.0);
    for (int e : d.interior_edges()) {
        const Edge& ed = d.edges()[e];
        net.lambda[e] = edge_scaling(net.f[ed.left], net.f[ed.right], net.gauss[ed.v0], net.gauss[ed.v1]).lambda;
    }
    double spread = 0.0;
    for (auto& x : net.f) spread = std::max(spread, frobenius(x - net.f[0]));
    net.degenerate = spread < 1e-12;
}

} // namespace

EdgeScaling edge_scaling(const Hermitian& fl, const Hermitian& fr, const SpherePoint& g0, const SpherePoint& g1) {
    MoebiusMap C = send_pair(g0, g1);
    auto a = to_half_space(act_on_hermitian(C, fl)), b = to_half_space(act_on_hermitian(C, fr));
    double s = b.h / a.h;
    EdgeScaling out{std::sqrt(s), 0.0, 0.0};
    double ra = std::abs(a.w) / a.h, rb = std::abs(b.w) / b.h;
    // points near the axis carry no angle information
    if (ra > 1e-12 && rb > 1e-12) out.rotation = std::arg(b.w / a.w);
    double stretch = std::abs(rb - ra) / std::max(1.0, ra);
    out.reality = std::sqrt(s) * std::abs(std::sin(0.5 * out.rotation)) + stretch;
    return out;
}

EquidistantNet equidistant_from_points(const DiskPtr& disk, std::vector<Hermitian> f, std::vector<SpherePoint> gauss) {
    if ((int)f.size() != disk->num_faces() || (int)gauss.size() != disk->num_vertices())
        fail(ErrorCode::MeshMismatch, "net data does not match the mesh");
    EquidistantNet net;
    net.disk = disk;
    net.f = std::move(f);
    net.gauss = std::move(gauss);
    fit_functionals(net);
    return net;
}

EquidistantNet build_equidistant(const CirclePattern& z, const CirclePattern& zt) {
    auto X = cross_ratios_of(z), Xt = cross_ratios_of(zt);
    double am = angle_match(X, Xt);
    if (am > 1e-9) fail(ErrorCode::NotAngleMatched, "intersection angles differ by " + std::to_string(am));
    if (!X.all_delaunay() || !Xt.all_delaunay()) fail(ErrorCode::NotDelaunay, "patterns must be Delaunay");
    MoebiusFrame F;
    try {
        F = coherent_lift(osculating_frame(z, zt), X, Xt);
    } catch (const Error& e) {
        if (e.code() == ErrorCode::MonodromyObstruction) fail(ErrorCode::LiftFailed, e.what());
        throw;
    }
    std::vector<Hermitian> f;
    for (auto& A : F.A) f.push_back(lift_point(A));
    auto net = equidistant_from_points(z.disk, std::move(f), zt.z);
    net.frame = std::move(F);
    return net;
}

EquidistantReport verify_equidistant(const EquidistantNet& net) {
    EquidistantReport r;
    const auto& d = *net.disk;
    r.per_face.assign(d.num_faces(), 0.0);
    for (int f = 0; f < d.num_faces(); ++f)
        for (int g : d.dual_neighbors(f)) r.per_face[f] = std::max(r.per_face[f], std::abs(inner(net.f[g], net.P[f]) - net.c[f]));
    for (double x : r.per_face) r.cosphericity = std::max(r.cosphericity, x);
    for (int e : d.interior_edges()) {
        const Edge& ed = d.edges()[e];
        r.reality = std::max(r.reality, edge_scaling(net.f[ed.left], net.f[ed.right], net.gauss[ed.v0], net.gauss[ed.v1]).reality);
    }
    return r;
}

ExtractedPair extract_equidistant_patterns(const EquidistantNet& net, double tol) {
    if (net.degenerate) fail(ErrorCode::NotEquidistant, "degenerate net");
    auto rep = verify_equidistant(net);
    if (rep.reality > tol || rep.cosphericity > tol)
        fail(ErrorCode::NotEquidistant, "not an equidistant net (reality " + std::to_string(rep.reality) + ", co-sphericity " +
                                            std::to_string(rep.cosphericity) + ")");
    const auto& d = *net.disk;
    std::vector<Mat2> eta(d.edges().size());
    for (int e : d.interior_edges()) {
        const Edge& ed = d.edges()[e];
        double lam = edge_scaling(net.f[ed.left], net.f[ed.right], net.gauss[ed.v0], net.gauss[ed.v1]).lambda;
        eta[e] = inverse_transition_closed_form(net.gauss[ed.v0], net.gauss[ed.v1], lam);
    }
    return integrate_transports(net.disk, net.f, net.gauss, eta, tol);
}

} // namespace horonet
