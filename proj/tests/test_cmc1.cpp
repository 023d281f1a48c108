#include "doctest.h"
#include "horonet/errors.hpp"
#include "horonet/toda.hpp"
#include "support.hpp"

using namespace horonet;

namespace {
ErrorCode code_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::BadInput;
}

struct Fixture {
    TodaPair pair;
    HorosphericalNet net;
};

Fixture toda_fixture(int n, double t) {
    auto s = square_grid_toda(n, n);
    Fixture fx{toda_pair(s, cplx(0, t), cplx(0, -t)), {}};
    fx.net = build_cmc1(fx.pair.z, fx.pair.zt);
    return fx;
}
}

TEST_CASE("Toda pair gives a CMC-1 net") {
    for (int n : {6, 10})
        for (double t : {0.02, 0.05, 0.1}) {
            auto fx = toda_fixture(n, t);
            auto& net = fx.net;
            CHECK_FALSE(net.degenerate);
            CHECK(net.incidence_residual < 1e-9);
            auto c = integrated_mean_curvature(net);
            CHECK(c.max_deviation <= 1e-9);
            auto b = vertex_balance(net);
            CHECK(b.theta <= 1e-10);
            CHECK(b.ell_tan <= 1e-10);
            CHECK(edge_condition_violation(net) < 1e-10);
        }
}

TEST_CASE("measured rotation angles follow the cross ratios") {
    auto fx = toda_fixture(6, 0.05);
    auto X = cross_ratios_of(fx.pair.z), Xt = cross_ratios_of(fx.pair.zt);
    for (int e : fx.net.disk->interior_edges()) {
        const auto& m = fx.net.edge[e];
        CHECK(std::abs(m.theta - (X.arg(e) - Xt.arg(e))) < 1e-9);
        CHECK(std::abs(m.theta_other - m.theta) < 1e-9);
        if (std::abs(m.alpha) > 1e-12) CHECK(std::abs(m.ell - m.theta / std::tan(m.alpha / 2)) < 1e-9);
        CHECK(std::abs(fx.net.ell_tan(e) + Xt.arg(e) - X.arg(e)) < 1e-9);
        CHECK(std::abs(fx.net.ell_tan(e) - m.theta) < 1e-9);
        CHECK(m.ell >= 0);
    }
}

TEST_CASE("vertices lie on the horospheres of the incident dual faces") {
    auto fx = toda_fixture(6, 0.1);
    const auto& d = *fx.net.disk;
    for (int f = 0; f < d.num_faces(); ++f) {
        require_hyperboloid(fx.net.f[f]);
        for (int v : d.face(f)) CHECK(on_horosphere(fx.net.f[f], fx.net.horospheres[v], 1e-9).on);
    }
    for (int v = 0; v < d.num_vertices(); ++v) CHECK(same_point(fx.net.horospheres[v].z, fx.pair.zt.z[v], 1e-9));
}

TEST_CASE("net is equivariant under Moebius maps of the target") {
    auto fx = toda_fixture(6, 0.05);
    std::mt19937_64 g(43);
    auto M = testing::rand_moebius(g, 0.3);
    auto moved = build_cmc1(fx.pair.z, fx.pair.zt.mapped(M));
    CHECK(isometry_residual(fx.net.f, moved.f) < 1e-9);
    for (size_t f = 0; f < moved.f.size(); ++f)
        CHECK(frobenius(moved.f[f] - act_on_hermitian(M, fx.net.f[f])) < 1e-9 * frobenius(moved.f[f]));
    // a unitary change of the source leaves the surface fixed
    auto N = send_to_infinity(SpherePoint::finite(cplx(7.0, -3.0)));
    auto re = build_cmc1(fx.pair.z.mapped(N), fx.pair.zt);
    for (size_t f = 0; f < re.f.size(); ++f) CHECK(frobenius(re.f[f] - fx.net.f[f]) < 1e-9 * frobenius(re.f[f]));
}

TEST_CASE("identical patterns give a degenerate net") {
    auto p = testing::small_lattice(4.2, 3.6);
    auto z = testing::lattice_pattern(p);
    auto net = build_cmc1(z, z);
    CHECK(net.degenerate);
    for (auto& x : net.f) CHECK(frobenius(x - Hermitian::identity()) < 1e-12);
    auto dual = dual_surface(net);
    CHECK(dual.degenerate);
    CHECK(code_of([&] { extract_patterns(net); }) == ErrorCode::NotCMC1);
}

TEST_CASE("pairs that are not shear matched are rejected") {
    auto s = square_grid_toda(5, 5);
    auto p = toda_pair(s, 0.0, 0.1);
    CHECK(code_of([&] { build_cmc1(p.z, p.zt); }) == ErrorCode::NotShearMatched);
}

TEST_CASE("duality") {
    auto fx = toda_fixture(6, 0.05);
    auto dual = dual_surface(fx.net);
    CHECK(integrated_mean_curvature(dual).max_deviation < 1e-9);
    for (int e : fx.net.disk->interior_edges()) CHECK(std::abs(fx.net.ell_tan(e) + dual.ell_tan(e)) <= 1e-9);
    auto back = dual_surface(dual);
    CHECK(isometry_residual(fx.net.f, back.f) <= 1e-9);
    // the dual's Gauss map is the source pattern
    for (int v = 0; v < fx.net.disk->num_vertices(); ++v) CHECK(same_point(dual.gauss[v], fx.pair.z.z[v], 1e-9));
    auto bare = net_from_points(fx.net.disk, fx.net.f, fx.net.gauss);
    CHECK(code_of([&] { dual_surface(bare); }) == ErrorCode::FrameUnavailable);
}

TEST_CASE("net from bare points agrees with the constructed net") {
    auto fx = toda_fixture(6, 0.05);
    auto bare = net_from_points(fx.net.disk, fx.net.f, fx.net.gauss);
    CHECK(bare.incidence_residual < 1e-9);
    for (int e : bare.disk->interior_edges()) {
        CHECK(std::abs(bare.edge[e].theta - fx.net.edge[e].theta) < 1e-9);
        CHECK(std::abs(bare.edge[e].ell - fx.net.edge[e].ell) < 1e-9);
    }
}

TEST_CASE("Steiner derivative") {
    auto fx = toda_fixture(6, 0.05);
    auto rows = steiner_check(fx.net, 1e-2);
    CHECK(!rows.empty());
    for (auto& r : rows) CHECK(r.relative_error <= 1e-5);
    CHECK(code_of([&] { parallel_net(fx.net, 50.0); }) == ErrorCode::OffsetTooLarge);
    auto par = parallel_net(fx.net, 0.0);
    for (size_t f = 0; f < par.f.size(); ++f) CHECK(frobenius(par.f[f] - fx.net.f[f]) < 1e-10);
}

TEST_CASE("flat horosphere patch scales exactly") {
    std::mt19937_64 g(47);
    for (int n = 0; n < 10; ++n) {
        auto M = testing::rand_moebius(g, 0.5);
        auto h = act_on_horosphere(M, horosphere(SpherePoint::infinity(), 1.0));
        std::vector<Hermitian> pts;
        for (int k = 0; k < 5; ++k) pts.push_back(act_on_hermitian(M, from_half_space({std::polar(1.0 + 0.2 * k, 1.2 * k), 1.0})));
        for (auto& x : pts) CHECK(on_horosphere(x, h).on);
        double a0 = horosphere_polygon_area(h, pts);
        CHECK(a0 > 0);
        for (double t : {0.3, -0.2, 1.0}) {
            std::vector<Hermitian> moved;
            for (auto& x : pts) moved.push_back(offset_on_horosphere(x, h, t));
            auto ht = horosphere_from_lightcone(std::exp(t) * h.U);
            for (auto& x : moved) CHECK(on_horosphere(x, ht).on);
            CHECK(std::abs(horosphere_polygon_area(ht, moved) - std::exp(-2 * t) * a0) <= 1e-10 * a0);
        }
    }
}

TEST_CASE("extraction inverts the construction") {
    for (double t : {0.02, 0.1}) {
        auto fx = toda_fixture(6, t);
        auto ex = extract_patterns(fx.net);
        CHECK(ex.eta_residual < 1e-8);
        CHECK(ex.fit_residual < 1e-8);
        auto X = cross_ratios_of(ex.z), Xt = cross_ratios_of(ex.zt);
        CHECK(shear_match(X, Xt) <= 1e-8);
        CHECK(X.all_delaunay(1e-8));
        CHECK(Xt.all_delaunay(1e-8));
        for (int v = 0; v < fx.net.disk->num_vertices(); ++v) CHECK(same_point(ex.zt.z[v], fx.net.gauss[v], 1e-10));
        auto again = build_cmc1(ex.z, ex.zt);
        CHECK(isometry_residual(fx.net.f, again.f) <= 1e-8);
        // the source is recovered up to a Moebius map
        CHECK(shear_match(X, cross_ratios_of(fx.pair.z)) < 1e-8);
        CHECK(angle_match(X, cross_ratios_of(fx.pair.z)) < 1e-8);
    }
}

TEST_CASE("perturbed Gauss map breaks the transports") {
    auto fx = toda_fixture(6, 0.05);
    const auto& d = *fx.net.disk;
    auto gauss = fx.net.gauss;
    int v = d.interior_vertices()[3];
    gauss[v] = SpherePoint::finite(gauss[v].affine() + cplx(0.01, 0.0));
    std::vector<Mat2> eta(d.edges().size());
    for (int e : d.interior_edges())
        eta[e] = inverse_transition_closed_form(gauss[d.edges()[e].v0], gauss[d.edges()[e].v1],
                                                std::polar(1.0, 0.5 * fx.net.ell_tan(e)));
    CHECK(code_of([&] { integrate_transports(fx.net.disk, fx.net.f, gauss, eta, 1e-8); }) == ErrorCode::EtaNotClosed);
    // unperturbed data closes
    for (int e : d.interior_edges())
        eta[e] = inverse_transition_closed_form(fx.net.gauss[d.edges()[e].v0], fx.net.gauss[d.edges()[e].v1],
                                                std::polar(1.0, 0.5 * fx.net.ell_tan(e)));
    CHECK(integrate_transports(fx.net.disk, fx.net.f, fx.net.gauss, eta, 1e-8).eta_residual < 1e-8);
    // as a net, the perturbed Gauss map fails the edge condition
    HorosphericalNet bad = fx.net;
    bad.gauss = gauss;
    CHECK(code_of([&] { extract_patterns(bad); }) == ErrorCode::NotCMC1);
}

TEST_CASE("isometry residual") {
    std::mt19937_64 g(53);
    std::vector<Hermitian> a;
    for (int k = 0; k < 8; ++k) a.push_back(testing::rand_hyperboloid(g));
    auto M = testing::rand_moebius(g);
    std::vector<Hermitian> b;
    for (auto& x : a) b.push_back(act_on_hermitian(M, x));
    CHECK(isometry_residual(a, b) < 1e-10);
    b[2] = testing::rand_hyperboloid(g);
    CHECK(isometry_residual(a, b) > 1e-3);
}
