#include "doctest.h"
#include "horonet/errors.hpp"
#include "horonet/toda.hpp"

using namespace horonet;

TEST_CASE("square grid solution") {
    for (auto [n, m] : {std::pair{2, 2}, {3, 3}, {6, 4}}) {
        auto s = square_grid_toda(n, m);
        CHECK(s.residuals.vertex_sum == 0.0);
        CHECK(s.residuals.face_sum == 0.0);
        CHECK(s.residuals.weighted_sum == 0.0);
        CHECK(s.mesh->num_vertices == n * m);
    }
    CHECK_THROWS_AS(square_grid_toda(1, 4), Error);

    auto s = square_grid_toda(3, 3);
    int e = s.mesh->edge_index(3, 4);  // horizontal edge through the centre vertex 4
    s.q[e] = 2.0;
    auto r = verify_toda(*s.mesh, s.z, s.q);
    CHECK(r.vertex_sum == doctest::Approx(1.0));
    CHECK(r.per_vertex[4] == doctest::Approx(1.0));
    CHECK_THROWS_AS(labeling_from(s), Error);

    std::vector<cplx> zero(s.q.size(), 0.0);
    auto rz = verify_toda(*s.mesh, s.z, zero);
    CHECK(rz.vertex_sum == 0.0);
    CHECK(rz.weighted_sum == 0.0);
}

TEST_CASE("labeling on the square grid") {
    auto s = square_grid_toda(4, 4);
    auto a = labeling_from(s);
    CHECK(a.residual == 0.0);
    CHECK(a.real());
    for (size_t e = 0; e < s.mesh->edges.size(); ++e) {
        auto [i, j] = s.mesh->edges[e];
        if (s.mesh->edge_faces[e][0] < 0 || s.mesh->edge_faces[e][1] < 0) continue;
        CHECK(std::abs(a.plus(i, j) - a.minus(i, j) - s.q[e]) < 1e-12);
        CHECK(std::abs(a.plus(i, j) - a.plus(j, i)) < 1e-12);  // zig-zag constancy
        CHECK(std::abs(a.minus(i, j) - a.minus(j, i)) < 1e-12);
    }
    // two values differing by 1
    double lo = 1e9, hi = -1e9;
    for (auto& f : a.alpha)
        for (auto x : f) {
            lo = std::min(lo, x.real());
            hi = std::max(hi, x.real());
        }
    CHECK(hi - lo == doctest::Approx(1.0));
    for (auto& f : a.alpha)
        for (auto x : f) CHECK((std::abs(x.real() - lo) < 1e-14 || std::abs(x.real() - hi) < 1e-14));

    auto z = s;
    std::fill(z.q.begin(), z.q.end(), cplx(0.0));
    CHECK(labeling_from(z).max_abs() == 0.0);
}

TEST_CASE("family closure and conformal symmetries") {
    auto s = square_grid_toda(6, 6);
    auto tri = triangulate(s.mesh);
    auto alpha = labeling_from(s);
    auto X = cross_ratios_of(CirclePattern::from_complex(tri.disk, s.z));
    for (double t : {-0.2, -0.05, 0.0, 0.1, 0.2}) {
        for (cplx tt : {cplx(t, 0), cplx(0, t), cplx(t, t) * 0.7}) {
            auto Xt = family_Xt(X, tri, alpha, tt);
            auto rep = verify_closure(Xt);
            CHECK(rep.product <= 1e-10);
            CHECK(rep.sum <= 1e-10);
        }
        CHECK(angle_match(X, family_Xt(X, tri, alpha, t)) <= 1e-12);
        CHECK(shear_match(family_Xt(X, tri, alpha, cplx(0, t)), family_Xt(X, tri, alpha, cplx(0, -t))) <= 1e-12);
    }
    auto X0 = family_Xt(X, tri, alpha, 0.0);
    for (size_t e = 0; e < X.X.size(); ++e) CHECK(X0.X[e] == X.X[e]);
    CHECK(shear_match(X, family_Xt(X, tri, alpha, 0.1)) > 0.0);
    CHECK_THROWS_AS(family_Xt(X, tri, alpha, 0.95), Error);
}

TEST_CASE("family on a rectangular grid") {
    auto s = rect_grid_toda(5, 4, 1.0, 0.6, 0.8);
    CHECK(s.residuals.vertex_sum == 0.0);
    CHECK(s.residuals.weighted_sum < 1e-15);
    auto tri = triangulate(s.mesh, true);
    auto X = cross_ratios_of(CirclePattern::from_complex(tri.disk, s.z));
    auto Xt = family_Xt(X, tri, labeling_from(s), cplx(0.05, 0.1));
    CHECK(verify_closure(Xt).ok(1e-10));
}

TEST_CASE("tangent of the family") {
    CHECK(tangent_check(square_grid_toda(5, 5)) < 1e-8);
    CHECK(tangent_check(square_grid_toda(5, 5), true) < 1e-8);
    CHECK(tangent_check(rect_grid_toda(4, 5, 1.3, 0.7, 0.5)) < 1e-8);
}

TEST_CASE("triangulation independence") {
    auto s = square_grid_toda(6, 6);
    for (cplx t : {cplx(0.1, 0), cplx(0, 0.1), cplx(-0.2, 0), cplx(0.05, -0.15)})
        CHECK(triangulation_independence(s, t) <= 1e-9);
}

TEST_CASE("imaginary family members stay Delaunay for small t") {
    auto s = square_grid_toda(6, 6);
    auto p = toda_pair(s, cplx(0, 0.05), cplx(0, -0.05));
    CHECK(cross_ratios_of(p.z).all_delaunay());
    CHECK(cross_ratios_of(p.zt).all_delaunay());
    CHECK(shear_match(cross_ratios_of(p.z), cross_ratios_of(p.zt)) < 1e-9);
}
