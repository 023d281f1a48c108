#include "horonet/moebius.hpp"

#include <algorithm>
#include <cmath>

#include "horonet/errors.hpp"

namespace horonet {

SpherePoint::SpherePoint(cplx p_, cplx q_) {
    double s = std::max(std::abs(p_), std::abs(q_));
    if (s == 0.0) fail(ErrorCode::BadInput, "sphere point (0,0)");
    // power-of-two scaling keeps p/q bit-exact
    int e = 0;
    std::frexp(s, &e);
    p = std::ldexp(1.0, -e) * p_;
    q = std::ldexp(1.0, -e) * q_;
    if (std::abs(q) < 1e-300) q = 0.0;
}

double chordal_distance(const SpherePoint& a, const SpherePoint& b) {
    double na = std::hypot(std::abs(a.p), std::abs(a.q));
    double nb = std::hypot(std::abs(b.p), std::abs(b.q));
    return std::abs(bracket(a, b)) / (na * nb);
}

bool same_point(const SpherePoint& a, const SpherePoint& b, double tol) {
    return chordal_distance(a, b) <= tol;
}

Mat2 Mat2::inverse() const {
    cplx dt = det();
    return {d / dt, -b / dt, -c / dt, a / dt};
}

double Mat2::norm() const {
    return std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
Mat2 operator+(const Mat2& x, const Mat2& y) { return {x.a + y.a, x.b + y.b, x.c + y.c, x.d + y.d}; }
Mat2 operator-(const Mat2& x, const Mat2& y) { return {x.a - y.a, x.b - y.b, x.c - y.c, x.d - y.d}; }
Mat2 operator*(cplx s, const Mat2& x) { return {s * x.a, s * x.b, s * x.c, s * x.d}; }
double distance(const Mat2& x, const Mat2& y) { return (x - y).norm(); }
double projective_distance(const Mat2& x, const Mat2& y) {
    return std::min((x - y).norm(), (x + y).norm());
}

MoebiusMap canonical_sign(const MoebiusMap& m) {
    const cplx e[4] = {m.a, m.b, m.c, m.d};
    double big = 0.0;
    for (auto v : e) big = std::max(big, std::abs(v));
    for (auto v : e) {
        if (std::abs(v) > 1e-12 * big) {
            double t = std::arg(v);
            if (t > M_PI / 2 || t <= -M_PI / 2) return -m;
            return m;
        }
    }
    return m;
}

MoebiusMap normalize_det(const Mat2& m) {
    cplx s = std::sqrt(m.det());
    if (std::abs(s) == 0.0) fail(ErrorCode::DegenerateTriple, "singular matrix");
    return canonical_sign((1.0 / s) * m);
}

SpherePoint apply(const MoebiusMap& m, const SpherePoint& z) {
    return SpherePoint(m.a * z.p + m.b * z.q, m.c * z.p + m.d * z.q);
}

cplx apply(const MoebiusMap& m, cplx z) { return (m.a * z + m.b) / (m.c * z + m.d); }

namespace {

// Sends z1 -> 0, z2 -> 1, z3 -> infinity (not unimodular).
Mat2 to_standard(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3) {
    cplx c1 = bracket(z2, z3), c3 = bracket(z2, z1);
    return {c1 * z1.q, -c1 * z1.p, c3 * z3.q, -c3 * z3.p};
}

void require_distinct(const SpherePoint& a, const SpherePoint& b, const SpherePoint& c, ErrorCode code) {
    const double tol = 1e-13;
    if (chordal_distance(a, b) < tol || chordal_distance(b, c) < tol || chordal_distance(a, c) < tol)
        fail(code, "points not pairwise distinct");
}

} // namespace

MoebiusMap mobius_from_triples(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3,
                               const SpherePoint& w1, const SpherePoint& w2, const SpherePoint& w3) {
    require_distinct(z1, z2, z3, ErrorCode::DegenerateTriple);
    require_distinct(w1, w2, w3, ErrorCode::DegenerateTriple);
    Mat2 sz = to_standard(z1, z2, z3);
    Mat2 sw = to_standard(w1, w2, w3);
    return normalize_det(sw.inverse() * sz);
}

cplx edge_cross_ratio(const SpherePoint& zk, const SpherePoint& zi, const SpherePoint& zl, const SpherePoint& zj) {
    cplx ik = bracket(zi, zk), jl = bracket(zj, zl), il = bracket(zi, zl), jk = bracket(zj, zk);
    const double tol = 1e-14;
    if (std::abs(ik) < tol || std::abs(jl) < tol || std::abs(il) < tol || std::abs(jk) < tol ||
        std::abs(bracket(zi, zj)) < tol || std::abs(bracket(zk, zl)) < tol)
        fail(ErrorCode::CoincidentPoints, "cross ratio of coincident points");
    return -(ik * jl) / (il * jk);
}

double arg_pi(cplx x) {
    double t = std::arg(x);
    return t <= -M_PI ? M_PI : t;
}

MoebiusMap send_to_infinity(const SpherePoint& z) {
    double n = std::sqrt(std::norm(z.p) + std::norm(z.q));
    return {std::conj(z.p) / n, std::conj(z.q) / n, -z.q / n, z.p / n};
}

MoebiusMap send_pair(const SpherePoint& a, const SpherePoint& b) {
    Mat2 m{a.q, -a.p, b.q, -b.p};
    cplx s = std::sqrt(m.det());
    if (std::abs(s) < 1e-150) fail(ErrorCode::CoincidentPoints, "send_pair of equal points");
    return (1.0 / s) * m;
}

// ---- Hermitian model ----

Hermitian Hermitian::from_coords(double x0, double x1, double x2, double x3) {
    return {x0 + x3, x0 - x3, cplx(x1, x2)};
}

Hermitian::Kind Hermitian::kind(double tol) const {
    double t = trace();
    if (t <= 0.0) return Kind::General;
    if (std::abs(det() - 1.0) <= tol) return Kind::Hyperboloid;
    if (std::abs(det()) <= tol * t * t) return Kind::LightCone;
    return Kind::General;
}

Hermitian Hermitian::from_matrix(const Mat2& m) {
    return {m.a.real(), m.d.real(), 0.5 * (m.b + std::conj(m.c))};
}

Hermitian operator*(double s, const Hermitian& h) { return {s * h.a, s * h.d, s * h.b}; }
Hermitian operator+(const Hermitian& x, const Hermitian& y) { return {x.a + y.a, x.d + y.d, x.b + y.b}; }
Hermitian operator-(const Hermitian& x, const Hermitian& y) { return {x.a - y.a, x.d - y.d, x.b - y.b}; }
double frobenius(const Hermitian& h) { return std::sqrt(h.a * h.a + h.d * h.d + 2.0 * std::norm(h.b)); }

double inner(const Hermitian& u, const Hermitian& v) {
    double tr = u.a * v.d + u.d * v.a - 2.0 * (u.b * std::conj(v.b)).real();
    return -0.5 * tr;
}

Hermitian act_on_hermitian(const Mat2& A, const Hermitian& v) {
    return Hermitian::from_matrix(A * v.matrix() * A.adjoint());
}

Hermitian lift_point(const Mat2& A) {
    return {std::norm(A.a) + std::norm(A.b), std::norm(A.c) + std::norm(A.d), A.a * std::conj(A.c) + A.b * std::conj(A.d)};
}

Mat2 hermitian_sqrt(const Hermitian& h) {
    double dt = h.det();
    if (dt <= 0.0 || h.trace() <= 0.0) fail(ErrorCode::NotInHyperboloid, "sqrt of non-positive matrix");
    double s = std::sqrt(dt);
    double k = 1.0 / std::sqrt(h.trace() + 2.0 * s);
    return {k * (h.a + s), k * h.b, k * std::conj(h.b), k * (h.d + s)};
}

Horosphere horosphere(const SpherePoint& z, double r) {
    if (!(r > 0.0)) fail(ErrorCode::NonpositiveRadius, "horosphere radius must be positive");
    double n = std::norm(z.p) + std::norm(z.q);
    double k = 2.0 * r / n;
    Hermitian U{k * std::norm(z.p), k * std::norm(z.q), k * z.p * std::conj(z.q)};
    return {U, z, r};
}

Horosphere horosphere_from_lightcone(const Hermitian& U) {
    SpherePoint z = U.a >= U.d ? SpherePoint(U.a, std::conj(U.b)) : SpherePoint(U.b, U.d);
    return {U, z, 0.5 * U.trace()};
}

Horosphere act_on_horosphere(const Mat2& A, const Horosphere& h) {
    return horosphere_from_lightcone(act_on_hermitian(A, h.U));
}

void require_hyperboloid(const Hermitian& x, double tol) {
    if (x.trace() <= 0.0 || std::abs(x.det() - 1.0) > tol * std::max(1.0, x.trace() * x.trace()))
        fail(ErrorCode::NotInHyperboloid, "point not on the hyperboloid");
}

Incidence on_horosphere(const Hermitian& x, const Horosphere& h, double tol) {
    require_hyperboloid(x);
    double res = std::abs(-inner(x, h.U) - 1.0);
    return {res <= tol, res};
}

double hyperbolic_distance(const Hermitian& x, const Hermitian& y) {
    require_hyperboloid(x);
    require_hyperboloid(y);
    // <x-y, x-y> = 4 sinh^2(d/2); stable for nearby points.
    Hermitian diff = x - y;
    double s = -diff.det();
    if (s < 0.0) {
        if (s < -1e-10 * std::max(1.0, frobenius(diff))) fail(ErrorCode::NotInHyperboloid, "timelike difference");
        s = 0.0;
    }
    return 2.0 * std::asinh(0.5 * std::sqrt(s));
}

std::array<double, 3> to_poincare_ball(const Hermitian& x) {
    require_hyperboloid(x);
    double k = 1.0 / (1.0 + x.x0());
    return {k * x.x1(), k * x.x2(), k * x.x3()};
}

Hermitian from_poincare_ball(const std::array<double, 3>& y) {
    double r2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2];
    if (r2 >= 1.0) fail(ErrorCode::NotInHyperboloid, "point outside the unit ball");
    double k = 2.0 / (1.0 - r2);
    return Hermitian::from_coords((1.0 + r2) / (1.0 - r2), k * y[0], k * y[1], k * y[2]);
}

HalfSpacePoint to_half_space(const Hermitian& x) {
    if (!(x.d > 0.0)) fail(ErrorCode::NotInHyperboloid, "no half-space chart");
    return {x.b / x.d, 1.0 / x.d};
}

Hermitian from_half_space(const HalfSpacePoint& p) {
    return {(std::norm(p.w) + p.h * p.h) / p.h, 1.0 / p.h, p.w / p.h};
}

} // namespace horonet
