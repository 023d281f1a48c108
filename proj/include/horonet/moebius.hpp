#pragma once

#include <array>
#include <complex>

namespace horonet {

using cplx = std::complex<double>;

// Point of the Riemann sphere as a homogeneous pair, scaled so max(|p|,|q|) = 1.
struct SpherePoint {
    cplx p{0.0}, q{1.0};

    SpherePoint() = default;
    SpherePoint(cplx p_, cplx q_);
    static SpherePoint finite(cplx z) { return SpherePoint(z, 1.0); }
    static SpherePoint infinity() { return SpherePoint(1.0, 0.0); }

    bool is_infinity() const { return q == cplx(0.0); }
    cplx affine() const { return p / q; }
};

// [a,b] = p_a q_b - p_b q_a; equals q_a q_b (a - b) for finite points.
inline cplx bracket(const SpherePoint& a, const SpherePoint& b) { return a.p * b.q - b.p * a.q; }

// Spherical chordal distance, in [0,1].
double chordal_distance(const SpherePoint& a, const SpherePoint& b);
bool same_point(const SpherePoint& a, const SpherePoint& b, double tol = 1e-12);

struct Mat2 {
    cplx a{1.0}, b{0.0}, c{0.0}, d{1.0};

    static Mat2 identity() { return {}; }
    cplx det() const { return a * d - b * c; }
    cplx trace() const { return a + d; }
    // Inverse assuming det = 1.
    Mat2 inv() const { return {d, -b, -c, a}; }
    Mat2 inverse() const;
    Mat2 adjoint() const { return {std::conj(a), std::conj(c), std::conj(b), std::conj(d)}; }
    double norm() const;
    Mat2 operator-() const { return {-a, -b, -c, -d}; }
};

Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator+(const Mat2& x, const Mat2& y);
Mat2 operator-(const Mat2& x, const Mat2& y);
Mat2 operator*(cplx s, const Mat2& x);
double distance(const Mat2& x, const Mat2& y);
// min(|x - y|, |x + y|): distance in PSL(2,C) representatives.
double projective_distance(const Mat2& x, const Mat2& y);

using MoebiusMap = Mat2;

// Divide by a square root of det; then apply the canonical sign rule.
MoebiusMap normalize_det(const Mat2& m);
// First entry (row-major) that is not negligible gets argument in (-pi/2, pi/2].
MoebiusMap canonical_sign(const MoebiusMap& m);

SpherePoint apply(const MoebiusMap& m, const SpherePoint& z);
cplx apply(const MoebiusMap& m, cplx z);

MoebiusMap mobius_from_triples(const SpherePoint& z1, const SpherePoint& z2, const SpherePoint& z3,
                               const SpherePoint& w1, const SpherePoint& w2, const SpherePoint& w3);

// -[(z_i-z_k)(z_j-z_l)] / [(z_i-z_l)(z_j-z_k)] via homogeneous brackets.
cplx edge_cross_ratio(const SpherePoint& zk, const SpherePoint& zi, const SpherePoint& zl, const SpherePoint& zj);

// Principal argument in (-pi, pi]; maps -pi to pi.
double arg_pi(cplx x);

// Unitary map sending z to infinity.
MoebiusMap send_to_infinity(const SpherePoint& z);
// Map sending a to 0 and b to infinity.
MoebiusMap send_pair(const SpherePoint& a, const SpherePoint& b);

// 2x2 Hermitian matrix [[a, b], [conj(b), d]].
struct Hermitian {
    double a{1.0}, d{1.0};
    cplx b{0.0};

    enum class Kind { Hyperboloid, LightCone, General };

    static Hermitian identity() { return {}; }
    static Hermitian from_coords(double x0, double x1, double x2, double x3);
    double x0() const { return 0.5 * (a + d); }
    double x1() const { return b.real(); }
    double x2() const { return b.imag(); }
    double x3() const { return 0.5 * (a - d); }
    double det() const { return a * d - std::norm(b); }
    double trace() const { return a + d; }
    Kind kind(double tol = 1e-10) const;
    Mat2 matrix() const { return {a, b, std::conj(b), d}; }
    static Hermitian from_matrix(const Mat2& m);
};

Hermitian operator*(double s, const Hermitian& h);
Hermitian operator+(const Hermitian& x, const Hermitian& y);
Hermitian operator-(const Hermitian& x, const Hermitian& y);
double frobenius(const Hermitian& h);

// <U,V> = -1/2 trace(U cof V).
double inner(const Hermitian& u, const Hermitian& v);
// A V A*.
Hermitian act_on_hermitian(const Mat2& A, const Hermitian& v);
// A A*.
Hermitian lift_point(const Mat2& A);
// Positive square root of a positive definite Hermitian matrix.
Mat2 hermitian_sqrt(const Hermitian& h);

struct Horosphere {
    Hermitian U;
    SpherePoint z;
    double r{1.0};
};

Horosphere horosphere(const SpherePoint& z, double r);
// Horosphere with a given light-cone matrix; tangency and size read off.
Horosphere horosphere_from_lightcone(const Hermitian& U);
Horosphere act_on_horosphere(const Mat2& A, const Horosphere& h);

struct Incidence {
    bool on;
    double residual;
};
// Tests -<x,U> = 1.
Incidence on_horosphere(const Hermitian& x, const Horosphere& h, double tol = 1e-9);

void require_hyperboloid(const Hermitian& x, double tol = 1e-10);
double hyperbolic_distance(const Hermitian& x, const Hermitian& y);

std::array<double, 3> to_poincare_ball(const Hermitian& x);
Hermitian from_poincare_ball(const std::array<double, 3>& y);

// Upper half-space chart: x = (1/h) [[|w|^2 + h^2, w], [conj w, 1]].
struct HalfSpacePoint {
    cplx w;
    double h;
};
HalfSpacePoint to_half_space(const Hermitian& x);
Hermitian from_half_space(const HalfSpacePoint& p);

} // namespace horonet
