#pragma once

#include <functional>
#include <vector>

#include "horonet/pattern.hpp"

namespace horonet {

struct MoebiusFrame {
    DiskPtr disk;
    std::vector<SpherePoint> source, target;  // z and z~
    std::vector<MoebiusMap> A;                // per face, z -> z~
    bool coherent = false;
    // Per edge id: eigenvalue on (z_v0, 1) of A_right^-1 A_left for the edge v0 -> v1 (v0 < v1).
    std::vector<cplx> lambda;
};

MoebiusFrame osculating_frame(const CirclePattern& z, const CirclePattern& zt);

struct Transition {
    MoebiusMap T;  // A_{jil}^-1 A_{ijk}
    cplx lambda;   // eigenvalue on (z_i, 1)
};
Transition transition(const MoebiusFrame& frame, int i, int j);

// Matrix with eigenvector a (eigenvalue lam) and b (eigenvalue 1/lam).
Mat2 eigen_matrix(const SpherePoint& a, const SpherePoint& b, cplx lam);
// Transition in source coordinates from the endpoints and lambda.
Mat2 transition_closed_form(const SpherePoint& zi, const SpherePoint& zj, cplx lam);
// A_{jil} A_{ijk}^-1 in target coordinates.
Mat2 inverse_transition_closed_form(const SpherePoint& zti, const SpherePoint& ztj, cplx lam);

// sqrt(X / Xt) on the branch with argument in (-pi/2, pi/2].
cplx lambda_from_cross_ratios(cplx X, cplx Xt);

// Product of closed-form transitions around an interior vertex (clockwise), with the branch rule.
Mat2 vertex_monodromy(const std::vector<SpherePoint>& z, const CrossRatioSystem& X, const CrossRatioSystem& Xt, int v);

MoebiusFrame coherent_lift(const MoebiusFrame& frame, const CrossRatioSystem& X, const CrossRatioSystem& Xt);

MoebiusFrame compose_frames(const MoebiusFrame& first, const MoebiusFrame& second);
MoebiusFrame inverse_frame(const MoebiusFrame& frame);

// ---- smooth reference ----

struct Holo {
    std::function<cplx(cplx)> h, d1, d2, d3;

    static Holo identity();
    static Holo exponential();
    static Holo power(int n);
    static Holo moebius(cplx a, cplx b, cplx c, cplx d);
};

// outer o inner with chain-rule derivatives.
Holo compose(const Holo& outer, const Holo& inner);

cplx schwarzian(const Holo& h, cplx z);

// Square root of h'^3 continued along successive calls.
struct BranchState {
    bool started = false;
    cplx root{1.0};
};

MoebiusMap smooth_osculating(const Holo& h, cplx z, BranchState* branch = nullptr);
MoebiusMap smooth_pair_frame(const Holo& g, const Holo& gt, cplx z, BranchState* bg = nullptr, BranchState* bgt = nullptr);
// -(S/2) [[z, -z^2], [1, -z]]
Mat2 maurer_cartan(cplx S, cplx z);

} // namespace horonet
