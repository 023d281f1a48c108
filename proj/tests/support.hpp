#pragma once

#include <random>

#include "horonet/cmc1.hpp"
#include "horonet/mesh.hpp"
#include "horonet/pattern.hpp"

namespace testing {

using namespace horonet;

inline cplx rand_c(std::mt19937_64& g, double s = 1.0) {
    std::normal_distribution<double> n(0.0, s);
    return {n(g), n(g)};
}

inline MoebiusMap rand_moebius(std::mt19937_64& g, double s = 0.5) {
    Mat2 m{1.0 + rand_c(g, s), rand_c(g, s), rand_c(g, s), 1.0 + rand_c(g, s)};
    return normalize_det(m);
}

inline Hermitian rand_hyperboloid(std::mt19937_64& g, double s = 0.7) { return lift_point(rand_moebius(g, s)); }

// Small equilateral patch with a few interior vertices.
inline LatticePatch small_lattice(double w = 3.2, double h = 2.7) {
    return lattice_subcomplex(LatticeSpec::equilateral(1.0, 0, w, 0, h));
}

inline CirclePattern lattice_pattern(const LatticePatch& p) {
    return CirclePattern::from_complex(share(p.disk), p.position);
}

// Randomly jiggled copy of a lattice pattern that stays Delaunay.
inline CirclePattern jiggle(const LatticePatch& p, std::mt19937_64& g, double amp) {
    auto disk = share(p.disk);
    std::uniform_real_distribution<double> u(-amp, amp);
    for (int tries = 0; tries < 100; ++tries) {
        std::vector<cplx> q = p.position;
        for (auto& z : q) z += cplx(u(g), u(g));
        CirclePattern c = CirclePattern::from_complex(disk, q);
        if (cross_ratios_of(c).all_delaunay(0.0)) return c;
    }
    throw std::runtime_error("could not jiggle");
}

} // namespace testing
