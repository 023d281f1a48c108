#pragma once

#include <memory>
#include <vector>

#include "horonet/mesh.hpp"
#include "horonet/moebius.hpp"

namespace horonet {

using DiskPtr = std::shared_ptr<const TriangulatedDisk>;

inline DiskPtr share(TriangulatedDisk d) { return std::make_shared<const TriangulatedDisk>(std::move(d)); }

struct CirclePattern {
    DiskPtr disk;
    std::vector<SpherePoint> z;

    static CirclePattern from_complex(DiskPtr disk, const std::vector<cplx>& pts);
    // Throws DegenerateFace if a face has coincident vertices.
    void validate() const;
    CirclePattern mapped(const MoebiusMap& m) const;
};

// X per edge id; entries of boundary edges are unused (zero).
struct CrossRatioSystem {
    DiskPtr disk;
    std::vector<cplx> X;

    cplx at(int i, int j) const { return X[disk->edge_index(i, j)]; }
    double arg(int e) const { return arg_pi(X[e]); }
    bool delaunay(int e, double tol = 1e-10) const {
        double a = arg(e);
        return a >= -tol && a < M_PI - tol;
    }
    bool all_delaunay(double tol = 1e-10) const;
};

struct ClosureReport {
    double product = 0, sum = 0, branching = 0;
    std::vector<int> non_delaunay;  // edge ids
    bool ok(double tol = 1e-10) const { return product <= tol && sum <= tol && branching <= tol; }
};

CrossRatioSystem cross_ratios_of(const CirclePattern& pattern);
ClosureReport verify_closure(const CrossRatioSystem& X);

// Places the seed face, then crosses dual edges breadth first.
CirclePattern develop(const DiskPtr& disk, const CrossRatioSystem& X, int seed_face,
                      const std::array<SpherePoint, 3>& seed, double closure_tol = 1e-6);
// Seed taken from an existing pattern's face.
CirclePattern develop_like(const CrossRatioSystem& X, const CirclePattern& reference, int seed_face = 0);

double shear_match(const CrossRatioSystem& X, const CrossRatioSystem& Y);
double angle_match(const CrossRatioSystem& X, const CrossRatioSystem& Y);

// Max chordal distance between corresponding vertices.
double pattern_distance(const CirclePattern& a, const CirclePattern& b);

} // namespace horonet
