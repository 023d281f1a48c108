#pragma once

#include <optional>
#include <vector>

#include "horonet/cmc1.hpp"

namespace horonet {

struct EquidistantNet {
    DiskPtr disk;
    std::vector<Hermitian> f;        // per face
    std::vector<SpherePoint> gauss;  // per vertex
    std::optional<MoebiusFrame> frame;
    bool degenerate = false;

    // Equidistant {x : <x,P> = c} through f and the face's three Gauss points; <P,P> = 1.
    std::vector<Hermitian> P;
    std::vector<double> c;
    std::vector<double> lambda;  // per edge id, see edge_scaling
};

struct EdgeScaling {
    double lambda;    // sqrt of the height ratio in the chart z~_v0 -> 0, z~_v1 -> infinity
    double rotation;  // chart argument of f_right / f_left; zero for a pure scaling
    double reality;   // |Im| of the complex eigenvalue implied by the two points
};
// f_left, f_right are the dual vertices left and right of v0 -> v1.
EdgeScaling edge_scaling(const Hermitian& f_left, const Hermitian& f_right, const SpherePoint& g0, const SpherePoint& g1);

EquidistantNet build_equidistant(const CirclePattern& z, const CirclePattern& zt);
// Fits the equidistants of a bare net; no checks.
EquidistantNet equidistant_from_points(const DiskPtr& disk, std::vector<Hermitian> f, std::vector<SpherePoint> gauss);

struct EquidistantReport {
    double reality = 0;       // max over interior edges
    double cosphericity = 0;  // max |<f_nb, P> - c| over faces and their dual neighbours
    std::vector<double> per_face;
};
EquidistantReport verify_equidistant(const EquidistantNet& net);

ExtractedPair extract_equidistant_patterns(const EquidistantNet& net, double tol = 1e-8);

} // namespace horonet
