#pragma once

#include <array>
#include <vector>

#include "horonet/pattern.hpp"

namespace horonet {

// Traceless [[alpha, beta], [gamma, -alpha]] per face.
struct MoebiusVectorFrame {
    DiskPtr disk;
    std::vector<Mat2> a;
};

// The vector field (-gamma z^2 + 2 alpha z + beta) d/dz of a traceless matrix.
cplx vector_field(const Mat2& a, cplx z);

// Per face, the Moebius vector field through the three vertex velocities.
MoebiusVectorFrame osculating_vector_field(const CirclePattern& z, const std::vector<cplx>& zdot);

// Traceless matrices to C^3, null on rank-one elements.
std::array<cplx, 3> to_c3(const Mat2& a);

using Point3 = std::array<double, 3>;
std::vector<Point3> minimal_surface(const MoebiusVectorFrame& frame);

// Max |field difference| of adjacent faces at the shared endpoints.
double edge_compatibility(const MoebiusVectorFrame& frame, const CirclePattern& z);

// Max distance of the points from their first point.
double point_spread(const std::vector<Point3>& pts);

// 2-jet match of the field h d/dz at z.
Mat2 smooth_vector_osculating(cplx h, cplx h1, cplx h2, cplx z);

} // namespace horonet
