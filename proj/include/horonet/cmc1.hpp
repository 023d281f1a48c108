#pragma once

#include <optional>
#include <vector>

#include "horonet/osculating.hpp"

namespace horonet {

// Per interior edge, measured in the chart of the edge's first vertex.
struct EdgeMeasure {
    double theta = 0;        // rotation angle, positive = clockwise in the chart
    double alpha = 0;        // dihedral angle, sign of theta
    double ell = 0;          // arc length
    double diameter = 0;     // neighbour horosphere diameter in the chart
    double theta_other = 0;  // same rotation read in the chart of the second vertex
    bool tie = false;        // both arcs have the same length
};

struct HorosphericalNet {
    DiskPtr disk;
    std::vector<Hermitian> f;             // per face
    std::vector<SpherePoint> gauss;       // per vertex
    std::vector<Horosphere> horospheres;  // per vertex
    std::optional<MoebiusFrame> frame;

    bool measured = false;
    bool degenerate = false;
    std::vector<EdgeMeasure> edge;  // per edge id
    std::vector<double> area;       // per vertex; zero for boundary vertices
    std::vector<double> H;          // per vertex
    double incidence_residual = 0;  // max |-<f,U> - 1|
    double horosphere_spread = 0;   // horosphere disagreement across faces at construction

    double ell_tan(int e) const;  // ell * tan(alpha / 2)
};

HorosphericalNet build_cmc1(const CirclePattern& z, const CirclePattern& zt);
// Net from bare points and Gauss map; horospheres are fitted through the incident points.
HorosphericalNet net_from_points(const DiskPtr& disk, std::vector<Hermitian> f, std::vector<SpherePoint> gauss);
void measure_net(HorosphericalNet& net);

struct CurvatureReport {
    std::vector<int> vertex;
    std::vector<double> area, H, ratio;
    double max_deviation = 0;  // max |ratio - 1|
};
CurvatureReport integrated_mean_curvature(const HorosphericalNet& net);

// Max |sum_j theta_ij| and |sum_j ell tan(alpha/2)| over interior vertices.
struct BalanceReport {
    double theta = 0, ell_tan = 0;
};
BalanceReport vertex_balance(const HorosphericalNet& net);

// Condition 0 <= ell tan(alpha/2) + Arg Xt < pi on every interior edge; returns the worst violation (0 if none).
double edge_condition_violation(const HorosphericalNet& net);

HorosphericalNet parallel_net(const HorosphericalNet& net, double t);

struct SteinerRow {
    int vertex;
    double derivative;  // extrapolated d/dt area
    double expected;    // -2 H
    double relative_error;
};
std::vector<SteinerRow> steiner_check(const HorosphericalNet& net, double t0 = 1e-2);

// Geodesic normal offset of a point on a horosphere (towards the tangency point).
Hermitian offset_on_horosphere(const Hermitian& x, const Horosphere& h, double t);
// Area of the straight-edged polygon spanned by points on the horosphere, in its normalized chart.
double horosphere_polygon_area(const Horosphere& h, const std::vector<Hermitian>& pts);
// Chart normalization sending the tangency point to infinity and the horosphere to height 1.
MoebiusMap horosphere_chart(const Horosphere& h);

HorosphericalNet dual_surface(const HorosphericalNet& net);

struct ExtractedPair {
    CirclePattern z, zt;
    MoebiusFrame frame;
    double eta_residual = 0;       // max |prod eta - I|
    double transport_residual = 0; // max |eta f eta* - f|
    double fit_residual = 0;       // max |A A* - f|
};
ExtractedPair extract_patterns(const HorosphericalNet& net, double tol = 1e-8);

// Integrates per-edge transports (A_right = eta A_left for the edge v0 -> v1) and fixes A A* = f.
ExtractedPair integrate_transports(const DiskPtr& disk, const std::vector<Hermitian>& f,
                                   const std::vector<SpherePoint>& gauss, const std::vector<Mat2>& eta, double tol);

// Max over face pairs of the difference of hyperbolic distances.
double isometry_residual(const std::vector<Hermitian>& a, const std::vector<Hermitian>& b);

} // namespace horonet
