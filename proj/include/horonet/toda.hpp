#pragma once

#include <memory>
#include <vector>

#include "horonet/cmc1.hpp"

namespace horonet {

// Oriented polygonal disk; faces counterclockwise, possibly not triangles.
struct CellComplex {
    int num_vertices = 0;
    std::vector<std::vector<int>> faces;
    std::vector<std::array<int, 2>> edges;       // v0 < v1
    std::vector<std::array<int, 2>> edge_faces;  // face left of v0->v1, face left of v1->v0; -1 on the boundary
    std::vector<bool> interior;                  // per vertex

    int edge_index(int i, int j) const;
    int left_face(int i, int j) const;
};
using CellPtr = std::shared_ptr<const CellComplex>;

CellComplex make_cell_complex(std::vector<std::vector<int>> faces);

struct TodaResiduals {
    double vertex_sum = 0, face_sum = 0, weighted_sum = 0;
    std::vector<double> per_vertex;  // |sum_j q_ij| at interior vertices, 0 elsewhere
};

struct TodaSolution {
    CellPtr mesh;
    std::vector<cplx> z;  // realization of the vertices
    std::vector<cplx> q;  // per edge id
    TodaResiduals residuals;
};

// The three equations; vertex equations at interior vertices only.
TodaResiduals verify_toda(const CellComplex& mesh, const std::vector<cplx>& z, const std::vector<cplx>& q);

// n x m vertices at integer points, q = +1 on horizontal and -1 on vertical edges.
TodaSolution square_grid_toda(int n, int m);
// Same combinatorics with spacing hx, hy; q = +s horizontal, -s vertical.
TodaSolution rect_grid_toda(int n, int m, double hx, double hy, double s);

// Values on the vertex-face incidences of the double graph.
struct Labeling {
    CellPtr mesh;
    std::vector<std::vector<cplx>> alpha;  // alpha[f][s] at corner s of face f
    double residual = 0;                   // worst mismatch against the edge constraints
    int components = 0;

    cplx at(int v, int f) const;
    // alpha at (i, face left of i->j) and (i, face right of i->j)
    cplx plus(int i, int j) const;
    cplx minus(int i, int j) const;
    double max_abs() const;
    bool real(double tol = 1e-14) const;
};

Labeling labeling_from(const TodaSolution& sol, double tol = 1e-10);

// Triangulation of a cell complex by fans; cell edges keep their identity.
struct TodaTriangulation {
    CellPtr mesh;
    DiskPtr disk;
    std::vector<int> cell_edge;  // per triangle edge id: cell edge id, or -1 for a diagonal
    std::vector<int> cell_face;  // per triangle
};

// alternate = false: fan from the smallest vertex index of each cell; true: fan from the next corner.
TodaTriangulation triangulate(const CellPtr& mesh, bool alternate = false);

CrossRatioSystem family_Xt(const CrossRatioSystem& X, const TodaTriangulation& tri, const Labeling& alpha, cplx t);

// Develops X_t with the seed face placed where the base pattern has it.
CirclePattern develop_family(const CirclePattern& base, const TodaTriangulation& tri, const Labeling& alpha, cplx t);

// Pair (z_{it}, z_{-it}) and its net.
struct TodaPair {
    TodaTriangulation tri;
    Labeling alpha;
    CirclePattern z, zt;
};
TodaPair toda_pair(const TodaSolution& sol, cplx t_plus, cplx t_minus, bool alternate = false);
HorosphericalNet cmc1_from_toda(const TodaSolution& sol, double t, bool alternate = false);

// Max deviation between the Richardson derivative of log X_t at 0 and the labeling-induced q.
double tangent_check(const TodaSolution& sol, bool alternate = false);

// d/dt of the developed family at t = 0 (Richardson central differences); the seed face stays fixed.
std::vector<cplx> family_velocity(const TodaSolution& sol, bool alternate = false);

// Max distance between cell-vertex positions developed on the two fan choices, after normalizing three vertices.
double triangulation_independence(const TodaSolution& sol, cplx t);

} // namespace horonet
