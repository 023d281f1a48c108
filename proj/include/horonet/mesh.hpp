#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

namespace horonet {

using Face = std::array<int, 3>;

// Unordered edge v0 < v1. `left` holds the directed edge v0->v1, `right` holds v1->v0; -1 when absent.
struct Edge {
    int v0, v1;
    int left = -1, right = -1;
    bool interior() const { return left >= 0 && right >= 0; }
};

class TriangulatedDisk {
public:
    int num_vertices() const { return static_cast<int>(incident_edges_.size()); }
    int num_faces() const { return static_cast<int>(faces_.size()); }
    const std::vector<Face>& faces() const { return faces_; }
    const Face& face(int f) const { return faces_[f]; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& interior_edges() const { return interior_edges_; }
    const std::vector<int>& interior_vertices() const { return interior_vertices_; }

    int edge_index(int i, int j) const;  // -1 if {i,j} is not an edge
    int left_face(int i, int j) const;   // face containing i->j, or -1
    int right_face(int i, int j) const;  // face containing j->i, or -1
    int third_vertex(int face, int i, int j) const;
    bool is_interior(int v) const { return interior_[v]; }
    // Clockwise neighbours; a closed cycle for interior vertices, an open path otherwise.
    const std::vector<int>& ring(int v) const { return ring_[v]; }
    std::array<int, 3> face_edges(int f) const;
    // Faces across interior edges.
    std::vector<int> dual_neighbors(int f) const;

    friend TriangulatedDisk build_disk(std::vector<Face> faces);

private:
    std::vector<Face> faces_;
    std::vector<Edge> edges_;
    std::vector<int> interior_edges_;
    std::vector<int> interior_vertices_;
    std::vector<bool> interior_;
    std::vector<std::vector<int>> ring_;
    std::vector<std::vector<std::pair<int, int>>> incident_edges_;  // per vertex: (other vertex, edge id)
};

TriangulatedDisk build_disk(std::vector<Face> faces);

std::vector<int> interior_star(const TriangulatedDisk& disk, int v);

// Triangular lattice with acute angles alpha, beta, gamma and scale eps.
struct LatticeSpec {
    double alpha = M_PI / 3, beta = M_PI / 3, gamma = M_PI / 3;
    double eps = 1.0;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
    std::function<bool(std::complex<double>)> region;  // further restricts the rectangle when set

    static LatticeSpec equilateral(double eps, double xmin = 0, double xmax = 1, double ymin = 0, double ymax = 1);
    void validate() const;
    // Directions 1..6 and lengths L_1..L_6 (L_{k+3} = L_k).
    std::complex<double> omega(int k) const;
    double length(int k) const;
    std::array<int, 2> offset(int k) const;  // lattice step along omega_k
    std::complex<double> position(int n, int m) const;
    bool contains(std::complex<double> z) const;
};

struct LatticePatch {
    TriangulatedDisk disk;
    std::vector<std::complex<double>> position;
    std::vector<std::array<int, 2>> index;  // (n, m) per vertex
    LatticeSpec spec;

    int vertex_at(int n, int m) const;  // -1 if absent
    // Neighbour of v along omega_k, or -1.
    int step(int v, int k) const;

private:
    friend LatticePatch lattice_subcomplex(const LatticeSpec& spec);
    std::vector<int> lookup_;
    int n0_ = 0, m0_ = 0, nw_ = 0, mw_ = 0;
};

LatticePatch lattice_subcomplex(const LatticeSpec& spec);

} // namespace horonet
