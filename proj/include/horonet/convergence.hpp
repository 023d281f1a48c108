#pragma once

#include <string>
#include <vector>

#include "horonet/cmc1.hpp"
#include "horonet/mesh.hpp"

namespace horonet {

struct SmoothData {
    std::string name;
    Holo h;
    double xmin = 0, xmax = 1, ymin = 0, ymax = 1;  // the compact set K
};

// "identity", "exp", "square" (z^2 away from 0), "moebius" (1/(z - c)).
SmoothData smooth_case(const std::string& name);
// Samples h' on a grid over K; throws CriticalPoint if it nearly vanishes.
void check_univalent(const SmoothData& data);

LatticeSpec lattice_for(const SmoothData& data, double eps, double alpha = M_PI / 3, double beta = M_PI / 3);

struct LatticePattern {
    LatticePatch patch;
    CirclePattern lattice;  // the lattice itself
    CirclePattern image;    // the realization approximating h
    int newton_iterations = 0;
    double angle_residual = 0;
};

// z~_v = h(v); throws FoldOver if a face flips.
LatticePattern sampled_pattern(const SmoothData& data, const LatticeSpec& spec);

struct SolverOptions {
    double tol = 1e-12;         // max angle-sum defect
    double accept = 1e-10;      // defect accepted when Newton stalls
    int max_iterations = 60;
};
// Vertex scaling with u = log|h'| on the boundary; Delaunay and shear matched with the lattice.
LatticePattern shear_preserving_solve(const SmoothData& data, const LatticeSpec& spec, const SolverOptions& opt = {});

// (1 / (i eps^2)) log(Xt/X) on the edge v -> v + step k, per vertex (NaN where the edge is missing or on the boundary).
std::vector<double> discrete_schwarzian(const LatticePatch& patch, const CrossRatioSystem& X, const CrossRatioSystem& Xt, int k);
// The limit value for direction k = 1, 2, 3.
double schwarzian_limit(const LatticeSpec& spec, cplx S, int k);

// Vertex field with a validity mask; derivatives shrink the mask to interior vertices.
struct LatticeField {
    std::vector<cplx> value;
    std::vector<bool> valid;
};
LatticeField discrete_derivative(const LatticePatch& patch, const LatticeField& field, int k, int order = 1);

struct ConvergenceRow {
    double eps = 0;
    int vertices = 0;
    int newton_iterations = 0;
    double frame_error = 0;       // sup over window faces, sign aligned
    double surface_error = 0;     // sup hyperbolic distance to the smooth surface
    double schwarzian_error = 0;  // sup |s_1 - limit|
    double hopf_error = 0;        // sup |(ell/eps^2) tan(alpha/2) - limit| in direction 1
    double s1_center = 0, hopf_center = 0;
};

struct ConvergenceReport {
    std::string case_name, pipeline;
    double alpha = M_PI / 3, beta = M_PI / 3, margin = 0.25;
    bool umbilic = false;  // the smooth surface is a single point
    std::vector<ConvergenceRow> rows;

    // Least-squares slope of log error against log eps.
    double order(double ConvergenceRow::*column) const;
};

// Frame and Schwarzian columns from lattice -> h; surface and Hopf columns from the pair (identity, h).
ConvergenceReport run_convergence(const SmoothData& data, const std::vector<double>& eps, const std::string& pipeline,
                                  double alpha = M_PI / 3, double beta = M_PI / 3, double margin = 0.25);

// Surface columns for a general pair (g, gt) sharing the lattice's shear coordinates.
ConvergenceReport surface_convergence(const SmoothData& g, const SmoothData& gt, const std::vector<double>& eps,
                                      const std::string& pipeline, double alpha = M_PI / 3, double beta = M_PI / 3,
                                      double margin = 0.25);

} // namespace horonet
