#include "horonet/convergence.hpp"

#include <Eigen/Sparse>
#include <cmath>
#include <limits>
#include <queue>
#include <string>

#include "horonet/errors.hpp"

namespace horonet {

SmoothData smooth_case(const std::string& name) {
    if (name == "identity") return {name, Holo::identity()};
    if (name == "exp") return {name, Holo::exponential()};
    if (name == "square") return {name, Holo::power(2), 0.5, 1.5, 0.5, 1.5};
    if (name == "moebius") return {name, Holo::moebius(0, 1, 1, cplx(0.5, 0.5))};
    fail(ErrorCode::BadInput, "unknown smooth case '" + name + "'");
}

void check_univalent(const SmoothData& d) {
    const int n = 16;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
            cplx z(d.xmin + (d.xmax - d.xmin) * a / n, d.ymin + (d.ymax - d.ymin) * b / n);
            if (!(std::abs(d.h.d1(z)) > 1e-8)) fail(ErrorCode::CriticalPoint, "h' vanishes near the sample set");
        }
}

LatticeSpec lattice_for(const SmoothData& data, double eps, double alpha, double beta) {
    LatticeSpec s;
    s.alpha = alpha;
    s.beta = beta;
    s.gamma = M_PI - alpha - beta;
    s.eps = eps;
    s.xmin = data.xmin;
    s.xmax = data.xmax;
    s.ymin = data.ymin;
    s.ymax = data.ymax;
    return s;
}

namespace {

double cross2(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

LatticePattern start(const SmoothData& data, const LatticeSpec& spec) {
    check_univalent(data);
    LatticePattern out{lattice_subcomplex(spec), {}, {}};
    out.lattice = CirclePattern::from_complex(share(out.patch.disk), out.patch.position);
    return out;
}

void require_orientation(const CirclePattern& p) {
    const auto& d = *p.disk;
    for (int f = 0; f < d.num_faces(); ++f) {
        const Face& t = d.face(f);
        cplx a = p.z[t[0]].affine(), b = p.z[t[1]].affine(), c = p.z[t[2]].affine();
        if (!(cross2(b - a, c - a) > 0)) fail(ErrorCode::FoldOver, "face " + std::to_string(f) + " flips orientation");
    }
}

// Angle at the corner opposite side a; degenerate triangles give 0 or pi.
double corner_angle(double a, double b, double c) {
    if (a >= b + c) return M_PI;
    if (b >= a + c || c >= a + b) return 0.0;
    double x = (b * b + c * c - a * a) / (2 * b * c);
    return std::acos(std::clamp(x, -1.0, 1.0));
}

struct Scaling {
    const TriangulatedDisk& d;
    std::vector<double> l0;  // per edge id

    double length(int e, const std::vector<double>& u) const {
        const Edge& ed = d.edges()[e];
        return std::exp(0.5 * (u[ed.v0] + u[ed.v1])) * l0[e];
    }

    // angles of face f at its corners
    std::array<double, 3> angles(int f, const std::vector<double>& u) const {
        auto fe = d.face_edges(f);  // (t0 t1), (t1 t2), (t2 t0)
        double a01 = length(fe[0], u), a12 = length(fe[1], u), a20 = length(fe[2], u);
        return {corner_angle(a12, a01, a20), corner_angle(a20, a01, a12), corner_angle(a01, a12, a20)};
    }

    // 2 pi minus the angle sum at each vertex (zero at boundary vertices)
    std::vector<double> gradient(const std::vector<double>& u) const {
        std::vector<double> g(d.num_vertices(), 0.0);
        for (int f = 0; f < d.num_faces(); ++f) {
            auto a = angles(f, u);
            for (int s = 0; s < 3; ++s) g[d.face(f)[s]] -= a[s];
        }
        for (int v = 0; v < d.num_vertices(); ++v) g[v] = d.is_interior(v) ? g[v] + 2 * M_PI : 0.0;
        return g;
    }
};

double max_abs(const std::vector<double>& g) {
    double m = 0;
    for (double x : g) m = std::max(m, std::abs(x));
    return m;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Energy difference along a segment by Gauss-Legendre quadrature of the directional derivative.
double energy_difference(const Scaling& S, const std::vector<double>& u, const std::vector<double>& du, double s) {
    static const double x[5] = {-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831, 0.9061798459386640};
    static const double w[5] = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889, 0.4786286704993665,
                                0.2369268850561891};
    double total = 0;
    std::vector<double> p(u.size());
    for (int q = 0; q < 5; ++q) {
        double tau = 0.5 * s * (x[q] + 1);
        for (size_t i = 0; i < u.size(); ++i) p[i] = u[i] + tau * du[i];
        total += w[q] * dot(S.gradient(p), du);
    }
    return 0.5 * s * total;
}

std::vector<cplx> layout(const TriangulatedDisk& d, const Scaling& S, const std::vector<double>& u) {
    std::vector<cplx> z(d.num_vertices());
    std::vector<bool> placed(d.num_vertices(), false), seen(d.num_faces(), false);
    const Face& t0 = d.face(0);
    z[t0[0]] = 0.0;
    z[t0[1]] = S.length(d.edge_index(t0[0], t0[1]), u);
    placed[t0[0]] = placed[t0[1]] = true;
    std::queue<std::pair<int, int>> q;  // face, corner whose edge (t[s], t[s+1]) is placed
    q.push({0, 0});
    seen[0] = true;
    while (!q.empty()) {
        auto [f, s] = q.front();
        q.pop();
        const Face& t = d.face(f);
        int i = t[s], j = t[(s + 1) % 3], k = t[(s + 2) % 3];
        auto a = S.angles(f, u);
        if (!placed[k]) {
            cplx dir = (z[j] - z[i]) / std::abs(z[j] - z[i]);
            z[k] = z[i] + S.length(d.edge_index(i, k), u) * dir * std::polar(1.0, a[s]);
            placed[k] = true;
        }
        for (int r = 0; r < 3; ++r) {
            int a0 = t[r], b0 = t[(r + 1) % 3];
            int g = d.right_face(a0, b0);
            if (g < 0 || seen[g]) continue;
            seen[g] = true;
            const Face& tg = d.face(g);
            int c = 0;
            while (!(tg[c] == b0 && tg[(c + 1) % 3] == a0)) ++c;
            q.push({g, c});
        }
    }
    return z;
}

} // namespace

LatticePattern sampled_pattern(const SmoothData& data, const LatticeSpec& spec) {
    auto out = start(data, spec);
    std::vector<cplx> w;
    for (auto z : out.patch.position) w.push_back(data.h.h(z));
    out.image = CirclePattern::from_complex(out.lattice.disk, w);
    require_orientation(out.image);
    return out;
}

LatticePattern shear_preserving_solve(const SmoothData& data, const LatticeSpec& spec, const SolverOptions& opt) {
    auto out = start(data, spec);
    const auto& d = *out.lattice.disk;
    const auto& pos = out.patch.position;
    Scaling S{d, {}};
    for (auto& e : d.edges()) S.l0.push_back(std::abs(pos[e.v1] - pos[e.v0]));

    std::vector<double> u(d.num_vertices());
    for (int v = 0; v < d.num_vertices(); ++v) u[v] = std::log(std::abs(data.h.d1(pos[v])));
    std::vector<int> slot(d.num_vertices(), -1);
    int n = 0;
    for (int v : d.interior_vertices()) slot[v] = n++;

    std::vector<double> g = S.gradient(u);
    int it = 0;
    for (; it < opt.max_iterations && max_abs(g) > opt.tol && n > 0; ++it) {
        // Hessian: cotangent Laplacian on interior vertices
        std::vector<Eigen::Triplet<double>> trip;
        for (int e : d.interior_edges()) {
            const Edge& ed = d.edges()[e];
            double w = 0;
            for (int f : {ed.left, ed.right}) {
                auto a = S.angles(f, u);
                int k = d.third_vertex(f, ed.v0, ed.v1);
                for (int s = 0; s < 3; ++s)
                    if (d.face(f)[s] == k) w += 0.5 / std::tan(std::max(a[s], 1e-12));
            }
            int a0 = slot[ed.v0], b0 = slot[ed.v1];
            if (a0 >= 0) trip.emplace_back(a0, a0, w);
            if (b0 >= 0) trip.emplace_back(b0, b0, w);
            if (a0 >= 0 && b0 >= 0) {
                trip.emplace_back(a0, b0, -w);
                trip.emplace_back(b0, a0, -w);
            }
        }
        // boundary edges still couple their interior endpoint
        for (auto& ed : d.edges()) {
            if (ed.interior()) continue;
            int f = ed.left >= 0 ? ed.left : ed.right;
            auto a = S.angles(f, u);
            int k = d.third_vertex(f, ed.v0, ed.v1);
            double w = 0;
            for (int s = 0; s < 3; ++s)
                if (d.face(f)[s] == k) w = 0.5 / std::tan(std::max(a[s], 1e-12));
            for (int v : {ed.v0, ed.v1})
                if (slot[v] >= 0) trip.emplace_back(slot[v], slot[v], w);
        }
        Eigen::SparseMatrix<double> L(n, n);
        L.setFromTriplets(trip.begin(), trip.end());
        Eigen::VectorXd rhs(n);
        for (int v : d.interior_vertices()) rhs(slot[v]) = -g[v];
        Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> solver(L);
        if (solver.info() != Eigen::Success) fail(ErrorCode::NewtonDiverged, "Hessian factorization failed");
        Eigen::VectorXd step = solver.solve(rhs);
        std::vector<double> du(u.size(), 0.0);
        for (int v : d.interior_vertices()) du[v] = step(slot[v]);

        double slope = dot(g, du), s = 1.0;
        std::vector<double> trial(u.size());
        bool accepted = false;
        for (int ls = 0; ls < 40; ++ls, s *= 0.5) {
            for (size_t i = 0; i < u.size(); ++i) trial[i] = u[i] + s * du[i];
            auto gt = S.gradient(trial);
            // near the solution the energy change is below rounding; accept a decreasing gradient there
            if (max_abs(gt) < max_abs(g) && max_abs(g) < 1e-6) {
                accepted = true;
                break;
            }
            if (energy_difference(S, u, du, s) <= 1e-4 * s * slope) {
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        u = trial;
        g = S.gradient(u);
    }
    out.newton_iterations = it;
    out.angle_residual = max_abs(g);
    if (!(out.angle_residual <= opt.accept))
        fail(ErrorCode::NewtonDiverged, "angle sums off by " + std::to_string(out.angle_residual));

    auto z = layout(d, S, u);
    // place the vertex nearest the centre at h of it, rotate to fit h in the least-squares sense
    cplx centre(0.5 * (spec.xmin + spec.xmax), 0.5 * (spec.ymin + spec.ymax));
    int v0 = 0;
    for (int v = 0; v < d.num_vertices(); ++v)
        if (std::abs(pos[v] - centre) < std::abs(pos[v0] - centre)) v0 = v;
    cplx h0 = data.h.h(pos[v0]), acc = 0.0;
    for (int v = 0; v < d.num_vertices(); ++v) acc += (data.h.h(pos[v]) - h0) * std::conj(z[v] - z[v0]);
    cplx rot = std::abs(acc) > 0 ? acc / std::abs(acc) : cplx(1.0);
    const cplx z0 = z[v0];
    for (auto& w : z) w = h0 + rot * (w - z0);
    out.image = CirclePattern::from_complex(out.lattice.disk, z);

    auto Xt = cross_ratios_of(out.image);
    int worst = -1;
    double wa = 0;
    for (int e : d.interior_edges())
        if (!Xt.delaunay(e)) {
            double a = std::abs(Xt.arg(e));
            if (worst < 0 || a > wa) worst = e, wa = a;
        }
    if (worst >= 0)
        fail(ErrorCode::DelaunayViolated, "edge {" + std::to_string(d.edges()[worst].v0) + "," +
                                              std::to_string(d.edges()[worst].v1) + "} is not Delaunay; eps too large");
    return out;
}

std::vector<double> discrete_schwarzian(const LatticePatch& patch, const CrossRatioSystem& X, const CrossRatioSystem& Xt, int k) {
    if (shear_match(X, Xt) > 1e-8) fail(ErrorCode::NotShearMatched, "patterns do not share shear coordinates");
    const double eps = patch.spec.eps;
    std::vector<double> s(patch.position.size(), std::numeric_limits<double>::quiet_NaN());
    for (int v = 0; v < (int)s.size(); ++v) {
        int w = patch.step(v, k);
        if (w < 0) continue;
        int e = patch.disk.edge_index(v, w);
        if (e < 0 || !patch.disk.edges()[e].interior()) continue;
        s[v] = std::log(Xt.X[e] / X.X[e]).imag() / (eps * eps);
    }
    return s;
}

double schwarzian_limit(const LatticeSpec& spec, cplx S, int k) {
    switch (k) {
        case 1: return 0.5 * spec.length(1) * (spec.omega(2) * spec.omega(3) * S).real();
        case 2: return -0.5 * spec.length(2) * (spec.omega(1) * spec.omega(3) * S).real();
        case 3: return 0.5 * spec.length(3) * (spec.omega(1) * spec.omega(2) * S).real();
    }
    fail(ErrorCode::BadInput, "direction must be 1, 2 or 3");
}

LatticeField discrete_derivative(const LatticePatch& patch, const LatticeField& field, int k, int order) {
    LatticeField cur = field;
    const int nv = (int)patch.position.size();
    for (int r = 0; r < order; ++r) {
        LatticeField next{std::vector<cplx>(nv, 0.0), std::vector<bool>(nv, false)};
        bool any = false;
        for (int v = 0; v < nv; ++v) {
            if (!cur.valid[v]) continue;
            bool inner = true;
            for (int j = 1; j <= 6 && inner; ++j) {
                int w = patch.step(v, j);
                inner = w >= 0 && cur.valid[w];
            }
            if (!inner) continue;
            int w = patch.step(v, k);
            next.value[v] = (cur.value[w] - cur.value[v]) / (patch.spec.eps * patch.spec.length(k));
            next.valid[v] = true;
            any = true;
        }
        if (!any) fail(ErrorCode::DomainExhausted, "no interior vertices left at order " + std::to_string(r + 1));
        cur = std::move(next);
    }
    return cur;
}

double ConvergenceReport::order(double ConvergenceRow::*column) const {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (auto& r : rows) {
        double e = r.*column;
        if (!(e > 0) || !std::isfinite(e)) continue;
        double x = std::log(r.eps), y = std::log(e);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) return std::numeric_limits<double>::quiet_NaN();
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

namespace {

LatticePattern make_pattern(const SmoothData& data, const LatticeSpec& spec, const std::string& pipeline) {
    if (pipeline == "sampled") return sampled_pattern(data, spec);
    if (pipeline == "solved") return shear_preserving_solve(data, spec);
    fail(ErrorCode::BadInput, "pipeline must be 'sampled' or 'solved'");
}

struct Window {
    double xmin, xmax, ymin, ymax;
    bool contains(cplx z) const { return z.real() >= xmin && z.real() <= xmax && z.imag() >= ymin && z.imag() <= ymax; }
};

Window window_of(const SmoothData& d, double margin) {
    double mx = margin * (d.xmax - d.xmin), my = margin * (d.ymax - d.ymin);
    return {d.xmin + mx, d.xmax - mx, d.ymin + my, d.ymax - my};
}

cplx barycenter(const LatticePatch& p, int f) {
    const Face& t = p.disk.face(f);
    return (p.position[t[0]] + p.position[t[1]] + p.position[t[2]]) / 3.0;
}

bool umbilic_pair(const SmoothData& g, const SmoothData& gt) {
    const int n = 8;
    double m = 0;
    for (int a = 0; a <= n; ++a)
        for (int b = 0; b <= n; ++b) {
            cplx z(g.xmin + (g.xmax - g.xmin) * a / n, g.ymin + (g.ymax - g.ymin) * b / n);
            m = std::max(m, std::abs(schwarzian(g.h, z) - schwarzian(gt.h, z)));
        }
    return m < 1e-8;
}

void surface_columns(ConvergenceRow& row, const LatticePattern& pg, const LatticePattern& pgt, const SmoothData& g,
                     const SmoothData& gt, const Window& win) {
    auto net = build_cmc1(pg.image, pgt.image);
    const auto& patch = pg.patch;
    const double eps = patch.spec.eps;
    row.surface_error = 0;
    for (int f = 0; f < patch.disk.num_faces(); ++f) {
        cplx c = barycenter(patch, f);
        if (!win.contains(c)) continue;
        Mat2 A = smooth_pair_frame(g.h, gt.h, c);
        row.surface_error = std::max(row.surface_error, hyperbolic_distance(net.f[f], lift_point(A)));
    }
    row.hopf_error = 0;
    double best = std::numeric_limits<double>::infinity();
    cplx centre(0.5 * (win.xmin + win.xmax), 0.5 * (win.ymin + win.ymax));
    const auto& spec = patch.spec;
    for (int v = 0; v < (int)patch.position.size(); ++v) {
        if (!win.contains(patch.position[v])) continue;
        int w = patch.step(v, 1);
        if (w < 0) continue;
        int e = patch.disk.edge_index(v, w);
        if (!patch.disk.edges()[e].interior()) continue;
        cplx Q = 0.5 * (schwarzian(g.h, patch.position[v]) - schwarzian(gt.h, patch.position[v]));
        double limit = spec.length(1) * (spec.omega(2) * spec.omega(3) * Q).real();
        double val = net.ell_tan(e) / (eps * eps);
        row.hopf_error = std::max(row.hopf_error, std::abs(val - limit));
        if (std::abs(patch.position[v] - centre) < best) {
            best = std::abs(patch.position[v] - centre);
            row.hopf_center = val;
        }
    }
}

} // namespace

ConvergenceReport run_convergence(const SmoothData& data, const std::vector<double>& eps, const std::string& pipeline,
                                  double alpha, double beta, double margin) {
    for (size_t k = 1; k < eps.size(); ++k)
        if (!(eps[k] < eps[k - 1])) fail(ErrorCode::BadInput, "eps list must be strictly decreasing");
    ConvergenceReport rep{data.name, pipeline, alpha, beta, margin, false, {}};
    SmoothData id = smooth_case("identity");
    id.xmin = data.xmin, id.xmax = data.xmax, id.ymin = data.ymin, id.ymax = data.ymax;
    rep.umbilic = umbilic_pair(id, data);
    Window win = window_of(data, margin);
    for (double e : eps) {
        auto spec = lattice_for(data, e, alpha, beta);
        auto pat = make_pattern(data, spec, pipeline);
        const auto& patch = pat.patch;
        ConvergenceRow row;
        row.eps = e;
        row.vertices = (int)patch.position.size();
        row.newton_iterations = pat.newton_iterations;

        auto X = cross_ratios_of(pat.lattice), Xt = cross_ratios_of(pat.image);
        auto F = coherent_lift(osculating_frame(pat.lattice, pat.image), X, Xt);
        for (int f = 0; f < patch.disk.num_faces(); ++f) {
            cplx c = barycenter(patch, f);
            if (!win.contains(c)) continue;
            row.frame_error = std::max(row.frame_error, projective_distance(F.A[f], smooth_osculating(data.h, c)));
        }

        if (pipeline == "solved") {
            auto s = discrete_schwarzian(patch, X, Xt, 1);
            double best = std::numeric_limits<double>::infinity();
            cplx centre(0.5 * (win.xmin + win.xmax), 0.5 * (win.ymin + win.ymax));
            for (int v = 0; v < (int)s.size(); ++v) {
                if (std::isnan(s[v]) || !win.contains(patch.position[v])) continue;
                double lim = schwarzian_limit(spec, schwarzian(data.h, patch.position[v]), 1);
                row.schwarzian_error = std::max(row.schwarzian_error, std::abs(s[v] - lim));
                if (std::abs(patch.position[v] - centre) < best) {
                    best = std::abs(patch.position[v] - centre);
                    row.s1_center = s[v];
                }
            }
            // the identity pattern is the lattice itself
            LatticePattern base = pat;
            base.image = pat.lattice;
            surface_columns(row, base, pat, id, data, win);
        } else {
            row.schwarzian_error = row.surface_error = row.hopf_error = std::numeric_limits<double>::quiet_NaN();
        }
        rep.rows.push_back(row);
    }
    return rep;
}

ConvergenceReport surface_convergence(const SmoothData& g, const SmoothData& gt, const std::vector<double>& eps,
                                      const std::string& pipeline, double alpha, double beta, double margin) {
    ConvergenceReport rep{g.name + "/" + gt.name, pipeline, alpha, beta, margin, umbilic_pair(g, gt), {}};
    Window win = window_of(g, margin);
    for (double e : eps) {
        auto spec = lattice_for(g, e, alpha, beta);
        auto a = make_pattern(g, spec, pipeline), b = make_pattern(gt, spec, pipeline);
        ConvergenceRow row;
        row.eps = e;
        row.vertices = (int)a.patch.position.size();
        row.newton_iterations = a.newton_iterations + b.newton_iterations;
        row.frame_error = row.schwarzian_error = std::numeric_limits<double>::quiet_NaN();
        surface_columns(row, a, b, g, gt, win);
        rep.rows.push_back(row);
    }
    return rep;
}

} // namespace horonet
