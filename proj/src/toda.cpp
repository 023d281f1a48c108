#include "horonet/toda.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <string>

#include "horonet/errors.hpp"

namespace horonet {

int CellComplex::edge_index(int i, int j) const {
    auto key = std::array<int, 2>{std::min(i, j), std::max(i, j)};
    auto it = std::lower_bound(edges.begin(), edges.end(), key);
    return it != edges.end() && *it == key ? static_cast<int>(it - edges.begin()) : -1;
}

int CellComplex::left_face(int i, int j) const {
    int e = edge_index(i, j);
    if (e < 0) return -1;
    return i < j ? edge_faces[e][0] : edge_faces[e][1];
}

CellComplex make_cell_complex(std::vector<std::vector<int>> faces) {
    CellComplex c;
    c.faces = std::move(faces);
    std::map<std::array<int, 2>, std::array<int, 2>> m;
    for (int f = 0; f < (int)c.faces.size(); ++f) {
        const auto& p = c.faces[f];
        if (p.size() < 3) fail(ErrorCode::BadInput, "cell with fewer than three corners");
        for (size_t s = 0; s < p.size(); ++s) {
            int i = p[s], j = p[(s + 1) % p.size()];
            if (i < 0 || j < 0 || i == j) fail(ErrorCode::BadInput, "bad cell corner");
            c.num_vertices = std::max(c.num_vertices, std::max(i, j) + 1);
            auto& slot = m.try_emplace({std::min(i, j), std::max(i, j)}, std::array<int, 2>{-1, -1}).first->second;
            int& side = i < j ? slot[0] : slot[1];
            if (side >= 0) fail(ErrorCode::InconsistentOrientation, "directed edge used twice");
            side = f;
        }
    }
    for (auto& [k, v] : m) {
        c.edges.push_back(k);
        c.edge_faces.push_back(v);
    }
    c.interior.assign(c.num_vertices, true);
    for (size_t e = 0; e < c.edges.size(); ++e)
        if (c.edge_faces[e][0] < 0 || c.edge_faces[e][1] < 0) c.interior[c.edges[e][0]] = c.interior[c.edges[e][1]] = false;
    return c;
}

TodaResiduals verify_toda(const CellComplex& mesh, const std::vector<cplx>& z, const std::vector<cplx>& q) {
    if ((int)q.size() != (int)mesh.edges.size() || (int)z.size() != mesh.num_vertices)
        fail(ErrorCode::MeshMismatch, "Toda data does not fit the mesh");
    TodaResiduals r;
    std::vector<cplx> vs(mesh.num_vertices, 0.0), ws(mesh.num_vertices, 0.0);
    for (size_t e = 0; e < mesh.edges.size(); ++e) {
        int i = mesh.edges[e][0], j = mesh.edges[e][1];
        vs[i] += q[e];
        vs[j] += q[e];
        ws[i] += q[e] / (z[j] - z[i]);
        ws[j] += q[e] / (z[i] - z[j]);
    }
    r.per_vertex.assign(mesh.num_vertices, 0.0);
    for (int v = 0; v < mesh.num_vertices; ++v) {
        if (!mesh.interior[v]) continue;
        r.per_vertex[v] = std::abs(vs[v]);
        r.vertex_sum = std::max(r.vertex_sum, std::abs(vs[v]));
        r.weighted_sum = std::max(r.weighted_sum, std::abs(ws[v]));
    }
    for (const auto& p : mesh.faces) {
        cplx s = 0.0;
        for (size_t k = 0; k < p.size(); ++k) s += q[mesh.edge_index(p[k], p[(k + 1) % p.size()])];
        r.face_sum = std::max(r.face_sum, std::abs(s));
    }
    return r;
}

TodaSolution rect_grid_toda(int n, int m, double hx, double hy, double s) {
    if (n < 2 || m < 2) fail(ErrorCode::TooSmall, "grid needs at least 2x2 vertices");
    if (!(hx > 0 && hy > 0)) fail(ErrorCode::BadInput, "grid spacing must be positive");
    std::vector<std::vector<int>> faces;
    for (int b = 0; b + 1 < m; ++b)
        for (int a = 0; a + 1 < n; ++a) faces.push_back({b * n + a, b * n + a + 1, (b + 1) * n + a + 1, (b + 1) * n + a});
    TodaSolution sol;
    sol.mesh = std::make_shared<const CellComplex>(make_cell_complex(std::move(faces)));
    for (int b = 0; b < m; ++b)
        for (int a = 0; a < n; ++a) sol.z.push_back(cplx(a * hx, b * hy));
    for (auto& e : sol.mesh->edges) sol.q.push_back(e[1] - e[0] == 1 ? s : -s);
    sol.residuals = verify_toda(*sol.mesh, sol.z, sol.q);
    return sol;
}

TodaSolution square_grid_toda(int n, int m) { return rect_grid_toda(n, m, 1.0, 1.0, 1.0); }

cplx Labeling::at(int v, int f) const {
    const auto& p = mesh->faces[f];
    for (size_t s = 0; s < p.size(); ++s)
        if (p[s] == v) return alpha[f][s];
    fail(ErrorCode::BadInput, "vertex not on face");
}

cplx Labeling::plus(int i, int j) const { return at(i, mesh->left_face(i, j)); }
cplx Labeling::minus(int i, int j) const { return at(i, mesh->left_face(j, i)); }

double Labeling::max_abs() const {
    double m = 0.0;
    for (auto& f : alpha)
        for (auto a : f) m = std::max(m, std::abs(a));
    return m;
}

bool Labeling::real(double tol) const {
    for (auto& f : alpha)
        for (auto a : f)
            if (std::abs(a.imag()) > tol) return false;
    return true;
}

Labeling labeling_from(const TodaSolution& sol, double tol) {
    const CellComplex& c = *sol.mesh;
    // corners numbered consecutively
    std::vector<int> base(c.faces.size() + 1, 0);
    for (size_t f = 0; f < c.faces.size(); ++f) base[f + 1] = base[f] + (int)c.faces[f].size();
    auto corner = [&](int v, int f) {
        const auto& p = c.faces[f];
        return base[f] + int(std::find(p.begin(), p.end(), v) - p.begin());
    };
    struct Link {
        int to;
        cplx offset;
    };
    const int nc = base.back();
    std::vector<std::vector<Link>> g(nc);
    struct Constraint {
        int a, b;
        cplx offset;  // value(b) = value(a) + offset
    };
    std::vector<Constraint> cons;
    for (size_t e = 0; e < c.edges.size(); ++e) {
        int L = c.edge_faces[e][0], R = c.edge_faces[e][1];
        if (L < 0 || R < 0) continue;
        int i = c.edges[e][0], j = c.edges[e][1];
        cons.push_back({corner(i, R), corner(i, L), sol.q[e]});
        cons.push_back({corner(j, R), corner(i, L), 0.0});
        cons.push_back({corner(i, R), corner(j, L), 0.0});
    }
    for (auto& k : cons) {
        g[k.a].push_back({k.b, k.offset});
        g[k.b].push_back({k.a, -k.offset});
    }
    std::vector<cplx> val(nc, 0.0);
    std::vector<bool> seen(nc, false);
    Labeling out;
    out.mesh = sol.mesh;
    for (int r = 0; r < nc; ++r) {
        if (seen[r]) continue;
        ++out.components;
        seen[r] = true;
        std::queue<int> qu;
        qu.push(r);
        while (!qu.empty()) {
            int a = qu.front();
            qu.pop();
            for (auto& l : g[a])
                if (!seen[l.to]) {
                    seen[l.to] = true;
                    val[l.to] = val[a] + l.offset;
                    qu.push(l.to);
                }
        }
    }
    for (auto& k : cons) out.residual = std::max(out.residual, std::abs(val[k.b] - val[k.a] - k.offset));
    if (out.residual > tol)
        fail(ErrorCode::InconsistentLabeling, "edge function is not a Toda solution (labeling residual " +
                                                  std::to_string(out.residual) + ")");
    out.alpha.resize(c.faces.size());
    for (size_t f = 0; f < c.faces.size(); ++f) out.alpha[f].assign(val.begin() + base[f], val.begin() + base[f + 1]);
    return out;
}

TodaTriangulation triangulate(const CellPtr& mesh, bool alternate) {
    std::vector<Face> tris;
    std::vector<int> owner;
    for (size_t f = 0; f < mesh->faces.size(); ++f) {
        const auto& p = mesh->faces[f];
        int k = (int)p.size();
        int r = int(std::min_element(p.begin(), p.end()) - p.begin());
        if (alternate) r = (r + 1) % k;
        for (int s = 1; s + 1 < k; ++s) {
            tris.push_back({p[r], p[(r + s) % k], p[(r + s + 1) % k]});
            owner.push_back((int)f);
        }
    }
    TodaTriangulation t;
    t.mesh = mesh;
    t.disk = share(build_disk(tris));
    t.cell_face = owner;
    for (auto& e : t.disk->edges()) t.cell_edge.push_back(mesh->edge_index(e.v0, e.v1));
    return t;
}

CrossRatioSystem family_Xt(const CrossRatioSystem& X, const TodaTriangulation& tri, const Labeling& alpha, cplx t) {
    if (std::abs(t) * alpha.max_abs() >= 0.9) fail(ErrorCode::PoleInFamily, "family parameter too close to a pole");
    CrossRatioSystem out = X;
    for (int e : tri.disk->interior_edges()) {
        if (tri.cell_edge[e] < 0) continue;
        int i = tri.disk->edges()[e].v0, j = tri.disk->edges()[e].v1;
        out.X[e] = (1.0 - t * alpha.minus(i, j)) / (1.0 - t * alpha.plus(i, j)) * X.X[e];
    }
    return out;
}

CirclePattern develop_family(const CirclePattern& base, const TodaTriangulation& tri, const Labeling& alpha, cplx t) {
    auto X = family_Xt(cross_ratios_of(base), tri, alpha, t);
    return develop_like(X, base, 0);
}

TodaPair toda_pair(const TodaSolution& sol, cplx t_plus, cplx t_minus, bool alternate) {
    TodaPair p{triangulate(sol.mesh, alternate), labeling_from(sol), {}, {}};
    auto base = CirclePattern::from_complex(p.tri.disk, sol.z);
    p.z = develop_family(base, p.tri, p.alpha, t_plus);
    p.zt = develop_family(base, p.tri, p.alpha, t_minus);
    return p;
}

HorosphericalNet cmc1_from_toda(const TodaSolution& sol, double t, bool alternate) {
    auto p = toda_pair(sol, cplx(0, t), cplx(0, -t), alternate);
    if (!p.alpha.real()) fail(ErrorCode::BadInput, "CMC-1 production needs a real labeling");
    if (!cross_ratios_of(p.z).all_delaunay() || !cross_ratios_of(p.zt).all_delaunay())
        fail(ErrorCode::NotDelaunayAtT, "family member is not Delaunay at t = " + std::to_string(t));
    return build_cmc1(p.z, p.zt);
}

double tangent_check(const TodaSolution& sol, bool alternate) {
    auto tri = triangulate(sol.mesh, alternate);
    auto alpha = labeling_from(sol);
    auto X = cross_ratios_of(CirclePattern::from_complex(tri.disk, sol.z));
    auto D = [&](double h, int e) {
        auto a = family_Xt(X, tri, alpha, h), b = family_Xt(X, tri, alpha, -h);
        return (std::log(a.X[e] / X.X[e]) - std::log(b.X[e] / X.X[e])) / (2.0 * h);
    };
    const double h = 1e-3 / std::max(1.0, alpha.max_abs());
    double worst = 0.0;
    for (int e : tri.disk->interior_edges()) {
        cplx d = (4.0 * D(h / 2, e) - D(h, e)) / 3.0;
        cplx expect = tri.cell_edge[e] < 0 ? cplx(0.0) : sol.q[tri.cell_edge[e]];
        worst = std::max(worst, std::abs(d - expect));
    }
    return worst;
}

std::vector<cplx> family_velocity(const TodaSolution& sol, bool alternate) {
    auto tri = triangulate(sol.mesh, alternate);
    auto alpha = labeling_from(sol);
    auto base = CirclePattern::from_complex(tri.disk, sol.z);
    const double h = 1e-3 / std::max(1.0, alpha.max_abs());
    auto D = [&](double k) {
        auto a = develop_family(base, tri, alpha, k), b = develop_family(base, tri, alpha, -k);
        std::vector<cplx> out;
        for (size_t v = 0; v < a.z.size(); ++v) out.push_back((a.z[v].affine() - b.z[v].affine()) / (2.0 * k));
        return out;
    };
    auto d1 = D(h), d2 = D(h / 2);
    for (size_t v = 0; v < d1.size(); ++v) d1[v] = (4.0 * d2[v] - d1[v]) / 3.0;
    return d1;
}

double triangulation_independence(const TodaSolution& sol, cplx t) {
    auto a = toda_pair(sol, t, t, false), b = toda_pair(sol, t, t, true);
    const auto& f = sol.mesh->faces[0];
    auto norm = [&](const CirclePattern& p) {
        auto M = mobius_from_triples(p.z[f[0]], p.z[f[1]], p.z[f[2]], SpherePoint::finite(sol.z[f[0]]),
                                     SpherePoint::finite(sol.z[f[1]]), SpherePoint::finite(sol.z[f[2]]));
        return p.mapped(M);
    };
    return pattern_distance(norm(a.z), norm(b.z));
}

} // namespace horonet
