#include "horonet/mesh.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>

#include "horonet/errors.hpp"

namespace horonet {

int TriangulatedDisk::edge_index(int i, int j) const {
    if (i < 0 || i >= num_vertices()) return -1;
    for (auto [o, e] : incident_edges_[i])
        if (o == j) return e;
    return -1;
}

int TriangulatedDisk::left_face(int i, int j) const {
    int e = edge_index(i, j);
    if (e < 0) return -1;
    return i < j ? edges_[e].left : edges_[e].right;
}

int TriangulatedDisk::right_face(int i, int j) const {
    int e = edge_index(i, j);
    if (e < 0) return -1;
    return i < j ? edges_[e].right : edges_[e].left;
}

int TriangulatedDisk::third_vertex(int f, int i, int j) const {
    for (int v : faces_[f])
        if (v != i && v != j) return v;
    return -1;
}

std::array<int, 3> TriangulatedDisk::face_edges(int f) const {
    const Face& t = faces_[f];
    return {edge_index(t[0], t[1]), edge_index(t[1], t[2]), edge_index(t[2], t[0])};
}

std::vector<int> TriangulatedDisk::dual_neighbors(int f) const {
    std::vector<int> out;
    for (int e : face_edges(f)) {
        const Edge& ed = edges_[e];
        if (!ed.interior()) continue;
        out.push_back(ed.left == f ? ed.right : ed.left);
    }
    return out;
}

TriangulatedDisk build_disk(std::vector<Face> faces) {
    if (faces.empty()) fail(ErrorCode::NotADisk, "no faces");
    int nv = 0;
    for (auto& f : faces) {
        for (int v : f) {
            if (v < 0) fail(ErrorCode::NotADisk, "negative vertex index");
            nv = std::max(nv, v + 1);
        }
        if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2]) fail(ErrorCode::NotADisk, "face with repeated vertex");
    }

    TriangulatedDisk d;
    d.faces_ = std::move(faces);
    const int nf = d.num_faces();

    // Count faces per undirected edge before looking at orientation.
    std::map<std::pair<int, int>, std::vector<std::pair<int, bool>>> seen;  // key -> (face, forward)
    for (int f = 0; f < nf; ++f) {
        for (int s = 0; s < 3; ++s) {
            int i = d.faces_[f][s], j = d.faces_[f][(s + 1) % 3];
            seen[{std::min(i, j), std::max(i, j)}].push_back({f, i < j});
        }
    }
    for (auto& [key, list] : seen)
        if (list.size() > 2)
            fail(ErrorCode::NonManifoldEdge, "edge {" + std::to_string(key.first) + "," + std::to_string(key.second) +
                                                 "} has more than two faces");
    for (auto& [key, list] : seen)
        if (list.size() == 2 && list[0].second == list[1].second)
            fail(ErrorCode::InconsistentOrientation, "faces " + std::to_string(list[0].first) + " and " +
                                                         std::to_string(list[1].first) + " agree on edge orientation");

    d.incident_edges_.assign(nv, {});
    for (auto& [key, list] : seen) {
        Edge e{key.first, key.second};
        for (auto [f, fwd] : list) (fwd ? e.left : e.right) = f;
        int id = static_cast<int>(d.edges_.size());
        d.edges_.push_back(e);
        d.incident_edges_[key.first].push_back({key.second, id});
        d.incident_edges_[key.second].push_back({key.first, id});
        if (e.interior()) d.interior_edges_.push_back(id);
    }

    for (int v = 0; v < nv; ++v)
        if (d.incident_edges_[v].empty()) fail(ErrorCode::NotADisk, "unused vertex " + std::to_string(v));

    long chi = static_cast<long>(nv) - static_cast<long>(d.edges_.size()) + nf;
    if (chi != 1) fail(ErrorCode::NotADisk, "Euler characteristic " + std::to_string(chi));

    // Connectivity over the dual graph.
    {
        std::vector<bool> vis(nf, false);
        std::queue<int> q;
        q.push(0);
        vis[0] = true;
        int count = 1;
        while (!q.empty()) {
            int f = q.front();
            q.pop();
            for (int g : d.dual_neighbors(f))
                if (!vis[g]) {
                    vis[g] = true;
                    ++count;
                    q.push(g);
                }
        }
        if (count != nf) fail(ErrorCode::NotADisk, "face set is not connected");
    }

    // Rings: face (v, a, b) gives next_cw[b] = a.
    d.ring_.assign(nv, {});
    d.interior_.assign(nv, false);
    std::vector<std::map<int, int>> next(nv);
    for (auto& f : d.faces_)
        for (int s = 0; s < 3; ++s) next[f[s]][f[(s + 2) % 3]] = f[(s + 1) % 3];
    for (int v = 0; v < nv; ++v) {
        auto& nx = next[v];
        std::set<int> targets;
        for (auto& kv : nx) targets.insert(kv.second);
        int start = -1;
        for (auto& kv : nx)
            if (!targets.count(kv.first)) {
                if (start >= 0) fail(ErrorCode::NotADisk, "pinched vertex " + std::to_string(v));
                start = kv.first;
            }
        bool closed = start < 0;
        if (closed) start = nx.begin()->first;
        std::vector<int> r{start};
        int cur = start;
        while (true) {
            auto it = nx.find(cur);
            if (it == nx.end()) break;
            cur = it->second;
            if (cur == start) break;
            r.push_back(cur);
            if (r.size() > nx.size() + 1) break;
        }
        size_t expect = closed ? nx.size() : nx.size() + 1;
        if (r.size() != expect) fail(ErrorCode::NotADisk, "vertex " + std::to_string(v) + " is not a manifold point");
        d.ring_[v] = std::move(r);
        d.interior_[v] = closed;
        if (closed) d.interior_vertices_.push_back(v);
    }

    // Single boundary loop.
    {
        std::map<int, int> bnext;
        int nb = 0;
        for (auto& e : d.edges_) {
            if (e.interior()) continue;
            ++nb;
            if (e.left >= 0) bnext[e.v0] = e.v1;
            else bnext[e.v1] = e.v0;
        }
        if (nb == 0) fail(ErrorCode::NotADisk, "no boundary");
        int start = bnext.begin()->first, cur = start, len = 0;
        do {
            cur = bnext.at(cur);
            ++len;
        } while (cur != start && len <= nb);
        if (len != nb) fail(ErrorCode::NotADisk, "boundary has several loops");
    }
    return d;
}

std::vector<int> interior_star(const TriangulatedDisk& disk, int v) {
    if (v < 0 || v >= disk.num_vertices()) fail(ErrorCode::BadInput, "vertex out of range");
    if (!disk.is_interior(v)) fail(ErrorCode::BoundaryVertex, "vertex " + std::to_string(v) + " is on the boundary");
    return disk.ring(v);
}

// ---- lattice ----

LatticeSpec LatticeSpec::equilateral(double eps, double xmin, double xmax, double ymin, double ymax) {
    LatticeSpec s;
    s.eps = eps;
    s.xmin = xmin;
    s.xmax = xmax;
    s.ymin = ymin;
    s.ymax = ymax;
    return s;
}

void LatticeSpec::validate() const {
    auto acute = [](double a) { return a > 0.0 && a < M_PI / 2; };
    if (!acute(alpha) || !acute(beta) || !acute(gamma) || std::abs(alpha + beta + gamma - M_PI) > 1e-12)
        fail(ErrorCode::BadInput, "lattice angles must be acute and sum to pi");
    if (!(eps > 0.0)) fail(ErrorCode::BadInput, "lattice scale must be positive");
}

std::complex<double> LatticeSpec::omega(int k) const {
    k = ((k - 1) % 6 + 6) % 6 + 1;
    if (k > 3) return -omega(k - 3);
    if (k == 1) return 1.0;
    if (k == 2) return std::polar(1.0, beta);
    return std::polar(1.0, alpha + beta);
}

double LatticeSpec::length(int k) const {
    k = ((k - 1) % 3 + 3) % 3 + 1;
    return k == 1 ? std::sin(alpha) : k == 2 ? std::sin(gamma) : std::sin(beta);
}

std::array<int, 2> LatticeSpec::offset(int k) const {
    static const std::array<int, 2> table[6] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
    return table[((k - 1) % 6 + 6) % 6];
}

std::complex<double> LatticeSpec::position(int n, int m) const {
    return eps * (n * std::sin(alpha) + double(m) * std::polar(1.0, beta) * std::sin(gamma));
}

bool LatticeSpec::contains(std::complex<double> z) const {
    const double tol = 1e-12 * std::max(1.0, std::max(std::abs(xmax - xmin), std::abs(ymax - ymin)));
    return z.real() >= xmin - tol && z.real() <= xmax + tol && z.imag() >= ymin - tol && z.imag() <= ymax + tol &&
           (!region || region(z));
}

int LatticePatch::vertex_at(int n, int m) const {
    int a = n - n0_, b = m - m0_;
    if (a < 0 || b < 0 || a >= nw_ || b >= mw_) return -1;
    return lookup_[b * nw_ + a];
}

int LatticePatch::step(int v, int k) const {
    auto o = spec.offset(k);
    return vertex_at(index[v][0] + o[0], index[v][1] + o[1]);
}

namespace {

// Drop faces that hang on pinch vertices and keep the largest edge-connected piece.
std::vector<Face> clean_to_disk(std::vector<Face> faces) {
    for (int round = 0; round < 64; ++round) {
        // largest edge-connected component
        std::map<std::pair<int, int>, std::vector<int>> by_edge;
        for (int f = 0; f < (int)faces.size(); ++f)
            for (int s = 0; s < 3; ++s) {
                int i = faces[f][s], j = faces[f][(s + 1) % 3];
                by_edge[{std::min(i, j), std::max(i, j)}].push_back(f);
            }
        std::vector<int> comp(faces.size(), -1);
        std::vector<int> sizes;
        for (int f0 = 0; f0 < (int)faces.size(); ++f0) {
            if (comp[f0] >= 0) continue;
            int c = static_cast<int>(sizes.size());
            sizes.push_back(0);
            std::queue<int> q;
            q.push(f0);
            comp[f0] = c;
            while (!q.empty()) {
                int f = q.front();
                q.pop();
                ++sizes[c];
                for (int s = 0; s < 3; ++s) {
                    int i = faces[f][s], j = faces[f][(s + 1) % 3];
                    for (int g : by_edge[{std::min(i, j), std::max(i, j)}])
                        if (comp[g] < 0) {
                            comp[g] = c;
                            q.push(g);
                        }
                }
            }
        }
        int best = static_cast<int>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
        std::vector<Face> kept;
        for (int f = 0; f < (int)faces.size(); ++f)
            if (comp[f] == best) kept.push_back(faces[f]);
        faces.swap(kept);

        // fans around each vertex; remove all but the largest
        std::map<int, std::vector<int>> around;
        for (int f = 0; f < (int)faces.size(); ++f)
            for (int v : faces[f]) around[v].push_back(f);
        std::set<int> drop;
        for (auto& [v, fs] : around) {
            std::map<int, int> parent;
            for (int f : fs) parent[f] = f;
            std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
            for (size_t a = 0; a < fs.size(); ++a)
                for (size_t b = a + 1; b < fs.size(); ++b) {
                    int shared = 0;
                    for (int x : faces[fs[a]])
                        for (int y : faces[fs[b]])
                            if (x == y) ++shared;
                    if (shared == 2) parent[find(fs[a])] = find(fs[b]);
                }
            std::map<int, int> cnt;
            for (int f : fs) ++cnt[find(f)];
            if (cnt.size() <= 1) continue;
            int keep = std::max_element(cnt.begin(), cnt.end(), [](auto& x, auto& y) { return x.second < y.second; })->first;
            for (int f : fs)
                if (find(f) != keep) drop.insert(f);
        }
        if (drop.empty()) return faces;
        std::vector<Face> rest;
        for (int f = 0; f < (int)faces.size(); ++f)
            if (!drop.count(f)) rest.push_back(faces[f]);
        faces.swap(rest);
        if (faces.empty()) break;
    }
    return faces;
}

} // namespace

LatticePatch lattice_subcomplex(const LatticeSpec& spec) {
    spec.validate();
    // Bound the index box by the region's bounding rectangle (or a generous default for predicates).
    double xmin = spec.xmin, xmax = spec.xmax, ymin = spec.ymin, ymax = spec.ymax;
    double sa = std::sin(spec.alpha), sg = std::sin(spec.gamma), sb = std::sin(spec.beta), cb = std::cos(spec.beta);
    int mlo = static_cast<int>(std::floor(ymin / (spec.eps * sg * sb))) - 1;
    int mhi = static_cast<int>(std::ceil(ymax / (spec.eps * sg * sb))) + 1;
    double shift = std::max(std::abs(mlo), std::abs(mhi)) * sg * std::abs(cb);
    int nlo = static_cast<int>(std::floor((xmin / spec.eps - shift) / sa)) - 1;
    int nhi = static_cast<int>(std::ceil((xmax / spec.eps + shift) / sa)) + 1;

    LatticePatch out;
    out.spec = spec;
    std::map<std::pair<int, int>, int> inside;  // (m, n) -> provisional flag
    for (int m = mlo; m <= mhi; ++m)
        for (int n = nlo; n <= nhi; ++n)
            if (spec.contains(spec.position(n, m))) inside[{m, n}] = 1;

    auto in = [&](int n, int m) { return inside.count({m, n}) > 0; };
    std::vector<Face> faces;
    std::map<std::pair<int, int>, int> id;
    auto vid = [&](int n, int m) {
        auto [it, fresh] = id.insert({{m, n}, static_cast<int>(id.size())});
        return it->second;
    };
    std::vector<std::array<int, 6>> raw;  // n,m triples
    for (auto& [mn, flag] : inside) {
        int m = mn.first, n = mn.second;
        if (in(n + 1, m) && in(n, m + 1)) raw.push_back({n, m, n + 1, m, n, m + 1});
        if (in(n + 1, m) && in(n + 1, m + 1) && in(n, m + 1)) raw.push_back({n + 1, m, n + 1, m + 1, n, m + 1});
    }
    if (raw.empty()) fail(ErrorCode::EmptyRegion, "region contains no lattice triangle");
    // Temporary ids keyed by (m,n); re-indexed densely after cleaning.
    for (auto& r : raw) faces.push_back({vid(r[0], r[1]), vid(r[2], r[3]), vid(r[4], r[5])});
    std::vector<std::pair<int, int>> coords(id.size());
    for (auto& [mn, i] : id) coords[i] = {mn.second, mn.first};
    faces = clean_to_disk(std::move(faces));
    if (faces.empty()) fail(ErrorCode::EmptyRegion, "region contains no lattice disk");

    // Dense ids in (m, n) lexicographic order.
    std::set<std::pair<int, int>> used;  // (m, n)
    for (auto& f : faces)
        for (int v : f) used.insert({coords[v].second, coords[v].first});
    std::map<std::pair<int, int>, int> dense;
    for (auto& mn : used) {
        int i = static_cast<int>(dense.size());
        dense[mn] = i;
        out.index.push_back({mn.second, mn.first});
        out.position.push_back(spec.position(mn.second, mn.first));
    }
    for (auto& f : faces)
        for (int& v : f) v = dense.at({coords[v].second, coords[v].first});
    std::sort(faces.begin(), faces.end());
    out.disk = build_disk(std::move(faces));

    int n0 = out.index[0][0], n1 = n0, m0 = out.index[0][1], m1 = m0;
    for (auto& nm : out.index) {
        n0 = std::min(n0, nm[0]);
        n1 = std::max(n1, nm[0]);
        m0 = std::min(m0, nm[1]);
        m1 = std::max(m1, nm[1]);
    }
    out.n0_ = n0;
    out.m0_ = m0;
    out.nw_ = n1 - n0 + 1;
    out.mw_ = m1 - m0 + 1;
    out.lookup_.assign(out.nw_ * out.mw_, -1);
    for (int v = 0; v < (int)out.index.size(); ++v)
        out.lookup_[(out.index[v][1] - m0) * out.nw_ + (out.index[v][0] - n0)] = v;
    return out;
}

} // namespace horonet
