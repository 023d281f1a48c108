#include "horonet/io.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "horonet/errors.hpp"

namespace horonet::io {

json to_json(cplx z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const SpherePoint& z) {
    if (z.is_infinity()) return "inf";
    return to_json(z.affine());
}

json to_json(const Mat2& m) { return json::array({json::array({to_json(m.a), to_json(m.b)}), json::array({to_json(m.c), to_json(m.d)})}); }

cplx complex_from_json(const json& j) {
    if (!j.is_object() || !j.contains("re") || !j.contains("im"))
        fail(ErrorCode::BadInput, "complex number must be {\"re\", \"im\"}: " + j.dump());
    return {j.at("re").get<double>(), j.at("im").get<double>()};
}

SpherePoint point_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return SpherePoint::infinity();
        fail(ErrorCode::BadInput, "unknown point '" + j.get<std::string>() + "'");
    }
    return SpherePoint::finite(complex_from_json(j));
}

Mat2 matrix_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || j[0].size() != 2 || j[1].size() != 2)
        fail(ErrorCode::BadInput, "matrix must be [[a, b], [c, d]]");
    return {complex_from_json(j[0][0]), complex_from_json(j[0][1]), complex_from_json(j[1][0]), complex_from_json(j[1][1])};
}

namespace {

json faces_json(const TriangulatedDisk& d) {
    json f = json::array();
    for (auto& t : d.faces()) f.push_back({t[0], t[1], t[2]});
    return f;
}

json points_json(const std::vector<SpherePoint>& z) {
    json a = json::array();
    for (auto& p : z) a.push_back(to_json(p));
    return a;
}

std::vector<SpherePoint> points_from(const json& j, size_t expected, const char* what) {
    if (!j.is_array()) fail(ErrorCode::BadInput, std::string(what) + " must be an array");
    if (j.size() != expected)
        fail(ErrorCode::MeshMismatch, std::string(what) + " has " + std::to_string(j.size()) + " entries, expected " +
                                          std::to_string(expected));
    std::vector<SpherePoint> z;
    for (auto& x : j) z.push_back(point_from_json(x));
    return z;
}

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) fail(ErrorCode::BadInput, std::string("missing field '") + key + "'");
    return j.at(key);
}

std::array<double, 3> ball(const Hermitian& x) { return to_poincare_ball(x); }

} // namespace

json pattern_to_json(const CirclePattern& p) {
    return {{"faces", faces_json(*p.disk)}, {"positions", points_json(p.z)}};
}

DiskPtr disk_from_json(const json& j) {
    std::vector<Face> faces;
    for (auto& f : field(j, "faces")) {
        if (!f.is_array() || f.size() != 3) fail(ErrorCode::BadInput, "faces must be vertex triples");
        faces.push_back({f[0].get<int>(), f[1].get<int>(), f[2].get<int>()});
    }
    return share(build_disk(std::move(faces)));
}

CirclePattern pattern_on(const DiskPtr& disk, const json& j) {
    CirclePattern p{disk, points_from(field(j, "positions"), disk->num_vertices(), "positions")};
    p.validate();
    return p;
}

CirclePattern pattern_from_json(const json& j) { return pattern_on(disk_from_json(j), j); }

json cross_ratios_to_json(const CrossRatioSystem& X) {
    json e = json::array();
    for (int id : X.disk->interior_edges()) {
        const Edge& ed = X.disk->edges()[id];
        e.push_back({{"i", ed.v0}, {"j", ed.v1}, {"re", X.X[id].real()}, {"im", X.X[id].imag()}});
    }
    return {{"edges", e}};
}

CrossRatioSystem cross_ratios_from_json(const DiskPtr& disk, const json& j) {
    CrossRatioSystem X{disk, std::vector<cplx>(disk->edges().size(), 0.0)};
    std::vector<bool> have(X.X.size(), false);
    for (auto& e : field(j, "edges")) {
        int i = field(e, "i").get<int>(), k = field(e, "j").get<int>();
        int id = disk->edge_index(i, k);
        if (id < 0 || !disk->edges()[id].interior())
            fail(ErrorCode::MeshMismatch, "{" + std::to_string(i) + "," + std::to_string(k) + "} is not an interior edge");
        cplx x(field(e, "re").get<double>(), field(e, "im").get<double>());
        // stored for v0 -> v1; the reversed edge carries the same value
        X.X[id] = x;
        have[id] = true;
    }
    for (int id : disk->interior_edges())
        if (!have[id]) fail(ErrorCode::MeshMismatch, "edge " + std::to_string(id) + " has no cross ratio");
    return X;
}

json toda_to_json(const TodaSolution& sol) {
    const auto& m = *sol.mesh;
    json faces = json::array(), pos = json::array(), edges = json::array();
    for (auto& f : m.faces) faces.push_back(f);
    for (auto z : sol.z) pos.push_back(to_json(z));
    for (size_t e = 0; e < m.edges.size(); ++e)
        edges.push_back({{"i", m.edges[e][0]}, {"j", m.edges[e][1]}, {"q_re", sol.q[e].real()}, {"q_im", sol.q[e].imag()}});
    return {{"faces", faces}, {"positions", pos}, {"edges", edges}};
}

TodaSolution toda_from_json(const json& j) {
    std::vector<std::vector<int>> faces;
    for (auto& f : field(j, "faces")) faces.push_back(f.get<std::vector<int>>());
    auto mesh = std::make_shared<const CellComplex>(make_cell_complex(std::move(faces)));
    TodaSolution sol{mesh, {}, std::vector<cplx>(mesh->edges.size(), 0.0), {}};
    const json& pos = field(j, "positions");
    if ((int)pos.size() != mesh->num_vertices) fail(ErrorCode::MeshMismatch, "positions do not match the cells");
    for (auto& p : pos) sol.z.push_back(complex_from_json(p));
    std::vector<bool> have(sol.q.size(), false);
    for (auto& e : field(j, "edges")) {
        int a = field(e, "i").get<int>(), b = field(e, "j").get<int>();
        int id = mesh->edge_index(a, b);
        if (id < 0) fail(ErrorCode::MeshMismatch, "{" + std::to_string(a) + "," + std::to_string(b) + "} is not an edge");
        sol.q[id] = {field(e, "q_re").get<double>(), field(e, "q_im").get<double>()};
        have[id] = true;
    }
    for (size_t e = 0; e < have.size(); ++e)
        if (!have[e]) fail(ErrorCode::MeshMismatch, "edge " + std::to_string(e) + " has no q");
    sol.residuals = verify_toda(*mesh, sol.z, sol.q);
    return sol;
}

json frame_to_json(const MoebiusFrame& F) {
    json frames = json::array();
    for (size_t f = 0; f < F.A.size(); ++f) frames.push_back({{"face", f}, {"A", to_json(F.A[f])}});
    return {{"faces", faces_json(*F.disk)}, {"source", points_json(F.source)}, {"target", points_json(F.target)},
            {"coherent", F.coherent}, {"frames", frames}};
}

MoebiusFrame frame_from_json(const json& j) {
    MoebiusFrame F;
    F.disk = disk_from_json(j);
    const int nv = F.disk->num_vertices(), nf = F.disk->num_faces();
    F.source = points_from(field(j, "source"), nv, "source");
    F.target = points_from(field(j, "target"), nv, "target");
    F.coherent = j.value("coherent", false);
    F.A.assign(nf, Mat2::identity());
    std::vector<bool> have(nf, false);
    for (auto& x : field(j, "frames")) {
        int f = field(x, "face").get<int>();
        if (f < 0 || f >= nf) fail(ErrorCode::MeshMismatch, "frame for unknown face " + std::to_string(f));
        F.A[f] = matrix_from_json(field(x, "A"));
        have[f] = true;
    }
    for (int f = 0; f < nf; ++f)
        if (!have[f]) fail(ErrorCode::MeshMismatch, "face " + std::to_string(f) + " has no frame");
    return F;
}

json net_report(const HorosphericalNet& net, const std::string& kind) {
    if (!net.measured) fail(ErrorCode::UnmeasuredNet, "net has not been measured");
    const auto& d = *net.disk;
    json faces = json::array(), edges = json::array();
    double worst = 0;
    for (int v : d.interior_vertices()) {
        double ratio = net.area[v] > 0 ? net.H[v] / net.area[v] : std::nan("");
        if (std::isfinite(ratio)) worst = std::max(worst, std::abs(ratio - 1.0));
        faces.push_back({{"vertex", v}, {"area", net.area[v]}, {"H", net.H[v]}, {"ratio", std::isfinite(ratio) ? json(ratio) : json(nullptr)}});
    }
    for (int e : d.interior_edges()) {
        const auto& m = net.edge[e];
        edges.push_back({{"i", d.edges()[e].v0}, {"j", d.edges()[e].v1}, {"ell", m.ell}, {"alpha", m.alpha}, {"theta", m.theta}});
    }
    auto bal = vertex_balance(net);
    return {{"kind", kind},
            {"degenerate", net.degenerate},
            {"faces", faces},
            {"edges", edges},
            {"summary",
             {{"max_ratio_deviation", worst},
              {"theta_balance", bal.theta},
              {"ell_tan_balance", bal.ell_tan},
              {"incidence_residual", net.incidence_residual},
              {"edge_condition_violation", edge_condition_violation(net)}}}};
}

json equidistant_report(const EquidistantNet& net) {
    auto r = verify_equidistant(net);
    const auto& d = *net.disk;
    json faces = json::array(), edges = json::array();
    for (int f = 0; f < d.num_faces(); ++f) faces.push_back({{"face", f}, {"c", net.c[f]}, {"cosphericity", r.per_face[f]}});
    for (int e : d.interior_edges())
        edges.push_back({{"i", d.edges()[e].v0}, {"j", d.edges()[e].v1}, {"lambda", net.lambda[e]}});
    return {{"kind", "equidistant"},
            {"degenerate", net.degenerate},
            {"faces", faces},
            {"edges", edges},
            {"summary", {{"reality", r.reality}, {"cosphericity", r.cosphericity}}}};
}

PolyMesh net_geometry(const HorosphericalNet& net, int arc_samples) {
    if (!net.measured) fail(ErrorCode::UnmeasuredNet, "net has not been measured");
    if (arc_samples < 1) fail(ErrorCode::BadInput, "arc samples must be positive");
    PolyMesh m;
    if (net.degenerate) {
        m.points.push_back(ball(net.f[0]));
        m.warning = "degenerate net: every dual vertex is the same point";
        return m;
    }
    const auto& d = *net.disk;
    for (auto& x : net.f) m.points.push_back(ball(x));

    std::vector<MoebiusMap> chart(d.num_vertices()), back(d.num_vertices());
    std::vector<bool> charted(d.num_vertices(), false);
    auto chart_of = [&](int v) {
        if (!charted[v]) {
            chart[v] = horosphere_chart(net.horospheres[v]);
            back[v] = chart[v].inverse();
            charted[v] = true;
        }
    };
    auto lift = [&](int v, cplx w) { return ball(act_on_hermitian(back[v], from_half_space({w, 1.0}))); };
    // Arc of the edge i -> j in the chart of i, from the left face to the right face.
    auto arc = [&](int i, int j) {
        chart_of(i);
        cplx u = to_half_space(act_on_hermitian(chart[i], net.f[d.left_face(i, j)])).w;
        cplx v = to_half_space(act_on_hermitian(chart[i], net.f[d.right_face(i, j)])).w;
        Hermitian Nj = act_on_hermitian(chart[i], net.horospheres[j].U);
        cplx w = Nj.b / Nj.d;
        double psi = (u == w || v == w) ? 0.0 : std::arg((v - w) / (u - w));
        std::vector<cplx> pts;
        for (int k = 0; k <= arc_samples; ++k) {
            double t = double(k) / arc_samples;
            pts.push_back(arc_samples == 1 ? u + t * (v - u) : w + (u - w) * std::polar(1.0, t * psi));
        }
        pts.back() = v;
        return pts;
    };

    for (int e : d.interior_edges()) {
        const Edge& ed = d.edges()[e];
        auto pts = arc(ed.v0, ed.v1);
        std::vector<int> line{d.left_face(ed.v0, ed.v1)};
        for (int k = 1; k < arc_samples; ++k) {
            line.push_back((int)m.points.size());
            m.points.push_back(lift(ed.v0, pts[k]));
        }
        line.push_back(d.right_face(ed.v0, ed.v1));
        m.lines.push_back(line);
    }

    for (int i : d.interior_vertices()) {
        std::vector<cplx> loop;
        for (int j : d.ring(i)) {
            auto pts = arc(i, j);
            loop.insert(loop.end(), pts.begin(), pts.end() - 1);
        }
        cplx centre = 0.0;
        for (auto p : loop) centre += p;
        centre /= double(loop.size());
        int c = (int)m.points.size();
        m.points.push_back(lift(i, centre));
        int first = (int)m.points.size();
        for (auto p : loop) m.points.push_back(lift(i, p));
        const int n = (int)loop.size();
        for (int k = 0; k < n; ++k) m.triangles.push_back({c, first + (k + 1) % n, first + k});
    }
    return m;
}

PolyMesh equidistant_geometry(const EquidistantNet& net, int samples) {
    if (samples < 1) fail(ErrorCode::BadInput, "samples must be positive");
    PolyMesh m;
    if (net.degenerate) {
        m.points.push_back(ball(net.f[0]));
        m.warning = "degenerate net: every dual vertex is the same point";
        return m;
    }
    const auto& d = *net.disk;
    for (auto& x : net.f) m.points.push_back(ball(x));
    for (int e : d.interior_edges()) {
        const Edge& ed = d.edges()[e];
        const Hermitian &x = net.f[ed.left], &y = net.f[ed.right];
        double dist = hyperbolic_distance(x, y);
        std::vector<int> line{ed.left};
        for (int k = 1; k < samples; ++k) {
            double t = double(k) / samples;
            Hermitian p = dist < 1e-14 ? x : (std::sinh((1 - t) * dist) / std::sinh(dist)) * x + (std::sinh(t * dist) / std::sinh(dist)) * y;
            line.push_back((int)m.points.size());
            m.points.push_back(ball(p));
        }
        line.push_back(ed.right);
        m.lines.push_back(line);
    }
    return m;
}

PolyMesh point_geometry(const TriangulatedDisk& d, const std::vector<Point3>& pts) {
    if ((int)pts.size() != d.num_faces()) fail(ErrorCode::MeshMismatch, "one point per face expected");
    PolyMesh m;
    m.points.assign(pts.begin(), pts.end());
    if (point_spread(pts) <= 1e-12) {
        m.points.resize(1);
        m.warning = "degenerate surface: every dual vertex is the same point";
        return m;
    }
    for (int e : d.interior_edges()) m.lines.push_back({d.edges()[e].left, d.edges()[e].right});
    return m;
}

namespace {

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void check_index(const PolyMesh& m, int k) {
    if (k < 0 || k >= (int)m.points.size()) fail(ErrorCode::BadInput, "index " + std::to_string(k) + " out of range");
}

} // namespace

std::string to_obj(const PolyMesh& m) {
    std::ostringstream o;
    o << "# horonet\n";
    if (!m.warning.empty()) o << "# warning: " << m.warning << "\n";
    for (auto& p : m.points) o << "v " << num(p[0]) << " " << num(p[1]) << " " << num(p[2]) << "\n";
    for (auto& l : m.lines) {
        o << "l";
        for (int k : l) o << " " << k + 1;
        o << "\n";
    }
    for (auto& t : m.triangles) o << "f " << t[0] + 1 << " " << t[1] + 1 << " " << t[2] + 1 << "\n";
    return o.str();
}

PolyMesh from_obj(const std::string& text) {
    PolyMesh m;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        ls >> tag;
        if (tag == "v") {
            std::array<double, 3> p;
            if (!(ls >> p[0] >> p[1] >> p[2])) fail(ErrorCode::BadInput, "bad vertex line: " + line);
            m.points.push_back(p);
        } else if (tag == "l" || tag == "f") {
            std::vector<int> idx;
            std::string tok;
            while (ls >> tok) idx.push_back(std::stoi(tok.substr(0, tok.find('/'))) - 1);
            for (int k : idx) check_index(m, k);
            if (tag == "l") m.lines.push_back(idx);
            else if (idx.size() == 3) m.triangles.push_back({idx[0], idx[1], idx[2]});
            else fail(ErrorCode::BadInput, "only triangles are supported: " + line);
        }
    }
    return m;
}

std::string to_ply(const PolyMesh& m) {
    size_t segments = 0;
    for (auto& l : m.lines) segments += l.size() - 1;
    std::ostringstream o;
    o << "ply\nformat ascii 1.0\ncomment horonet\n";
    if (!m.warning.empty()) o << "comment warning: " << m.warning << "\n";
    o << "element vertex " << m.points.size() << "\nproperty double x\nproperty double y\nproperty double z\n";
    o << "element face " << m.triangles.size() << "\nproperty list uchar int vertex_indices\n";
    o << "element edge " << segments << "\nproperty int vertex1\nproperty int vertex2\nend_header\n";
    for (auto& p : m.points) o << num(p[0]) << " " << num(p[1]) << " " << num(p[2]) << "\n";
    for (auto& t : m.triangles) o << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
    for (auto& l : m.lines)
        for (size_t k = 0; k + 1 < l.size(); ++k) o << l[k] << " " << l[k + 1] << "\n";
    return o.str();
}

PolyMesh from_ply(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    size_t nv = 0, nf = 0, ne = 0;
    if (!std::getline(in, line) || line != "ply") fail(ErrorCode::BadInput, "not a PLY file");
    while (std::getline(in, line) && line != "end_header") {
        std::istringstream ls(line);
        std::string a, b;
        size_t n = 0;
        ls >> a;
        if (a != "element") continue;
        ls >> b >> n;
        if (b == "vertex") nv = n;
        else if (b == "face") nf = n;
        else if (b == "edge") ne = n;
    }
    if (line != "end_header") fail(ErrorCode::BadInput, "PLY header not terminated");
    PolyMesh m;
    for (size_t k = 0; k < nv; ++k) {
        std::array<double, 3> p;
        if (!(in >> p[0] >> p[1] >> p[2])) fail(ErrorCode::BadInput, "truncated PLY vertex list");
        m.points.push_back(p);
    }
    for (size_t k = 0; k < nf; ++k) {
        int c;
        std::array<int, 3> t;
        if (!(in >> c >> t[0] >> t[1] >> t[2]) || c != 3) fail(ErrorCode::BadInput, "only triangles are supported");
        for (int i : t) check_index(m, i);
        m.triangles.push_back(t);
    }
    for (size_t k = 0; k < ne; ++k) {
        int a, b;
        if (!(in >> a >> b)) fail(ErrorCode::BadInput, "truncated PLY edge list");
        check_index(m, a);
        check_index(m, b);
        m.lines.push_back({a, b});
    }
    return m;
}

std::string convergence_csv(const ConvergenceReport& rep) {
    std::ostringstream o;
    o << "eps,vertices,newton_iterations,frame_err,surf_err,s1_err,hopf_err,s1_center,hopf_center,frame_order,surf_order,"
         "s1_order,hopf_order\n";
    double fo = rep.order(&ConvergenceRow::frame_error), so = rep.order(&ConvergenceRow::surface_error),
           sc = rep.order(&ConvergenceRow::schwarzian_error), ho = rep.order(&ConvergenceRow::hopf_error);
    for (auto& r : rep.rows)
        o << num(r.eps) << "," << r.vertices << "," << r.newton_iterations << "," << num(r.frame_error) << ","
          << num(r.surface_error) << "," << num(r.schwarzian_error) << "," << num(r.hopf_error) << "," << num(r.s1_center)
          << "," << num(r.hopf_center) << "," << num(fo) << "," << num(so) << "," << num(sc) << "," << num(ho) << "\n";
    return o.str();
}

json convergence_json(const ConvergenceReport& rep) {
    auto n = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
    json rows = json::array();
    for (auto& r : rep.rows)
        rows.push_back({{"eps", r.eps},
                        {"vertices", r.vertices},
                        {"newton_iterations", r.newton_iterations},
                        {"frame_error", n(r.frame_error)},
                        {"surface_error", n(r.surface_error)},
                        {"schwarzian_error", n(r.schwarzian_error)},
                        {"hopf_error", n(r.hopf_error)},
                        {"s1_center", n(r.s1_center)},
                        {"hopf_center", n(r.hopf_center)}});
    return {{"case", rep.case_name},
            {"pipeline", rep.pipeline},
            {"lattice", {rep.alpha, rep.beta, M_PI - rep.alpha - rep.beta}},
            {"margin", rep.margin},
            {"umbilic", rep.umbilic},
            {"boundary_scale", "log|h'|"},
            {"rows", rows},
            {"orders",
             {{"frame", n(rep.order(&ConvergenceRow::frame_error))},
              {"surface", n(rep.order(&ConvergenceRow::surface_error))},
              {"schwarzian", n(rep.order(&ConvergenceRow::schwarzian_error))},
              {"hopf", n(rep.order(&ConvergenceRow::hopf_error))}}}};
}

json manifest_to_json(const RunManifest& m) {
    json inputs = json::array();
    for (auto& [path, hash] : m.inputs) inputs.push_back({{"path", path}, {"sha256", hash}});
    return {{"subcommand", m.subcommand}, {"inputs", inputs},         {"tolerances", m.tolerances},
            {"seed_face", m.seed_face},   {"version", m.version},     {"timestamp", m.timestamp},
            {"extra", m.extra}};
}

RunManifest manifest_from_json(const json& j) {
    RunManifest m;
    m.subcommand = field(j, "subcommand").get<std::string>();
    for (auto& x : field(j, "inputs")) m.inputs.emplace_back(field(x, "path").get<std::string>(), field(x, "sha256").get<std::string>());
    m.tolerances = field(j, "tolerances").get<std::map<std::string, double>>();
    m.seed_face = field(j, "seed_face").get<int>();
    m.version = field(j, "version").get<std::string>();
    m.timestamp = field(j, "timestamp").get<std::string>();
    m.extra = j.value("extra", json::object());
    return m;
}

std::string run_timestamp() {
    std::time_t t;
    if (const char* s = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(s, nullptr, 10));
    else t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

const char* tool_version() { return "0.1.0"; }

std::string sha256_hex(const std::string& bytes) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (!EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr))
        fail(ErrorCode::BadInput, "sha256 failed");
    std::ostringstream o;
    for (unsigned int k = 0; k < len; ++k) o << std::hex << std::setw(2) << std::setfill('0') << int(md[k]);
    return o.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorCode::BadInput, "cannot read " + path);
    std::ostringstream o;
    o << in.rdbuf();
    return o.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorCode::BadInput, "cannot write " + path);
    out << bytes;
}

json load_json(const std::string& path) {
    try {
        return json::parse(read_file(path));
    } catch (const json::exception& e) {
        fail(ErrorCode::BadInput, path + ": " + e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace horonet::io
