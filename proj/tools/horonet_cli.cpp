// horonet command line: builds, verifies and exports nets from pattern files.
#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <sstream>

#include "horonet/errors.hpp"
#include "horonet/io.hpp"

using namespace horonet;
using namespace horonet::io;

namespace {

struct Outputs {
    std::string out, report, manifest;
    int arcs = 16;
};

void add_outputs(CLI::App* cmd, Outputs& o, bool geometry = true) {
    if (geometry) {
        cmd->add_option("--out", o.out, "geometry file (.obj or .ply)");
        cmd->add_option("--arcs", o.arcs, "segments per arc")->check(CLI::PositiveNumber);
    }
    cmd->add_option("--report", o.report, "JSON report");
    cmd->add_option("--manifest", o.manifest, "JSON run manifest");
}

void write_geometry(const std::string& path, const PolyMesh& m) {
    if (path.empty()) return;
    if (!m.warning.empty()) std::cerr << "warning: " << m.warning << "\n";
    bool ply = path.size() >= 4 && path.substr(path.size() - 4) == ".ply";
    write_file(path, ply ? to_ply(m) : to_obj(m));
}

void emit(const std::string& path, const json& j) {
    if (path.empty()) std::cout << dump(j);
    else write_file(path, dump(j));
}

RunManifest manifest(const std::string& sub, const std::vector<std::string>& inputs) {
    RunManifest m;
    m.subcommand = sub;
    for (auto& p : inputs) m.inputs.emplace_back(p, sha256_hex(read_file(p)));
    m.version = tool_version();
    m.timestamp = run_timestamp();
    return m;
}

void finish(const Outputs& o, RunManifest m) {
    if (!o.manifest.empty()) write_file(o.manifest, dump(manifest_to_json(m)));
}

std::pair<CirclePattern, CirclePattern> load_pair(const std::string& a, const std::string& b) {
    auto z = pattern_from_json(load_json(a));
    auto zt = pattern_on(z.disk, load_json(b));
    if (zt.disk->faces() != disk_from_json(load_json(b))->faces())
        fail(ErrorCode::MeshMismatch, "patterns are on different meshes");
    return {z, zt};
}

std::vector<double> split_numbers(const std::string& s) {
    std::vector<double> out;
    std::stringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            out.push_back(std::stod(tok));
        } catch (const std::exception&) {
            fail(ErrorCode::BadInput, "not a number: '" + tok + "'");
        }
    }
    return out;
}

std::vector<double> lattice_angles(const std::string& s) {
    auto ang = split_numbers(s);
    if (ang.size() != 3 || std::abs(ang[0] + ang[1] + ang[2] - 180.0) > 1e-9)
        fail(ErrorCode::BadInput, "lattice angles must be three degrees summing to 180");
    return ang;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"horonet: horospherical nets from circle patterns"};
    app.require_subcommand(1);

    std::string pattern, a, b, dot, netframe, case_name = "exp", pipeline = "solved", eps_list = "0.1,0.05,0.025",
                                             lattice = "60,60,60", grid = "6x6", mode = "cmc1", toda_in, toda_out,
                                             frame_out;
    double tol = 1e-10, t = 0.05, margin = 0.25;
    Outputs o;

    auto* check = app.add_subcommand("check", "verify closure and Delaunay conditions of a pattern");
    check->add_option("--pattern", pattern)->required();
    check->add_option("--tol", tol);
    add_outputs(check, o, false);

    auto* cmc1 = app.add_subcommand("cmc1", "CMC-1 net from a shear-matched pair");
    auto* equi = app.add_subcommand("equidistant", "equidistant net from an angle-matched pair");
    for (auto* c : {cmc1, equi}) {
        c->add_option("--a", a, "source pattern")->required();
        c->add_option("--b", b, "target pattern")->required();
        c->add_option("--frame-out", frame_out, "frame file for later use by dual");
        add_outputs(c, o);
    }

    auto* toda = app.add_subcommand("toda", "nets from a Toda-type solution");
    toda->add_option("--grid", grid, "vertex counts NxM of the square grid");
    toda->add_option("--input", toda_in, "Toda file instead of a grid");
    toda->add_option("--t", t);
    toda->add_option("--mode", mode)->check(CLI::IsMember({"cmc1", "equidistant"}));
    toda->add_option("--toda-out", toda_out, "write the Toda data used");
    add_outputs(toda, o);

    auto* minimal = app.add_subcommand("minimal", "discrete minimal surface from vertex velocities");
    minimal->add_option("--pattern", pattern)->required();
    minimal->add_option("--dot", dot, "{\"velocities\": [...]}")->required();
    add_outputs(minimal, o);

    auto* converge = app.add_subcommand("converge", "convergence report against smooth data");
    converge->add_option("--case", case_name)->check(CLI::IsMember({"exp", "square", "moebius"}));
    converge->add_option("--pipeline", pipeline)->check(CLI::IsMember({"sampled", "solved"}));
    converge->add_option("--eps", eps_list, "decreasing lattice sizes");
    converge->add_option("--lattice", lattice, "triangle angles in degrees");
    converge->add_option("--margin", margin, "fraction of K excluded on each side");
    converge->add_option("--out", o.out, "CSV report");
    converge->add_option("--report", o.report, "JSON report");
    converge->add_option("--manifest", o.manifest);

    std::string lattice_out, image_out;
    double eps_one = 0.1;
    auto* sample = app.add_subcommand("sample", "write a lattice pattern and its image under smooth data");
    sample->add_option("--case", case_name)->check(CLI::IsMember({"identity", "exp", "square", "moebius"}));
    sample->add_option("--pipeline", pipeline)->check(CLI::IsMember({"sampled", "solved"}));
    sample->add_option("--eps", eps_one)->check(CLI::PositiveNumber);
    sample->add_option("--lattice", lattice, "triangle angles in degrees");
    sample->add_option("--lattice-out", lattice_out);
    sample->add_option("--image-out", image_out);
    sample->add_option("--manifest", o.manifest);

    auto* dual = app.add_subcommand("dual", "dual CMC-1 net of a framed net");
    dual->add_option("--net-frame", netframe)->required();
    add_outputs(dual, o);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << json{{"error", "BadInput"}, {"code", int(ErrorCode::BadInput)}, {"message", e.what()}}.dump() << "\n";
        return int(ErrorCode::BadInput);
    }

    try {
        if (*check) {
            auto z = pattern_from_json(load_json(pattern));
            auto rep = verify_closure(cross_ratios_of(z));
            json r{{"product", rep.product},
                   {"sum", rep.sum},
                   {"branching", rep.branching},
                   {"non_delaunay", rep.non_delaunay},
                   {"tolerance", tol},
                   {"ok", rep.ok(tol) && rep.non_delaunay.empty()}};
            emit(o.report, r);
            auto m = manifest("check", {pattern});
            m.tolerances["closure"] = tol;
            finish(o, m);
            if (!rep.ok(tol)) fail(ErrorCode::ClosureViolation, "closure residuals exceed " + std::to_string(tol));
            if (!rep.non_delaunay.empty()) fail(ErrorCode::NotDelaunay, "pattern has non-Delaunay edges");
        } else if (*cmc1 || *equi) {
            auto [z, zt] = load_pair(a, b);
            if (*cmc1) {
                auto net = build_cmc1(z, zt);
                write_geometry(o.out, net_geometry(net, o.arcs));
                emit(o.report, net_report(net));
                if (!frame_out.empty()) write_file(frame_out, dump(frame_to_json(*net.frame)));
            } else {
                auto net = build_equidistant(z, zt);
                write_geometry(o.out, equidistant_geometry(net, o.arcs));
                emit(o.report, equidistant_report(net));
                if (!frame_out.empty() && net.frame) write_file(frame_out, dump(frame_to_json(*net.frame)));
            }
            auto m = manifest(*cmc1 ? "cmc1" : "equidistant", {a, b});
            m.tolerances = {{"shear_match", 1e-9}, {"delaunay", 1e-10}};
            m.extra["arcs"] = o.arcs;
            finish(o, m);
        } else if (*toda) {
            TodaSolution sol;
            std::vector<std::string> inputs;
            if (!toda_in.empty()) {
                sol = toda_from_json(load_json(toda_in));
                inputs.push_back(toda_in);
            } else {
                int n = 0, k = 0;
                char x = 0;
                std::istringstream gs(grid);
                if (!(gs >> n >> x >> k) || (x != 'x' && x != 'X')) fail(ErrorCode::BadInput, "grid must be NxM");
                sol = square_grid_toda(n, k);
            }
            if (!toda_out.empty()) write_file(toda_out, dump(toda_to_json(sol)));
            json report;
            if (mode == "cmc1") {
                auto net = cmc1_from_toda(sol, t);
                write_geometry(o.out, net_geometry(net, o.arcs));
                report = net_report(net);
            } else {
                auto pair = toda_pair(sol, t, -t);
                auto net = build_equidistant(pair.z, pair.zt);
                write_geometry(o.out, equidistant_geometry(net, o.arcs));
                report = equidistant_report(net);
            }
            report["toda"] = {{"t", t},
                              {"vertex_sum", sol.residuals.vertex_sum},
                              {"face_sum", sol.residuals.face_sum},
                              {"weighted_sum", sol.residuals.weighted_sum}};
            emit(o.report, report);
            auto m = manifest("toda", inputs);
            m.tolerances = {{"labeling", 1e-10}, {"pole_margin", 0.9}};
            m.extra = {{"grid", toda_in.empty() ? grid : ""}, {"t", t}, {"mode", mode}, {"arcs", o.arcs}};
            finish(o, m);
        } else if (*minimal) {
            auto z = pattern_from_json(load_json(pattern));
            std::vector<cplx> zdot;
            const json vel = load_json(dot);
            if (!vel.contains("velocities")) fail(ErrorCode::BadInput, "missing field 'velocities'");
            for (auto& v : vel["velocities"]) zdot.push_back(complex_from_json(v));
            auto frame = osculating_vector_field(z, zdot);
            auto pts = minimal_surface(frame);
            write_geometry(o.out, point_geometry(*z.disk, pts));
            json r{{"points", json::array()}, {"spread", point_spread(pts)}, {"edge_compatibility", edge_compatibility(frame, z)}};
            for (auto& p : pts) r["points"].push_back(p);
            emit(o.report, r);
            finish(o, manifest("minimal", {pattern, dot}));
        } else if (*sample) {
            auto ang = lattice_angles(lattice);
            auto data = smooth_case(case_name);
            auto spec = lattice_for(data, eps_one, ang[0] * M_PI / 180, ang[1] * M_PI / 180);
            auto p = pipeline == "solved" ? shear_preserving_solve(data, spec) : sampled_pattern(data, spec);
            if (!lattice_out.empty()) write_file(lattice_out, dump(pattern_to_json(p.lattice)));
            if (!image_out.empty()) write_file(image_out, dump(pattern_to_json(p.image)));
            if (lattice_out.empty() && image_out.empty()) std::cout << dump(pattern_to_json(p.image));
            auto m = manifest("sample", {});
            m.extra = {{"case", case_name}, {"pipeline", pipeline}, {"eps", eps_one}, {"lattice_degrees", ang},
                       {"newton_iterations", p.newton_iterations}, {"angle_residual", p.angle_residual}};
            finish(o, m);
        } else if (*converge) {
            auto eps = split_numbers(eps_list);
            auto ang = lattice_angles(lattice);
            auto rep = run_convergence(smooth_case(case_name), eps, pipeline, ang[0] * M_PI / 180, ang[1] * M_PI / 180, margin);
            if (o.out.empty()) std::cout << convergence_csv(rep);
            else write_file(o.out, convergence_csv(rep));
            if (!o.report.empty()) write_file(o.report, dump(convergence_json(rep)));
            auto m = manifest("converge", {});
            m.tolerances = {{"newton", 1e-12}, {"newton_accept", 1e-10}, {"margin", margin}};
            m.extra = {{"case", case_name}, {"pipeline", pipeline}, {"eps", eps}, {"lattice_degrees", ang},
                       {"boundary_scale", "log|h'|"}};
            finish(o, m);
        } else if (*dual) {
            auto F = frame_from_json(load_json(netframe));
            HorosphericalNet net;
            net.frame = F;
            auto d = dual_surface(net);
            write_geometry(o.out, net_geometry(d, o.arcs));
            emit(o.report, net_report(d));
            finish(o, manifest("dual", {netframe}));
        }
    } catch (const Error& e) {
        std::cerr << json{{"error", error_name(e.code())}, {"code", int(e.code())}, {"message", e.what()}}.dump() << "\n";
        return int(e.code());
    } catch (const std::exception& e) {
        std::cerr << json{{"error", "BadInput"}, {"code", int(ErrorCode::BadInput)}, {"message", e.what()}}.dump() << "\n";
        return int(ErrorCode::BadInput);
    }
    return 0;
}
