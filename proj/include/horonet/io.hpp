#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "horonet/cmc1.hpp"
#include "horonet/convergence.hpp"
#include "horonet/equidistant.hpp"
#include "horonet/minimal.hpp"
#include "horonet/toda.hpp"

namespace horonet::io {

using json = nlohmann::json;

// Complex numbers as {"re","im"}; the point at infinity as "inf".
json to_json(cplx z);
json to_json(const SpherePoint& z);
json to_json(const Mat2& m);  // [[a, b], [c, d]]
cplx complex_from_json(const json& j);
SpherePoint point_from_json(const json& j);
Mat2 matrix_from_json(const json& j);

// {"faces": [[i,j,k],...], "positions": [...]}
json pattern_to_json(const CirclePattern& p);
DiskPtr disk_from_json(const json& j);
CirclePattern pattern_from_json(const json& j);
// Second pattern on the same mesh (the disk is shared, not rebuilt).
CirclePattern pattern_on(const DiskPtr& disk, const json& j);

// {"edges": [{"i","j","re","im"}]} with i < j
json cross_ratios_to_json(const CrossRatioSystem& X);
CrossRatioSystem cross_ratios_from_json(const DiskPtr& disk, const json& j);

// {"faces": [[...]], "positions": [...], "edges": [{"i","j","q_re","q_im"}]}
json toda_to_json(const TodaSolution& sol);
TodaSolution toda_from_json(const json& j);

// {"faces": [...], "source": [...], "target": [...], "frames": [{"face", "A"}]}
json frame_to_json(const MoebiusFrame& F);
MoebiusFrame frame_from_json(const json& j);

json net_report(const HorosphericalNet& net, const std::string& kind = "cmc1");
json equidistant_report(const EquidistantNet& net);

// Polylines and triangles in Poincare-ball coordinates.
struct PolyMesh {
    std::vector<std::array<double, 3>> points;
    std::vector<std::vector<int>> lines;
    std::vector<std::array<int, 3>> triangles;
    std::string warning;
};

// Dual vertices first (face order), then arc samples per interior edge, then face fans per interior vertex.
PolyMesh net_geometry(const HorosphericalNet& net, int arc_samples = 16);
// Geodesic segments between adjacent dual vertices.
PolyMesh equidistant_geometry(const EquidistantNet& net, int samples = 16);
// Straight edges between adjacent dual vertices.
PolyMesh point_geometry(const TriangulatedDisk& disk, const std::vector<Point3>& pts);

std::string to_obj(const PolyMesh& m);
std::string to_ply(const PolyMesh& m);
PolyMesh from_obj(const std::string& text);
// Polylines come back as two-point segments.
PolyMesh from_ply(const std::string& text);

// eps, vertices, frame_err, surf_err, s1_err, hopf_err, then the fitted orders repeated per row
std::string convergence_csv(const ConvergenceReport& rep);
json convergence_json(const ConvergenceReport& rep);

struct RunManifest {
    std::string subcommand;
    std::vector<std::pair<std::string, std::string>> inputs;  // path, sha256
    std::map<std::string, double> tolerances;
    int seed_face = 0;
    std::string version;
    std::string timestamp;
    json extra = json::object();
};

json manifest_to_json(const RunManifest& m);
RunManifest manifest_from_json(const json& j);
// Timestamp from SOURCE_DATE_EPOCH when set, else the current time (UTC, ISO 8601).
std::string run_timestamp();
const char* tool_version();

std::string sha256_hex(const std::string& bytes);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);
json load_json(const std::string& path);
// Two-space indented dump with a trailing newline.
std::string dump(const json& j);

} // namespace horonet::io
