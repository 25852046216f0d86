#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "planereg/evaluation.hpp"
#include "planereg/geometry.hpp"
#include "planereg/matching.hpp"
#include "planereg/toy_bench.hpp"

namespace planereg {

struct PointCloud {
    std::vector<Vec3> points;
    std::optional<std::vector<Rgb>> colors;
};

/// Reads ASCII or binary-little-endian PLY. Vertex x/y/z may be float32 or
/// float64; optional uchar red/green/blue become colors; other scalar vertex
/// properties are skipped. Throws ParseError (with a line number or byte
/// offset) on malformed input and UnsupportedFormat for big-endian files.
PointCloud read_ply(const std::string& path);

/// Writes points (and colors when present) as binary-little-endian PLY.
void write_ply(const std::string& path, const PointCloud& cloud);

/// 4x4 row-major homogeneous transform under a "matrix" key. On load the
/// last row must be [0,0,0,1] and the rotation block orthonormal within
/// 1e-6; anything else is rejected with ParseError. Convention: maps view-a
/// coordinates to view-b coordinates.
RigidMotion read_transform(const std::string& path);
void write_transform(const std::string& path, const RigidMotion& motion);

/// Reference-direction source: a near-horizontal detected plane, an
/// explicit vector, or a JSON file holding [x, y, z].
struct UpSpec {
    enum class Kind { FromPlanes, Explicit, File } kind = Kind::FromPlanes;
    Vec3 vector = Vec3::Zero();
    std::string path;

    /// Parses "from-planes", "x,y,z", or "file:<path>".
    static UpSpec parse(const std::string& text);
};

/// Resolves an UpSpec against the detected planes: for FromPlanes, the
/// normal of the largest-inlier plane within 30 degrees of +Y, sign-aligned
/// to +Y; throws NoHorizontalPlane when there is none.
UnitVec3 resolve_up(const UpSpec& spec, const std::vector<Plane>& detected_planes);

void write_planes(const std::string& path, const std::vector<Plane>& planes);

void write_matches(const std::string& path, const MatchSet& matches,
                   const std::optional<MotionEstimate>& motion);

CorrespondenceSet read_correspondences(const std::string& path);

/// Benchmark rows as CSV with the columns
/// noiseperc,roterrorrad,roterrorradstd,transerrormet,transerrormetstd,success,valid
void write_benchmark_csv(std::ostream& os, const std::vector<BenchmarkRow>& rows);

/// Batch-eval manifest: {"pairs": [{"transform": path|null,
/// "correspondences": path, "elapsed_ms": number}, ...]}.
struct EvalManifestEntry {
    std::optional<std::string> transform_path;  // unregistered when absent
    std::string correspondences_path;
    double elapsed_ms = 0.0;
};
std::vector<EvalManifestEntry> read_eval_manifest(const std::string& path);

}  // namespace planereg
