#include "planereg/io.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace planereg {

using nlohmann::json;

namespace {

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path, -1);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what(), -1, static_cast<long>(e.byte));
    }
}

void save_json(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing", -1);
    out << j.dump(2) << "\n";
}

json matrix_to_json(const RigidMotion& m) {
    json rows = json::array();
    for (int r = 0; r < 4; ++r) {
        json row = json::array();
        for (int c = 0; c < 4; ++c) {
            if (r < 3 && c < 3) row.push_back(m.rotation(r, c));
            else if (r < 3) row.push_back(m.translation[r]);
            else row.push_back(c == 3 ? 1.0 : 0.0);
        }
        rows.push_back(row);
    }
    return rows;
}

// ---- PLY ----------------------------------------------------------------

enum class PlyType { Float32, Float64, Uchar, OtherScalar, List };

struct PlyProperty {
    std::string name;
    PlyType type = PlyType::OtherScalar;
    std::size_t byte_size = 0;
};

std::pair<PlyType, std::size_t> ply_type(const std::string& t) {
    if (t == "float" || t == "float32") return {PlyType::Float32, 4};
    if (t == "double" || t == "float64") return {PlyType::Float64, 8};
    if (t == "uchar" || t == "uint8") return {PlyType::Uchar, 1};
    if (t == "char" || t == "int8") return {PlyType::OtherScalar, 1};
    if (t == "short" || t == "ushort" || t == "int16" || t == "uint16")
        return {PlyType::OtherScalar, 2};
    if (t == "int" || t == "uint" || t == "int32" || t == "uint32")
        return {PlyType::OtherScalar, 4};
    if (t == "int64" || t == "uint64") return {PlyType::OtherScalar, 8};
    return {PlyType::OtherScalar, 0};
}

}  // namespace

PointCloud read_ply(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path, -1);

    std::string line;
    long line_no = 0;
    auto next_line = [&]() -> std::string& {
        if (!std::getline(in, line)) throw ParseError(path + ": unexpected end of header", line_no);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return line;
    };

    if (next_line() != "ply") throw ParseError(path + ": missing ply magic", line_no);

    bool binary = false;
    bool in_vertex_element = false;
    bool seen_format = false;
    std::size_t vertex_count = 0;
    std::vector<PlyProperty> vertex_props;

    for (;;) {
        std::istringstream ls(next_line());
        std::string tok;
        ls >> tok;
        if (tok == "comment" || tok == "obj_info" || tok.empty()) continue;
        if (tok == "format") {
            std::string fmt, ver;
            ls >> fmt >> ver;
            if (fmt == "ascii") binary = false;
            else if (fmt == "binary_little_endian") binary = true;
            else if (fmt == "binary_big_endian")
                throw UnsupportedFormat(path + ": big-endian PLY is not supported");
            else throw ParseError(path + ": unknown format '" + fmt + "'", line_no);
            seen_format = true;
        } else if (tok == "element") {
            std::string name;
            std::size_t count = 0;
            ls >> name >> count;
            in_vertex_element = (name == "vertex");
            if (in_vertex_element) vertex_count = count;
        } else if (tok == "property") {
            if (!in_vertex_element) continue;  // properties of later elements are never read
            std::string type_name;
            ls >> type_name;
            if (type_name == "list") {
                throw UnsupportedFormat(path + ": list property in vertex element");
            }
            PlyProperty prop;
            std::tie(prop.type, prop.byte_size) = ply_type(type_name);
            if (prop.byte_size == 0) {
                throw ParseError(path + ": unknown property type '" + type_name + "'", line_no);
            }
            ls >> prop.name;
            vertex_props.push_back(prop);
        } else if (tok == "end_header") {
            break;
        } else {
            throw ParseError(path + ": unexpected header token '" + tok + "'", line_no);
        }
    }
    if (!seen_format) throw ParseError(path + ": header has no format line", line_no);

    int ix = -1, iy = -1, iz = -1, ir = -1, ig = -1, ib = -1;
    for (int i = 0; i < static_cast<int>(vertex_props.size()); ++i) {
        const std::string& n = vertex_props[i].name;
        if (n == "x") ix = i;
        else if (n == "y") iy = i;
        else if (n == "z") iz = i;
        else if (n == "red") ir = i;
        else if (n == "green") ig = i;
        else if (n == "blue") ib = i;
    }
    if (ix < 0 || iy < 0 || iz < 0) {
        throw ParseError(path + ": vertex element lacks x/y/z properties", line_no);
    }
    const bool has_colors = ir >= 0 && ig >= 0 && ib >= 0;

    PointCloud cloud;
    cloud.points.reserve(vertex_count);
    if (has_colors) {
        cloud.colors.emplace();
        cloud.colors->reserve(vertex_count);
    }

    if (!binary) {
        for (std::size_t v = 0; v < vertex_count; ++v) {
            std::istringstream ls(next_line());
            std::vector<double> values(vertex_props.size());
            for (std::size_t p = 0; p < vertex_props.size(); ++p) {
                if (!(ls >> values[p])) {
                    throw ParseError(path + ": malformed vertex row", line_no);
                }
            }
            cloud.points.emplace_back(values[ix], values[iy], values[iz]);
            if (has_colors) {
                cloud.colors->push_back({static_cast<std::uint8_t>(values[ir]),
                                         static_cast<std::uint8_t>(values[ig]),
                                         static_cast<std::uint8_t>(values[ib])});
            }
        }
    } else {
        std::size_t stride = 0;
        std::vector<std::size_t> offsets(vertex_props.size());
        for (std::size_t p = 0; p < vertex_props.size(); ++p) {
            offsets[p] = stride;
            stride += vertex_props[p].byte_size;
        }
        std::vector<char> row(stride);
        const auto read_value = [&](std::size_t p) -> double {
            const char* src = row.data() + offsets[p];
            switch (vertex_props[p].type) {
                case PlyType::Float32: {
                    float f;
                    std::memcpy(&f, src, 4);
                    return f;
                }
                case PlyType::Float64: {
                    double d;
                    std::memcpy(&d, src, 8);
                    return d;
                }
                case PlyType::Uchar: {
                    return static_cast<double>(static_cast<unsigned char>(*src));
                }
                default:
                    return 0.0;
            }
        };
        for (std::size_t v = 0; v < vertex_count; ++v) {
            const long offset = static_cast<long>(in.tellg());
            if (!in.read(row.data(), static_cast<std::streamsize>(stride))) {
                throw ParseError(path + ": truncated binary vertex data", -1, offset);
            }
            cloud.points.emplace_back(read_value(ix), read_value(iy), read_value(iz));
            if (has_colors) {
                cloud.colors->push_back({static_cast<std::uint8_t>(read_value(ir)),
                                         static_cast<std::uint8_t>(read_value(ig)),
                                         static_cast<std::uint8_t>(read_value(ib))});
            }
        }
    }
    return cloud;
}

void write_ply(const std::string& path, const PointCloud& cloud) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot open " + path + " for writing", -1);
    const bool colors = cloud.colors.has_value();
    out << "ply\nformat binary_little_endian 1.0\n";
    out << "element vertex " << cloud.points.size() << "\n";
    out << "property double x\nproperty double y\nproperty double z\n";
    if (colors) out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
    out << "end_header\n";
    for (std::size_t i = 0; i < cloud.points.size(); ++i) {
        const Vec3& p = cloud.points[i];
        double xyz[3] = {p.x(), p.y(), p.z()};
        out.write(reinterpret_cast<const char*>(xyz), sizeof(xyz));
        if (colors) {
            out.write(reinterpret_cast<const char*>((*cloud.colors)[i].data()), 3);
        }
    }
}

RigidMotion read_transform(const std::string& path) {
    const json j = load_json(path);
    if (!j.contains("matrix")) throw ParseError(path + ": missing 'matrix' key", -1);
    const json& m = j["matrix"];

    double v[4][4];
    if (m.is_array() && m.size() == 4 && m[0].is_array()) {
        for (int r = 0; r < 4; ++r) {
            if (m[r].size() != 4) throw ParseError(path + ": matrix row is not length 4", -1);
            for (int c = 0; c < 4; ++c) v[r][c] = m[r][c].get<double>();
        }
    } else if (m.is_array() && m.size() == 16) {
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) v[r][c] = m[r * 4 + c].get<double>();
    } else {
        throw ParseError(path + ": matrix must be 4x4 nested or flat 16-element", -1);
    }

    const double last[4] = {0, 0, 0, 1};
    for (int c = 0; c < 4; ++c) {
        if (std::abs(v[3][c] - last[c]) > 1e-9) {
            throw ParseError(path + ": last matrix row must be [0,0,0,1]", -1);
        }
    }

    RigidMotion motion;
    for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) motion.rotation(r, c) = v[r][c];
        motion.translation[r] = v[r][3];
    }
    const Mat3 rtr = motion.rotation.transpose() * motion.rotation;
    if ((rtr - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-6 ||
        std::abs(motion.rotation.determinant() - 1.0) > 1e-6) {
        throw ParseError(path + ": rotation block is not orthonormal", -1);
    }
    return motion;
}

void write_transform(const std::string& path, const RigidMotion& motion) {
    save_json(path, json{{"matrix", matrix_to_json(motion)}});
}

UpSpec UpSpec::parse(const std::string& text) {
    UpSpec spec;
    if (text == "from-planes") {
        spec.kind = Kind::FromPlanes;
        return spec;
    }
    if (text.rfind("file:", 0) == 0) {
        spec.kind = Kind::File;
        spec.path = text.substr(5);
        return spec;
    }
    double x = 0, y = 0, z = 0;
    char c1 = 0, c2 = 0;
    std::istringstream ss(text);
    if (ss >> x >> c1 >> y >> c2 >> z && c1 == ',' && c2 == ',') {
        if (x == 0 && y == 0 && z == 0) {
            throw ParseError("up vector must be non-zero: '" + text + "'", -1);
        }
        spec.kind = Kind::Explicit;
        spec.vector = Vec3(x, y, z);
        return spec;
    }
    throw ParseError("cannot parse up spec '" + text + "'", -1);
}

UnitVec3 resolve_up(const UpSpec& spec, const std::vector<Plane>& detected_planes) {
    switch (spec.kind) {
        case UpSpec::Kind::Explicit:
            return UnitVec3(spec.vector);
        case UpSpec::Kind::File: {
            const json j = load_json(spec.path);
            if (!j.is_array() || j.size() != 3) {
                throw ParseError(spec.path + ": up file must hold [x, y, z]", -1);
            }
            return UnitVec3(Vec3(j[0].get<double>(), j[1].get<double>(), j[2].get<double>()));
        }
        case UpSpec::Kind::FromPlanes:
            break;
    }

    const UnitVec3 y_axis(Vec3(0, 1, 0));
    const Plane* best = nullptr;
    for (const Plane& p : detected_planes) {
        if (relative_angle(p.normal, y_axis) >= deg_to_rad(30.0)) continue;
        if (!best || p.inliers.size() > best->inliers.size()) best = &p;
    }
    if (!best) {
        throw NoHorizontalPlane("resolve_up: no detected plane within 30 degrees of +Y");
    }
    const Vec3 n = best->normal.vec();
    return UnitVec3(n.y() >= 0 ? n : Vec3(-n));
}

void write_planes(const std::string& path, const std::vector<Plane>& planes) {
    json arr = json::array();
    for (const Plane& p : planes) {
        arr.push_back({{"normal", {p.normal.x(), p.normal.y(), p.normal.z()}},
                       {"offset", p.offset},
                       {"centroid", {p.centroid.x(), p.centroid.y(), p.centroid.z()}},
                       {"inlier_count", p.inliers.size()}});
    }
    save_json(path, json{{"planes", arr}});
}

void write_matches(const std::string& path, const MatchSet& matches,
                   const std::optional<MotionEstimate>& motion) {
    json arr = json::array();
    for (const Match& m : matches.matches) {
        arr.push_back({{"a", m.a},
                       {"b", m.b},
                       {"class", m.cls == PlaneClass::Horizontal ? "horizontal" : "vertical"},
                       {"inlier_dist", m.inlier_dist}});
    }
    json j{{"matches", arr}};
    if (motion) {
        j["motion"] = matrix_to_json(motion->motion);
        j["observed_dof"] = {{"rotation", motion->observed.rotation},
                             {"horizontal_full", motion->observed.horizontal_full},
                             {"horizontal_1d", motion->observed.horizontal_1d.has_value()},
                             {"vertical", motion->observed.vertical}};
    }
    save_json(path, j);
}

CorrespondenceSet read_correspondences(const std::string& path) {
    const json j = load_json(path);
    if (!j.is_array()) throw ParseError(path + ": expected a JSON array", -1);
    CorrespondenceSet corr;
    corr.pairs.reserve(j.size());
    for (const json& row : j) {
        if (!row.is_array() || row.size() != 6) {
            throw ParseError(path + ": each correspondence must be [ax,ay,az,bx,by,bz]", -1);
        }
        corr.pairs.emplace_back(
            Vec3(row[0].get<double>(), row[1].get<double>(), row[2].get<double>()),
            Vec3(row[3].get<double>(), row[4].get<double>(), row[5].get<double>()));
    }
    return corr;
}

void write_benchmark_csv(std::ostream& os, const std::vector<BenchmarkRow>& rows) {
    os << "noiseperc,roterrorrad,roterrorradstd,transerrormet,transerrormetstd,success,valid\n";
    const auto fmt = [](double v) {
        std::ostringstream ss;
        ss.precision(10);
        ss << v;
        return ss.str();
    };
    for (const BenchmarkRow& r : rows) {
        os << fmt(r.noise_level) << ',' << fmt(r.rot_error_mean) << ',' << fmt(r.rot_error_std)
           << ',' << fmt(r.trans_error_mean) << ',' << fmt(r.trans_error_std) << ','
           << fmt(r.success_pct) << ',' << fmt(r.validity_pct) << '\n';
    }
}

std::vector<EvalManifestEntry> read_eval_manifest(const std::string& path) {
    const json j = load_json(path);
    if (!j.contains("pairs") || !j["pairs"].is_array()) {
        throw ParseError(path + ": manifest needs a 'pairs' array", -1);
    }
    std::vector<EvalManifestEntry> entries;
    for (const json& e : j["pairs"]) {
        EvalManifestEntry entry;
        if (e.contains("transform") && !e["transform"].is_null()) {
            entry.transform_path = e["transform"].get<std::string>();
        }
        entry.correspondences_path = e.at("correspondences").get<std::string>();
        entry.elapsed_ms = e.value("elapsed_ms", 0.0);
        entries.push_back(entry);
    }
    return entries;
}

}  // namespace planereg
