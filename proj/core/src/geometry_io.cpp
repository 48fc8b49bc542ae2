#include <charconv>
#include <system_error>

#include <nlohmann/json.hpp>

#include "npspec/io.hpp"

namespace npspec::io {

using nlohmann::ordered_json;

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

geom::Vec3 parse_vec3(const ordered_json& j, const char* what) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() ||
        !j[1].is_number() || !j[2].is_number())
        throw ParseError(std::string(what) + ": expected [x, y, z]");
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

} // namespace

GeometryFile parse_geometry_json(const std::string& text) {
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw ParseError(std::string("geometry file is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ParseError("geometry file must be a JSON object");

    GeometryFile g;
    if (j.contains("edges")) {
        g.kind = GeometryKind::cone;
        for (const auto& e : j.at("edges")) g.edges.push_back(parse_vec3(e, "edge"));
        return g;
    }
    if (j.contains("vertices") && j.contains("faces")) {
        g.kind = GeometryKind::polyhedron;
        for (const auto& v : j.at("vertices"))
            g.poly.vertices.push_back(parse_vec3(v, "vertex"));
        for (const auto& f : j.at("faces")) {
            if (!f.is_array()) throw ParseError("face: expected an index array");
            std::vector<int> cycle;
            for (const auto& idx : f) {
                if (!idx.is_number_integer()) throw ParseError("face index must be integer");
                cycle.push_back(idx.get<int>());
            }
            g.poly.faces.push_back(std::move(cycle));
        }
        return g;
    }
    throw ParseError("geometry file needs either \"edges\" or \"vertices\"+\"faces\"");
}

std::string emit_geometry_json(const GeometryFile& g) {
    ordered_json j;
    auto vec = [](const geom::Vec3& v) {
        return ordered_json::array({v.x(), v.y(), v.z()});
    };
    if (g.kind == GeometryKind::cone) {
        auto arr = ordered_json::array();
        for (const auto& e : g.edges) arr.push_back(vec(e));
        j["edges"] = std::move(arr);
    } else {
        auto vs = ordered_json::array();
        for (const auto& v : g.poly.vertices) vs.push_back(vec(v));
        j["vertices"] = std::move(vs);
        auto fs = ordered_json::array();
        for (const auto& f : g.poly.faces) fs.push_back(f);
        j["faces"] = std::move(fs);
    }
    return j.dump(2) + "\n";
}

} // namespace npspec::io
