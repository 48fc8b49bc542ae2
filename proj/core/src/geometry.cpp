#include "npspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <string>

namespace npspec::geom {

namespace {

constexpr double pi = 3.14159265358979323846;
constexpr double tol_unit = 1e-10;
constexpr double tol_angle = 1e-9;

Vec3 normalized(const Vec3& v, const char* what) {
    const double n = v.norm();
    if (n < 1e-12) throw DegenerateGeometry(std::string(what) + ": zero vector");
    return v / n;
}

// Interior angle at a corner: angle from the outgoing arc tangent to the
// reversed incoming arc tangent, measured through the interior (left side).
double interior_angle(const Vec3& corner, const Vec3& back, const Vec3& out) {
    const Vec3 b = corner.cross(out);
    double th = std::atan2(back.dot(b), back.dot(out));
    if (th <= 0) th += 2.0 * pi;
    return th;
}

// Arc from c0 to c1 on the face with outward normal n. Travel direction is
// fixed by the interior-left convention, t = c0 x n.
Arc make_arc(const Vec3& c0, const Vec3& c1, const Vec3& n) {
    Arc a;
    a.p = c0;
    a.t = normalized(c0.cross(n), "arc tangent");
    a.face_normal = n;
    double len = std::atan2(c1.dot(a.t), c1.dot(a.p));
    if (len <= 0) len += 2.0 * pi;
    a.length = len;
    return a;
}

struct Sector {
    Vec3 from, to; // edge directions bounding the face
    Vec3 normal;   // outward face normal
};

// Split sectors of opening >= pi with flat corners so all arcs are < pi.
std::vector<Arc> sectors_to_arcs(const std::vector<Sector>& sectors) {
    std::vector<Arc> arcs;
    for (const auto& sec : sectors) {
        Arc whole = make_arc(sec.from, sec.to, sec.normal);
        int pieces = 1;
        if (whole.length >= pi - tol_angle)
            pieces = whole.length <= 1.45 * pi ? 2 : 3;
        for (int k = 0; k < pieces; ++k) {
            const double s0 = whole.length * k / pieces;
            const double s1 = whole.length * (k + 1) / pieces;
            Arc piece;
            piece.p = whole.point(s0);
            piece.t = whole.tangent(s0);
            piece.length = s1 - s0;
            piece.face_normal = sec.normal;
            arcs.push_back(piece);
        }
    }
    return arcs;
}

// Positions of a point x on the great circle of arc a, or -1 if off-circle.
double arc_coordinate(const Arc& a, const Vec3& x) {
    const Vec3 nu = a.p.cross(a.t);
    if (std::abs(x.dot(nu)) > 1e-9) return -1.0;
    double s = std::atan2(x.dot(a.t), x.dot(a.p));
    if (s < 0) s += 2.0 * pi;
    return s;
}

void check_simple(const std::vector<Arc>& arcs) {
    const std::size_t J = arcs.size();
    for (std::size_t i = 0; i < J; ++i) {
        for (std::size_t j = i + 1; j < J; ++j) {
            const bool adjacent = (j == i + 1) || (i == 0 && j == J - 1);
            const Vec3 ni = arcs[i].p.cross(arcs[i].t);
            const Vec3 nj = arcs[j].p.cross(arcs[j].t);
            Vec3 c = ni.cross(nj);
            if (c.norm() < 1e-10) {
                // same great circle: flag interior overlap of the two spans
                auto inside = [](const Arc& a, const Vec3& x) {
                    const double s = arc_coordinate(a, x);
                    return s > tol_angle && s < a.length - tol_angle;
                };
                if (inside(arcs[i], arcs[j].p) ||
                    inside(arcs[i], arcs[j].point(arcs[j].length)) ||
                    inside(arcs[j], arcs[i].p) ||
                    inside(arcs[j], arcs[i].point(arcs[i].length)))
                    throw SelfIntersecting("coplanar arcs overlap");
                continue;
            }
            c.normalize();
            for (const Vec3& x : {Vec3(c), Vec3(-c)}) {
                double si = arc_coordinate(arcs[i], x);
                double sj = arc_coordinate(arcs[j], x);
                if (si < 0 || sj < 0) continue;
                const bool on_i = si > -tol_angle && si < arcs[i].length + tol_angle;
                const bool on_j = sj > -tol_angle && sj < arcs[j].length + tol_angle;
                if (!on_i || !on_j) continue;
                if (adjacent) {
                    // the shared corner is a legitimate meeting point
                    const bool at_shared =
                        (j == i + 1) ? (si > arcs[i].length - tol_angle && sj < tol_angle)
                                     : (sj > arcs[j].length - tol_angle && si < tol_angle);
                    if (at_shared) continue;
                }
                throw SelfIntersecting("polygon arcs intersect away from shared corners");
            }
        }
    }
}

SphericalPolygon polygon_from_sectors(const std::vector<Sector>& sectors) {
    SphericalPolygon poly;
    poly.arcs = sectors_to_arcs(sectors);
    const std::size_t J = poly.arcs.size();
    if (J < 3) throw DegenerateGeometry("spherical polygon needs at least 3 arcs");
    for (const auto& a : poly.arcs) {
        if (!(a.length > tol_angle && a.length < pi - tol_angle))
            throw DegenerateGeometry("arc length outside (0, pi)");
        poly.corners.push_back(a.p);
    }
    // closure: each arc must end at the next corner
    for (std::size_t j = 0; j < J; ++j) {
        const Vec3 end = poly.arcs[j].point(poly.arcs[j].length);
        if ((end - poly.corners[(j + 1) % J]).norm() > tol_unit)
            throw DegenerateGeometry("polygon does not close");
    }
    for (std::size_t j = 0; j < J; ++j) {
        const Arc& in = poly.arcs[(j + J - 1) % J];
        const Vec3 back = -in.tangent(in.length);
        const double beta =
            interior_angle(poly.corners[j], back, poly.arcs[j].t);
        if (beta < tol_angle || beta > 2.0 * pi - tol_angle)
            throw DegenerateGeometry("interior angle collapsed");
        poly.angles.push_back(beta);
    }
    check_simple(poly.arcs);
    poly.cutoff = poly.min_arc_length() / 3.0;
    return poly;
}

bool convex_from_geometry(const std::vector<Vec3>& edges,
                          const std::vector<Vec3>& normals) {
    for (const auto& n : normals)
        for (const auto& e : edges)
            if (e.dot(n) > tol_unit) return false;
    return true;
}

// ---- radial graph (Lipschitz) sampling test ----

struct CrossingCount {
    int count = 0;
    bool clean = true;
};

CrossingCount count_crossings(const SphericalPolygon& poly, const Vec3& axis,
                              const Vec3& mid) {
    // semicircle from axis to -axis through mid; plane normal axis x mid
    CrossingCount r;
    Vec3 nu = axis.cross(mid);
    const double nn = nu.norm();
    if (nn < 1e-9) {
        r.clean = false;
        return r;
    }
    nu /= nn;
    for (const auto& a : poly.arcs) {
        const double A = nu.dot(a.p), B = nu.dot(a.t);
        const double R = std::hypot(A, B);
        if (R < 1e-12) { // arc inside the cutting circle
            r.clean = false;
            return r;
        }
        // f(s) = A cos s + B sin s = R cos(s - phi) vanishes at phi + pi/2 + k pi
        const double phi = std::atan2(B, A);
        for (int k = -2; k <= 2; ++k) {
            const double s = phi + 0.5 * pi + k * pi;
            if (s < -1e-12 || s > a.length + 1e-12) continue;
            if (s < 1e-7 || s > a.length - 1e-7) { // too close to a corner
                r.clean = false;
                return r;
            }
            const Vec3 x = a.point(s);
            const double side = x.dot(mid) - x.dot(axis) * axis.dot(mid);
            if (std::abs(side) < 1e-9) {
                r.clean = false;
                return r;
            }
            if (side > 0) ++r.count;
        }
    }
    return r;
}

bool axis_is_graph(const SphericalPolygon& poly, const Vec3& axis) {
    // an arc lying in a plane through the axis is a vertical segment of the
    // would-be graph, and a corner at a pole leaves it undefined
    for (const auto& a : poly.arcs) {
        const Vec3 nu = a.p.cross(a.t);
        if (std::abs(nu.dot(axis)) < 1e-9) return false;
    }
    for (const auto& c : poly.corners)
        if (std::abs(c.dot(axis)) > 1.0 - 1e-9) return false;

    Vec3 e1 = axis.cross(Vec3(1, 0, 0));
    if (e1.norm() < 1e-6) e1 = axis.cross(Vec3(0, 1, 0));
    e1.normalize();
    const Vec3 e2 = axis.cross(e1);
    const int samples = 720;
    for (int i = 0; i < samples; ++i) {
        double phi = 2.0 * pi * i / samples;
        Vec3 mid = std::cos(phi) * e1 + std::sin(phi) * e2;
        CrossingCount c = count_crossings(poly, axis, mid);
        if (!c.clean) { // jitter once past corner alignments
            phi += 3.1e-4;
            mid = std::cos(phi) * e1 + std::sin(phi) * e2;
            c = count_crossings(poly, axis, mid);
        }
        if (!c.clean || c.count != 1) return false;
    }
    return true;
}

} // namespace

double SphericalPolygon::min_arc_length() const {
    double m = arcs.empty() ? 0.0 : arcs[0].length;
    for (const auto& a : arcs) m = std::min(m, a.length);
    return m;
}

double SphericalPolygon::weight(std::size_t j, double s) const {
    const double ell = arcs[j].length;
    return std::min({s, ell - s, cutoff});
}

ArcSample arc_point(const SphericalPolygon& polygon, std::size_t j, double s) {
    if (j >= polygon.arcs.size()) throw OutOfRange("arc_point: arc index");
    const Arc& a = polygon.arcs[j];
    if (s < -1e-15 || s > a.length + 1e-15)
        throw OutOfRange("arc_point: s outside [0, arc length]");
    s = std::clamp(s, 0.0, a.length);
    return {a.point(s), a.face_normal, polygon.weight(j, s)};
}

bool is_lipschitz(const PolyhedralCone& cone) {
    if (cone.convex) return true;
    std::vector<Vec3> axes;
    Vec3 esum = Vec3::Zero(), nsum = Vec3::Zero();
    for (const auto& e : cone.edges) esum += e;
    for (const auto& n : cone.face_normals) nsum += n;
    if (esum.norm() > 1e-9) axes.push_back(esum.normalized());
    if (nsum.norm() > 1e-9) axes.push_back(nsum.normalized());
    for (int ix = -1; ix <= 1; ++ix)
        for (int iy = -1; iy <= 1; ++iy)
            for (int iz = -1; iz <= 1; ++iz) {
                if (!ix && !iy && !iz) continue;
                axes.push_back(Vec3(ix, iy, iz).normalized());
            }
    for (const auto& u : axes)
        if (axis_is_graph(cone.cross_section, u)) return true;
    return false;
}

PolyhedralCone cone_from_edges(const std::vector<Vec3>& edges_in) {
    if (edges_in.size() < 3)
        throw DegenerateGeometry("cone needs at least 3 edges");
    std::vector<Vec3> edges;
    edges.reserve(edges_in.size());
    for (const auto& e : edges_in) edges.push_back(normalized(e, "edge"));

    const std::size_t J = edges.size();
    auto build_normals = [&](const std::vector<Vec3>& ed) {
        std::vector<Vec3> normals;
        for (std::size_t j = 0; j < J; ++j) {
            const Vec3 c = ed[(j + 1) % J].cross(ed[j]);
            if (c.norm() < 1e-10)
                throw DegenerateGeometry("consecutive edges parallel or antiparallel");
            normals.push_back(c.normalized());
        }
        return normals;
    };

    std::vector<Vec3> normals = build_normals(edges);
    // orientation: outward normals must point away from the interior sample
    Vec3 sample = Vec3::Zero();
    for (const auto& e : edges) sample += e;
    if (sample.norm() < 1e-9)
        throw DegenerateGeometry("cannot orient edges: edge directions cancel");
    sample.normalize();
    int neg = 0, pos = 0;
    for (const auto& n : normals) (n.dot(sample) < 0 ? neg : pos)++;
    if (pos == static_cast<int>(J)) {
        std::reverse(edges.begin(), edges.end());
        normals = build_normals(edges);
    } else if (neg != static_cast<int>(J)) {
        throw DegenerateGeometry("ambiguous edge ordering around the cone axis");
    }

    std::vector<Sector> sectors;
    for (std::size_t j = 0; j < J; ++j)
        sectors.push_back({edges[j], edges[(j + 1) % J], normals[j]});

    PolyhedralCone cone;
    cone.edges = edges;
    cone.face_normals = normals;
    cone.cross_section = polygon_from_sectors(sectors);
    cone.convex = convex_from_geometry(edges, normals);
    cone.lipschitz = is_lipschitz(cone);
    return cone;
}

namespace {

Vec3 newell_normal(const Polyhedron& poly, const std::vector<int>& face) {
    Vec3 n = Vec3::Zero();
    for (std::size_t i = 0; i < face.size(); ++i) {
        const Vec3& a = poly.vertices[face[i]];
        const Vec3& b = poly.vertices[face[(i + 1) % face.size()]];
        n += a.cross(b);
    }
    return n;
}

void validate_mesh(const Polyhedron& poly) {
    if (poly.faces.size() < 4) throw InvalidMesh("too few faces");
    std::map<std::pair<int, int>, int> directed;
    for (const auto& face : poly.faces) {
        if (face.size() < 3) throw InvalidMesh("face with fewer than 3 vertices");
        for (std::size_t i = 0; i < face.size(); ++i) {
            int a = face[i], b = face[(i + 1) % face.size()];
            if (a < 0 || b < 0 || a >= static_cast<int>(poly.vertices.size()) ||
                b >= static_cast<int>(poly.vertices.size()))
                throw InvalidMesh("face references missing vertex");
            if (a == b) throw InvalidMesh("degenerate face edge");
            if (++directed[{a, b}] > 1)
                throw InvalidMesh("directed edge repeated: mesh not orientable");
        }
    }
    for (const auto& [e, cnt] : directed) {
        auto it = directed.find({e.second, e.first});
        if (it == directed.end())
            throw InvalidMesh("unmatched edge: mesh not closed");
    }
    // planarity of each face
    for (const auto& face : poly.faces) {
        Vec3 n = newell_normal(poly, face);
        if (n.norm() < 1e-12) throw InvalidMesh("face with vanishing area");
        n.normalize();
        const Vec3& p0 = poly.vertices[face[0]];
        for (int idx : face)
            if (std::abs(n.dot(poly.vertices[idx] - p0)) > 1e-8)
                throw InvalidMesh("non-planar face");
    }
}

} // namespace

std::vector<PolyhedralCone> tangent_cones(const Polyhedron& poly) {
    validate_mesh(poly);
    const int V = static_cast<int>(poly.vertices.size());

    struct Wedge {
        Vec3 entry, exit; // unit directions of the polyhedron edges at v
        Vec3 normal;      // outward face normal
    };
    std::vector<std::vector<Wedge>> wedges(V);
    for (const auto& face : poly.faces) {
        const Vec3 n = newell_normal(poly, face).normalized();
        const std::size_t k = face.size();
        for (std::size_t i = 0; i < k; ++i) {
            const int prev = face[(i + k - 1) % k], v = face[i],
                      next = face[(i + 1) % k];
            Wedge w;
            w.entry = normalized(poly.vertices[prev] - poly.vertices[v], "edge");
            w.exit = normalized(poly.vertices[next] - poly.vertices[v], "edge");
            w.normal = n;
            wedges[v].push_back(w);
        }
    }

    std::vector<PolyhedralCone> cones;
    for (int v = 0; v < V; ++v) {
        auto& ws = wedges[v];
        // vertices placed on a straight polyhedron edge sit in just two faces
        if (ws.size() < 2) throw InvalidMesh("vertex with fewer than 2 faces");
        // chain wedges: exit of one is the entry of the next
        std::vector<bool> used(ws.size(), false);
        std::vector<Sector> sectors;
        std::size_t cur = 0;
        used[0] = true;
        sectors.push_back({ws[0].entry, ws[0].exit, ws[0].normal});
        for (std::size_t step = 1; step < ws.size(); ++step) {
            bool found = false;
            for (std::size_t j = 0; j < ws.size(); ++j) {
                if (used[j]) continue;
                if ((ws[j].entry - ws[cur].exit).norm() < 1e-9) {
                    used[j] = true;
                    cur = j;
                    sectors.push_back({ws[j].entry, ws[j].exit, ws[j].normal});
                    found = true;
                    break;
                }
            }
            if (!found) throw InvalidMesh("vertex umbrella does not chain");
        }
        if ((ws[cur].exit - ws[0].entry).norm() > 1e-9)
            throw InvalidMesh("vertex umbrella does not close");

        PolyhedralCone cone;
        for (const auto& s : sectors) {
            cone.edges.push_back(s.from);
            cone.face_normals.push_back(s.normal);
        }
        cone.cross_section = polygon_from_sectors(sectors);
        cone.convex = convex_from_geometry(cone.edges, cone.face_normals);
        cone.lipschitz = is_lipschitz(cone);
        cones.push_back(std::move(cone));
    }
    return cones;
}

} // namespace npspec::geom
