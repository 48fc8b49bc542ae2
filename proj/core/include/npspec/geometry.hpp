#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "npspec/errors.hpp"

namespace npspec::geom {

using Vec3 = Eigen::Vector3d;

/// Great-circle arc w(s) = cos(s) p + sin(s) t, s in [0, length].
struct Arc {
    Vec3 p;           // start corner
    Vec3 t;           // unit tangent at p, tangent to the face
    double length;    // in (0, pi)
    Vec3 face_normal; // outward normal of the flat face carrying the arc

    Vec3 point(double s) const { return std::cos(s) * p + std::sin(s) * t; }
    Vec3 tangent(double s) const { return -std::sin(s) * p + std::cos(s) * t; }
};

/// Closed simple curve of great-circle arcs on S^2. Corner j joins arc j-1 to
/// arc j; the interior of the spherical polygon lies to the left of travel.
struct SphericalPolygon {
    std::vector<Vec3> corners;
    std::vector<Arc> arcs;        // arcs[j] runs corners[j] -> corners[j+1 mod J]
    std::vector<double> angles;   // interior angle at corners[j], in (0, 2pi)
    double cutoff = 0.0;          // corner-distance cutoff of the weight q

    std::size_t size() const { return corners.size(); }
    double min_arc_length() const;
    /// Weight q on arc j: arc distance to the nearest corner, capped at cutoff.
    double weight(std::size_t j, double s) const;
};

struct PolyhedralCone {
    std::vector<Vec3> edges;        // unit edge directions, interior-left order
    std::vector<Vec3> face_normals; // outward, face j between edges j and j+1
    SphericalPolygon cross_section;
    bool convex = false;
    bool lipschitz = false;
};

struct Polyhedron {
    std::vector<Vec3> vertices;
    std::vector<std::vector<int>> faces; // vertex cycles, CCW seen from outside
};

/// Builds the cone spanned by consecutive pairs of the given cyclically ordered
/// edge directions. Faces are the convex sectors between neighbours.
PolyhedralCone cone_from_edges(const std::vector<Vec3>& edges);

/// One tangent cone per vertex, edges in umbrella order around the vertex.
/// Face sectors of opening >= pi are split by flat corners (angle pi) so that
/// every arc stays shorter than pi.
std::vector<PolyhedralCone> tangent_cones(const Polyhedron& poly);

struct ArcSample {
    Vec3 point;
    Vec3 normal; // face normal at the sample
    double q;    // weight value
};

/// Point at arc length s from the start corner of arc j.
ArcSample arc_point(const SphericalPolygon& polygon, std::size_t j, double s);

/// Radial graph test: true iff some axis u was found for which every great
/// semicircle from u to -u crosses the polygon exactly once. Sampling based
/// (candidate axes + 720 semicircles); exact for convex cones.
bool is_lipschitz(const PolyhedralCone& cone);

} // namespace npspec::geom
