#pragma once

#include <cmath>
#include <vector>

#include "npspec/geometry.hpp"

namespace npspec_test {

using npspec::geom::Polyhedron;
using npspec::geom::Vec3;

inline std::vector<Vec3> octant_edges() {
    return {Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(0, 0, 1)};
}

// square-based cone with all interior angles 2 pi / 3
inline std::vector<Vec3> pyramid_edges() {
    const double s = 1.0 / std::sqrt(3.0);
    return {Vec3(1, 1, 1) * s, Vec3(-1, 1, 1) * s, Vec3(-1, -1, 1) * s,
            Vec3(1, -1, 1) * s};
}

inline Polyhedron cube(double scale = 1.0) {
    Polyhedron p;
    p.vertices = {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 1, 0),
                  Vec3(0, 0, 1), Vec3(1, 0, 1), Vec3(1, 1, 1), Vec3(0, 1, 1)};
    for (auto& v : p.vertices) v *= scale;
    p.faces = {{0, 3, 2, 1}, {4, 5, 6, 7}, {0, 1, 5, 4},
               {1, 2, 6, 5}, {2, 3, 7, 6}, {3, 0, 4, 7}};
    return p;
}

inline Polyhedron tetrahedron() {
    Polyhedron p;
    p.vertices = {Vec3(1, 1, 1), Vec3(1, -1, -1), Vec3(-1, 1, -1),
                  Vec3(-1, -1, 1)};
    p.faces = {{1, 3, 2}, {0, 2, 3}, {0, 3, 1}, {0, 1, 2}};
    return p;
}

// union of [0,1]x[0,1]x[0,2] and [1,2]x[0,2]x[0,1]; the two bricks touch along
// a face strip and share the vertex (1,1,1), where the boundary is not a graph
inline Polyhedron two_brick() {
    Polyhedron p;
    p.vertices = {
        Vec3(0, 0, 0), // 0  A
        Vec3(1, 0, 0), // 1  B
        Vec3(2, 0, 0), // 2  C
        Vec3(2, 2, 0), // 3  D
        Vec3(1, 2, 0), // 4  E
        Vec3(1, 1, 0), // 5  F
        Vec3(0, 1, 0), // 6  G
        Vec3(0, 0, 2), // 7  H
        Vec3(1, 0, 2), // 8  I
        Vec3(1, 1, 2), // 9  J
        Vec3(0, 1, 2), // 10 K
        Vec3(1, 0, 1), // 11 L
        Vec3(2, 0, 1), // 12 M
        Vec3(2, 2, 1), // 13 N
        Vec3(1, 2, 1), // 14 O
        Vec3(1, 1, 1), // 15 P (touching vertex)
    };
    p.faces = {
        {0, 6, 5, 4, 3, 2, 1},  // bottom z = 0 (L-shaped)
        {7, 8, 9, 10},          // brick-1 top z = 2
        {11, 12, 13, 14, 15},   // brick-2 top z = 1
        {0, 1, 2, 12, 11, 8, 7},// front y = 0 (L-shaped)
        {6, 10, 9, 15, 5},      // brick-1 back y = 1
        {4, 14, 13, 3},         // brick-2 back y = 2
        {0, 7, 10, 6},          // left x = 0
        {2, 3, 13, 12},         // right x = 2
        {11, 15, 9, 8},         // seam x = 1, upper (faces +x)
        {5, 15, 14, 4},         // seam x = 1, far (faces -x)
    };
    return p;
}

inline int two_brick_touch_vertex() { return 15; }

} // namespace npspec_test
