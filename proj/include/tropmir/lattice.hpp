#pragma once

#include "tropmir/common.hpp"
#include "tropmir/numeric.hpp"
#include "tropmir/tropical.hpp"

#include <array>
#include <optional>
#include <vector>

namespace tropmir::lattice {

// Convex lattice polygon, vertices counterclockwise with no collinear runs.
struct LatticePolytope {
    std::vector<IVec2> vertices;
};

// Triangulation of the polytope: triangles index into points.
struct Triangulation {
    LatticePolytope polytope;
    std::vector<IVec2> points;
    std::vector<std::array<int, 3>> triangles;
};

// Counterclockwise hull of the points; used when no explicit polytope is given.
LatticePolytope convex_hull_polytope(const std::vector<IVec2>& points);

// Semantic validation: convex polytope, points inside it, every triangle
// unimodular and inside the polytope, pairwise interior-disjoint (exact
// polygon clipping), and total triangle area equal to the polytope area,
// which together force coverage. Out-of-range indices throw.
ValidationReport validate_triangulation(const Triangulation& t);

// Exact heights making the induced lift strictly convex across every interior
// edge (the certificate that the triangulation is regular), normalized so the
// first triangle lifts to the zero plane. Returns nullopt when no such lift
// exists. Performs structural checks only, not full validation.
std::optional<std::vector<Rat>> regular_lift(const Triangulation& t);

// Dual graph: one trivalent vertex per triangle placed at the gradient of the
// convex lift, one finite edge per interior primal edge, one ray per boundary
// primal edge. The momentum of the dual edge crossing primal edge s is the
// clockwise quarter turn of s traversed counterclockwise around the triangle
// the dual edge leaves; gradient placement makes every drawn direction
// positively proportional to its momentum. Non-regular input is rejected.
tropical::TropicalGraph dual_tropical_graph(const Triangulation& t);

// Toric chart census from the cones over the triangles: one chart per
// triangle, carrying its three point ids; charts are adjacent when the
// triangles share an edge, and the adjacency carries the two shared points.
struct Chart {
    std::array<int, 3> points;  // ascending point ids
};

struct ChartAdjacency {
    int a = 0, b = 0;            // chart ids, a < b
    std::array<int, 2> shared;   // ascending point ids of the shared edge
};

struct ChartSet {
    std::vector<Chart> charts;
    std::vector<ChartAdjacency> adjacencies;
};

ChartSet fan_charts(const Triangulation& t);

}  // namespace tropmir::lattice
