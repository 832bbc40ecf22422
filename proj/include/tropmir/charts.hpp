#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tropmir/lattice.hpp"
#include "tropmir/tropical.hpp"

namespace tropmir::charts {

// Labeled chart diagrams: one object per chart with a coordinate id set, and
// one restriction arrow per chart/overlap incidence that inverts exactly one
// coordinate. Identifiers are complement region ids on the graph side and
// triangulation point ids on the fan side; everything else is derived text.

enum class ObjectKind { Vertex, Edge };

struct ChartObject {
    ObjectKind kind = ObjectKind::Vertex;
    int source_id = 0;          // graph vertex / triangle for Vertex; global edge id for Edge
    std::vector<int> ids;       // coordinate identifiers, ascending (3 for Vertex, 2 for Edge)
    std::string chart_type;     // "affine-3-space" or "torus-affine-2-space"
    std::string function_label; // product of the coordinate variables, e.g. "t0*t1*t2"

    bool operator==(const ChartObject&) const = default;
};

struct RestrictionArrow {
    int from = 0;     // index of a Vertex object
    int to = 0;       // index of an Edge object
    int inverted = 0; // the coordinate id sent to the inverted variable
    std::string mapping_label;

    bool operator==(const RestrictionArrow&) const = default;
};

struct ChartDiagram {
    std::vector<ChartObject> objects; // Vertex objects first, then Edge objects
    std::vector<RestrictionArrow> arrows;

    bool operator==(const ChartDiagram&) const = default;
};

std::string product_label(const std::vector<int>& ids);
std::string restriction_label(const std::vector<int>& kept_ids, int inverted);

// One object per trivalent vertex (its three surrounding regions) and per
// edge (its two flanking regions); arrows invert the region opposite the
// edge. Rejects loops and any vertex whose sectors do not see three distinct
// regions.
ChartDiagram build_B_diagram(const tropical::TropicalGraph& g);

// One object per triangle (its three points) and per primal edge (its two
// points); arrows invert the triangle point off the edge. Edge objects appear
// in ascending point-pair order, so their positions match the edge ids of
// dual_tropical_graph.
ChartDiagram build_cech_diagram(const lattice::Triangulation& t);

struct DiagramMatch {
    bool ok = false;
    std::vector<int> object_map;             // index in d1 -> index in d2
    std::vector<std::pair<int, int>> id_map; // coordinate id renaming, ascending
    std::string failure;
};

// Searches for a label-preserving bijection of objects and arrows together
// with a renaming of coordinate ids. The positional bijection is tried first
// and wins for diagrams built from a triangulation and its dual.
DiagramMatch diagram_isomorphic(const ChartDiagram& d1, const ChartDiagram& d2);

// A subgraph keeps whole edges: every edge at a kept vertex must be kept.
// Ids refer to object source ids (graph vertices and global edge ids).
struct SubgraphSpec {
    std::vector<int> vertices;
    std::vector<int> edges;
};

// Induced sub-diagram on the chosen objects, order preserved. Arrows survive
// exactly when both ends do.
ChartDiagram restrict_diagram(const ChartDiagram& d, const SubgraphSpec& sub);

}  // namespace tropmir::charts
