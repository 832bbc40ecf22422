#pragma once

#include "tropmir/common.hpp"
#include "tropmir/numeric.hpp"
#include "tropmir/ribbon.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace tropmir::tropical {

// Trivalent graph with integer momenta and an exact straight-line drawing.
// A finite edge stores the momentum for its a -> b orientation; reversing the
// orientation negates the momentum. An infinite edge is a ray leaving v and
// stores the outgoing momentum.
struct TropicalVertex {
    QVec2 pos;

    friend bool operator==(const TropicalVertex& l, const TropicalVertex& r) {
        return l.pos == r.pos;
    }
};

struct FiniteEdge {
    int a = 0, b = 0;
    IVec2 momentum;

    friend bool operator==(const FiniteEdge& l, const FiniteEdge& r) {
        return l.a == r.a && l.b == r.b && l.momentum == r.momentum;
    }
};

struct InfiniteEdge {
    int v = 0;
    IVec2 momentum;

    friend bool operator==(const InfiniteEdge& l, const InfiniteEdge& r) {
        return l.v == r.v && l.momentum == r.momentum;
    }
};

struct TropicalGraph {
    std::vector<TropicalVertex> vertices;
    std::vector<FiniteEdge> finite_edges;
    std::vector<InfiniteEdge> infinite_edges;

    friend bool operator==(const TropicalGraph& l, const TropicalGraph& r) {
        return l.vertices == r.vertices && l.finite_edges == r.finite_edges &&
               l.infinite_edges == r.infinite_edges;
    }
    friend bool operator!=(const TropicalGraph& l, const TropicalGraph& r) { return !(l == r); }
};

// Global edge ids: finite edge k is id k, infinite edge j is id F + j.
int edge_id_count(const TropicalGraph& g);

// Momentum conservation: at every vertex the outward momenta of the three
// incident edges sum to zero (equivalent to the inward form, which is its
// negation). Throws std::invalid_argument when some vertex is not trivalent.
ValidationReport check_balanced(const TropicalGraph& g);

// Primary criterion: at every vertex some pair of momenta is non-proportional.
// Whether the momenta also span Z^2 as a lattice is reported as a note only.
ValidationReport check_nondegenerate(const TropicalGraph& g);

// Index of the sublattice of Z^2 spanned by the vectors: 1 means they span,
// 0 means their rank is below two.
Int momenta_span_index(const std::vector<IVec2>& momenta);

// The drawing is an embedding: distinct vertex positions, every drawn edge
// direction positively proportional to its momentum (zero momenta rejected),
// and edges meet only at shared endpoints. Exact segment/ray intersection
// tests; any crossing or overlap is reported with the offending pair.
ValidationReport check_embedding(const TropicalGraph& g);

// All of the above in one report.
ValidationReport validate_tropical(const TropicalGraph& g);

struct InfiniteEdgeCount {
    std::size_t count = 0;
    // The maximum principle forces at least two on every valid graph; a false
    // value flags the input as inconsistent.
    bool at_least_two = false;
};
InfiniteEdgeCount infinite_edge_count(const TropicalGraph& g);

// --- sweep decomposition ----------------------------------------------------

// Local shape at the added vertex: how many of its edges stay noncompact
// right after the step (3 minus the number of glued edges).
enum class VertexCase { OneInfinite, TwoInfinite, ThreeInfinite };
std::string to_string(VertexCase c);

struct EdgeRecord {
    int id = 0;  // global edge id
    FiniteEdge edge;

    friend bool operator==(const EdgeRecord& l, const EdgeRecord& r) {
        return l.id == r.id && l.edge == r.edge;
    }
};

struct RayRecord {
    int id = 0;  // global edge id
    InfiniteEdge edge;

    friend bool operator==(const RayRecord& l, const RayRecord& r) {
        return l.id == r.id && l.edge == r.edge;
    }
};

// One vertex of the sweep, in increasing height order. glue_edges are the
// finite edges whose second endpoint arrives with this vertex; new_rays are
// the vertex's own infinite edges; new_open_edges lists the global ids of its
// edges still noncompact after the step (upward finite plus all rays).
struct GluingStep {
    int vertex = 0;
    Rat height;
    QVec2 position;
    std::vector<EdgeRecord> glue_edges;
    std::vector<RayRecord> new_rays;
    std::vector<int> new_open_edges;
    VertexCase vertex_case = VertexCase::ThreeInfinite;

    friend bool operator==(const GluingStep& l, const GluingStep& r) {
        return l.vertex == r.vertex && l.height == r.height && l.position == r.position &&
               l.glue_edges == r.glue_edges && l.new_rays == r.new_rays &&
               l.new_open_edges == r.new_open_edges && l.vertex_case == r.vertex_case;
    }
};

struct SweepDecomposition {
    IVec2 direction;
    std::vector<GluingStep> steps;
};

// Sweep by the height key (direction . pos, pos.x, pos.y), lexicographic; the
// tie-break plays the role of a direction of irrational slope, so any nonzero
// integer direction is accepted. Balancing caps glue_edges at two per step.
// Requires a valid graph (throws std::invalid_argument otherwise).
SweepDecomposition sweep_decompose(const TropicalGraph& g, const IVec2& direction);

// Rebuilds the graph from the per-step records; equality with the original is
// the round-trip soundness check.
TropicalGraph replay_sweep(const SweepDecomposition& sweep);

// Diagnostic behind the sweep induction, one entry per ray: deleting the
// ray's vertex must leave an original ray at some other vertex of the same
// component. A vertex carrying three rays is a whole component by itself and
// is reported as vacuously fine. Holds for every balanced nondegenerate
// graph; exposed as a check rather than assumed.
struct RaySurvival {
    int ray_id = 0;       // global edge id
    int vertex = 0;       // the ray's vertex
    bool vacuous = false; // three rays at the vertex, nothing to check
    bool survives = false;
};
std::vector<RaySurvival> ray_survival_diagnostic(const TropicalGraph& g);

// --- complement regions -----------------------------------------------------

// Connected components of the plane minus the drawn graph. Region ids come
// from face tracing of the one-point compactification; every edge side and
// every corner around a vertex carries a region id.
struct PlanarRegions {
    int region_count = 0;
    std::vector<bool> bounded;                            // per region
    std::vector<std::array<int, 3>> vertex_regions;       // per vertex, ccw corner order
    std::vector<std::array<int, 2>> finite_edge_regions;  // per finite edge, the two sides
    std::vector<std::array<int, 2>> infinite_edge_regions;
};
PlanarRegions planar_regions(const TropicalGraph& g);

// Genus of the mirror surface = bounded complement regions; punctures = rays.
ribbon::SurfaceInvariants mirror_invariants(const TropicalGraph& g);

}  // namespace tropmir::tropical
