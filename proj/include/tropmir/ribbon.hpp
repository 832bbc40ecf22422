#pragma once

#include "tropmir/common.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tropmir::ribbon {

using Dart = int;
using VertexId = int;
constexpr Dart kNoDart = -1;

// Where a face label lives: normally an anchor dart whose traced face carries
// the label; for the empty face of an isolated vertex, the vertex itself.
struct FaceAnchor {
    Dart dart = kNoDart;
    VertexId isolated_vertex = -1;

    friend bool operator==(const FaceAnchor& a, const FaceAnchor& b) {
        return a.dart == b.dart && a.isolated_vertex == b.isolated_vertex;
    }
};

// Combinatorial map: darts 0..H-1, involution sigma (fixed points are the
// single darts of external edges), incidence vertex_of, and a cyclic dart
// order per vertex. Everything downstream (faces, genus, moves, gluing) is
// derived from these three arrays.
struct RibbonGraph {
    std::vector<Dart> sigma;
    std::vector<VertexId> vertex_of;
    std::vector<std::vector<Dart>> cyclic_order;
    std::map<std::string, FaceAnchor> face_labels;

    int dart_count() const { return static_cast<int>(sigma.size()); }
    int vertex_count() const { return static_cast<int>(cyclic_order.size()); }
    bool is_external(Dart h) const { return sigma[h] == h; }

    // Edge identity: the smaller dart of a sigma orbit.
    Dart edge_of(Dart h) const { return h < sigma[h] ? h : sigma[h]; }
    int edge_count() const;
    int external_edge_count() const;

    // Next dart counterclockwise around vertex_of[h].
    Dart rho(Dart h) const;
    // Previous dart (clockwise neighbour).
    Dart rho_inv(Dart h) const;
    // Face permutation: rho(sigma(h)); external darts reflect.
    Dart face_next(Dart h) const { return rho(sigma[h]); }
};

struct FaceWalk {
    std::vector<Dart> walk;  // empty for the face of an isolated vertex
    VertexId isolated_vertex = -1;
    std::set<Dart> edges;            // edges visited (by edge_of id)
    std::set<VertexId> vertices;     // vertices visited
    bool is_cycle = false;           // boundary subgraph homeomorphic to a circle
    std::vector<std::string> labels; // labels anchored on this face

    bool contains(Dart h) const;
};

struct SurfaceInvariants {
    int genus = 0;
    int punctures = 0;
    friend bool operator==(const SurfaceInvariants& a, const SurfaceInvariants& b) {
        return a.genus == b.genus && a.punctures == b.punctures;
    }
    friend bool operator!=(const SurfaceInvariants& a, const SurfaceInvariants& b) {
        return !(a == b);
    }
};

ValidationReport validate_ribbon(const RibbonGraph& x);

// Face tracing; walks partition the dart set, plus one empty walk per
// isolated vertex. Order is deterministic (walks start at the smallest
// unvisited dart).
std::vector<FaceWalk> faces(const RibbonGraph& x);

// Index into faces(x) of the face holding the label; throws if missing.
int face_of_label(const RibbonGraph& x, const std::vector<FaceWalk>& fs, const std::string& label);
int face_of_dart(const std::vector<FaceWalk>& fs, Dart h);

bool has_cycle_at_face(const RibbonGraph& x, const std::string& label);

// Requires valid, connected, no external edges.
SurfaceInvariants surface_invariants(const RibbonGraph& x);
// Per connected component, same preconditions per component.
std::vector<SurfaceInvariants> component_invariants(const RibbonGraph& x);

int component_count(const RibbonGraph& x);
bool is_connected(const RibbonGraph& x);

// --- constructions ---------------------------------------------------------

RibbonGraph circle();
RibbonGraph figure_eight();
RibbonGraph theta();
RibbonGraph dumbbell();
// n parallel edges between two vertices; banana(3) == theta().
RibbonGraph banana(int n);
// g figure-eights and n-1 circles joined by end connect sums; (g,n) != (0,1).
RibbonGraph standard_skeleton(int g, int n);

RibbonGraph disjoint_union(const RibbonGraph& a, const RibbonGraph& b,
                           int* dart_offset = nullptr, int* vertex_offset = nullptr);

// New edge joining the face corner before dart c1 of x1 to the corner before
// dart c2 of x2; the two faces merge, labels carried over.
RibbonGraph end_connect_sum(const RibbonGraph& x1, Dart c1, const RibbonGraph& x2, Dart c2);

// --- moves ------------------------------------------------------------------

struct Move {
    enum class Kind { contract, expand, subdivide };
    Kind kind = Kind::contract;
    Dart edge_dart = kNoDart;        // contract / subdivide: any dart of the edge
    VertexId vertex = -1;            // expand
    std::vector<Dart> arc_a, arc_b;  // expand: split of the cyclic word, in order
};

RibbonGraph subdivide_edge(const RibbonGraph& x, Dart edge_dart);
RibbonGraph apply_move(const RibbonGraph& x, const Move& m);

struct MoveLog {
    std::vector<Move> moves;
    bool resynthesized = false;
    std::string note;
};

struct EnsureRequest {
    std::vector<std::string> targets;
    std::vector<std::string> preserve;
    bool disjoint = false;
    std::uint64_t seed = 0;
    int budget = 256;
};

// Rewrites x by contractions/expansions until every target label sits on a
// cycle face (preserve labels stay cycles throughout); falls back to an
// equivalent relabeled skeleton when the move search exhausts its budget.
std::pair<RibbonGraph, MoveLog> ensure_cycle_at_face(const RibbonGraph& x, const EnsureRequest& req);

// --- subgraphs, wheels, gluing ----------------------------------------------

struct Subgraph {
    std::set<VertexId> vertices;
    std::set<Dart> edges;  // edge_of ids
};

bool is_closed_subgraph(const RibbonGraph& x, const Subgraph& z);
// Closed and no vertex meets exactly one dart of z.
bool is_good_subgraph(const RibbonGraph& x, const Subgraph& z);

// N_Z(X): z plus one external spoke per dart at a z-vertex whose edge is not
// in z (an edge outside z with both endpoints in z contributes two spokes).
RibbonGraph tubular_neighborhood(const RibbonGraph& x, const Subgraph& z);

struct ClosedSubgraphOps {
    bool is_closed = false;
    bool is_good = false;
    RibbonGraph neighborhood;
};
ClosedSubgraphOps closed_subgraph_ops(const RibbonGraph& x, const Subgraph& z);

struct Wheel {
    RibbonGraph graph;
    std::vector<Dart> spokes;  // external darts in circle order
    std::string pattern;       // '+'/'-' classes aligned with spokes
};

struct WheelClass {
    int n1 = 0, n2 = 0;        // unordered: n1 >= n2
    std::string pattern;       // canonical cyclic pattern
    friend bool operator==(const WheelClass& a, const WheelClass& b) {
        return a.n1 == b.n1 && a.n2 == b.n2 && a.pattern == b.pattern;
    }
};

// pattern: cyclic word over +/- with n1 plus and n2 minus entries.
Wheel wheel(int n1, int n2, const std::string& pattern);
std::optional<WheelClass> classify_wheel(const RibbonGraph& x);
WheelClass canonical_wheel_class(const std::string& pattern);

// Summary of one side of a cover in a gluing certificate.
struct PieceSummary {
    int vertices = 0;
    int edges = 0;
    int components = 0;
};

struct GluingCertificate {
    bool ok = false;
    std::string failure;  // empty when ok
    PieceSummary u1, u2;  // the even pieces U1 = Z1 u N(Z12), U2
    std::vector<WheelClass> u12_wheels;  // the odd piece, one entry per circle of Z1 n Z2
    bool spoke_sides_match = false;      // wheel classes coincide with the z1/z2 side tags
};

GluingCertificate gluing_cover_check(const RibbonGraph& x, const Subgraph& z1, const Subgraph& z2);

// Replaces the two disjoint cycle faces labelled a and b with a single fresh
// circle carrying both sides' attachment points (side b reversed, rotated by
// offset). Returns the rewritten graph plus tracking data.
struct IdentifyResult {
    RibbonGraph graph;
    std::vector<Dart> dart_map;       // old dart -> new dart, kNoDart if deleted
    std::vector<VertexId> vertex_map; // identity here, kept for symmetry
    std::vector<Dart> circle_edges;   // edge ids of the new circle, in new numbering
    std::vector<VertexId> circle_points;
};

IdentifyResult identify_cycles(const RibbonGraph& z, const std::string& label_a,
                               const std::string& label_b, int offset);

// Disjoint union of x and y, then identify the paired cycle faces. Labels of
// the consumed faces disappear; all others are carried across.
RibbonGraph glue_along_cycles(const RibbonGraph& x, const std::vector<std::string>& cycles_x,
                              const RibbonGraph& y, const std::vector<std::string>& cycles_y,
                              const std::vector<int>& offsets);

// --- splitting ---------------------------------------------------------------

struct SplitResult {
    RibbonGraph rest;        // x minus the cycle, cut ends made external
    Wheel wheel_part;        // the cycle plus r spokes
    int r = 0;
    // Pairing (wheel spoke dart, rest external dart); rest dart is kNoDart for
    // spokes that were already external in x.
    std::vector<std::pair<Dart, Dart>> reconnect_pairs;
    RibbonGraph subdivided_input;  // x after the implicit subdivisions
};

SplitResult split_at_cycle(const RibbonGraph& x, const std::string& label);
RibbonGraph reconnect(const SplitResult& s);

// --- misc -------------------------------------------------------------------

// Drop external darts (used to close up split remainders for inspection).
RibbonGraph strip_external(const RibbonGraph& x);

// Canonical relabeling; equal strings iff isomorphic as unlabeled maps.
std::string canonical_encoding(const RibbonGraph& x);
bool isomorphic(const RibbonGraph& a, const RibbonGraph& b);

std::vector<std::pair<Dart, Dart>> edge_list(const RibbonGraph& x);

}  // namespace tropmir::ribbon
