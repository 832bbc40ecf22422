#include "tropmir/skeleton.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace tropmir::skeleton {

namespace {

using ribbon::Dart;
using ribbon::FaceAnchor;
using ribbon::RibbonGraph;
using ribbon::Subgraph;
using ribbon::VertexId;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument(msg);
}

void label_face(RibbonGraph& x, const std::vector<ribbon::FaceWalk>& fs, int face,
                const std::string& name) {
    FaceAnchor anc;
    if (fs[face].walk.empty())
        anc.isolated_vertex = fs[face].isolated_vertex;
    else
        anc.dart = fs[face].walk.front();
    x.face_labels[name] = anc;
}

// Theta with its three cycle faces labelled in face-trace order.
RibbonGraph labeled_theta(const std::array<std::string, 3>& names) {
    RibbonGraph t = ribbon::theta();
    auto fs = ribbon::faces(t);
    for (int i = 0; i < 3; ++i) label_face(t, fs, i, names[i]);
    return t;
}

// Dumbbell with its two loop cycle faces as gluing circles and the long face
// as the surviving open face.
RibbonGraph labeled_dumbbell(const std::string& glue_a, const std::string& glue_b,
                             const std::string& open_name) {
    RibbonGraph d = ribbon::dumbbell();
    auto fs = ribbon::faces(d);
    std::vector<int> cycles, rest;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i)
        (fs[i].is_cycle ? cycles : rest).push_back(i);
    require(cycles.size() == 2 && rest.size() == 1, "labeled_dumbbell: unexpected face census");
    label_face(d, fs, cycles[0], glue_a);
    label_face(d, fs, cycles[1], glue_b);
    label_face(d, fs, rest[0], open_name);
    return d;
}

// Image of a subgraph after an identify_cycles surgery; edges consumed by the
// surgery drop out.
Subgraph map_subgraph(const RibbonGraph& before, const ribbon::IdentifyResult& r,
                      const Subgraph& z) {
    Subgraph out;
    for (VertexId v : z.vertices) out.vertices.insert(r.vertex_map[v]);
    for (Dart e : z.edges) {
        Dart n1 = r.dart_map[e];
        Dart n2 = r.dart_map[before.sigma[e]];
        if (n1 == ribbon::kNoDart || n2 == ribbon::kNoDart) continue;
        out.edges.insert(std::min(n1, n2));
    }
    return out;
}

Subgraph circle_subgraph(const ribbon::IdentifyResult& r) {
    Subgraph c;
    c.vertices.insert(r.circle_points.begin(), r.circle_points.end());
    c.edges.insert(r.circle_edges.begin(), r.circle_edges.end());
    return c;
}

void merge_into(Subgraph& dst, const Subgraph& src) {
    dst.vertices.insert(src.vertices.begin(), src.vertices.end());
    dst.edges.insert(src.edges.begin(), src.edges.end());
}

// The part of the union occupied by a freshly appended pants.
Subgraph appended_side(const RibbonGraph& y, int dart_offset, int vertex_offset) {
    Subgraph z;
    for (VertexId v = 0; v < y.vertex_count(); ++v) z.vertices.insert(vertex_offset + v);
    for (Dart h = 0; h < y.dart_count(); ++h)
        if (y.edge_of(h) == h) z.edges.insert(dart_offset + h);
    return z;
}

Subgraph complement_side(const RibbonGraph& x, const Subgraph& pants) {
    Subgraph z;
    for (VertexId v = 0; v < x.vertex_count(); ++v)
        if (!pants.vertices.count(v)) z.vertices.insert(v);
    for (Dart h = 0; h < x.dart_count(); ++h)
        if (x.edge_of(h) == h && !pants.edges.count(h)) z.edges.insert(h);
    return z;
}

// One identification with side bookkeeping: the piece cycle is the first face,
// the pants cycle the second (reversed) one.
void glue_once(RibbonGraph& x, Subgraph& pants, std::vector<Subgraph>& circles,
               const std::string& piece_label, const std::string& pants_label) {
    RibbonGraph before = x;
    auto r = ribbon::identify_cycles(before, piece_label, pants_label, 0);
    Subgraph next_pants = map_subgraph(before, r, pants);
    std::vector<Subgraph> next_circles;
    next_circles.reserve(circles.size() + 1);
    for (const auto& c : circles) next_circles.push_back(map_subgraph(before, r, c));
    next_circles.push_back(circle_subgraph(r));
    x = std::move(r.graph);
    pants = std::move(next_pants);
    circles = std::move(next_circles);
}

ribbon::GluingCertificate certify(const RibbonGraph& x, const Subgraph& pants,
                                  const std::vector<Subgraph>& circles) {
    Subgraph z2 = pants;
    Subgraph z1 = complement_side(x, pants);
    for (const auto& c : circles) {
        merge_into(z1, c);
        merge_into(z2, c);
    }
    return ribbon::gluing_cover_check(x, z1, z2);
}

ribbon::MoveLog prepare_cycles(RibbonGraph& piece, const std::vector<std::string>& targets,
                               bool disjoint, std::uint64_t seed, int budget) {
    ribbon::EnsureRequest req;
    req.targets = targets;
    req.disjoint = disjoint;
    req.seed = seed;
    req.budget = budget;
    auto [graph, log] = ribbon::ensure_cycle_at_face(piece, req);
    piece = std::move(graph);
    return log;
}

// Every open edge must own exactly one face label on its assigned piece, and
// no piece may carry stray labels.
void audit_labels(const std::vector<RibbonGraph>& pieces, const std::map<int, int>& where) {
    std::vector<std::set<std::string>> expected(pieces.size());
    for (const auto& [id, p] : where) expected[p].insert(open_label(id));
    for (std::size_t p = 0; p < pieces.size(); ++p) {
        std::set<std::string> have;
        for (const auto& entry : pieces[p].face_labels) have.insert(entry.first);
        require(have == expected[p], "synthesize: open labels out of step with the sweep");
        auto fs = ribbon::faces(pieces[p]);
        std::set<int> used;
        for (const auto& name : have)
            require(used.insert(ribbon::face_of_label(pieces[p], fs, name)).second,
                    "synthesize: two open labels on one face");
    }
}

}  // namespace

std::string open_label(int edge_id) { return "e" + std::to_string(edge_id); }

SynthResult synthesize(const tropical::TropicalGraph& g, const SynthOptions& opts) {
    require(!g.vertices.empty(), "synthesize: the graph has no vertices");
    auto sweep = tropical::sweep_decompose(g, opts.direction);

    SynthResult out;
    auto& cert = out.certificate;
    cert.seed = opts.seed;
    cert.direction = opts.direction;
    cert.mirror = tropical::mirror_invariants(g);

    std::vector<RibbonGraph> pieces;
    std::map<int, int> where;  // open tropical edge id -> piece index

    for (std::size_t si = 0; si < sweep.steps.size(); ++si) {
        const auto& st = sweep.steps[si];
        SynthStep rec;
        rec.vertex = st.vertex;
        for (const auto& e : st.glue_edges) rec.glued.push_back(e.id);
        rec.opened = st.new_open_edges;
        const std::uint64_t step_seed = opts.seed + si;

        if (rec.glued.empty()) {
            rec.pants = "theta";
            require(rec.opened.size() == 3, "synthesize: base case needs three open edges");
            int idx = static_cast<int>(pieces.size());
            pieces.push_back(labeled_theta({open_label(rec.opened[0]), open_label(rec.opened[1]),
                                            open_label(rec.opened[2])}));
            for (int id : rec.opened) where[id] = idx;
        } else if (rec.glued.size() == 1) {
            rec.pants = "theta";
            rec.offsets = {0};
            require(rec.opened.size() == 2, "synthesize: one-edge step opens two edges");
            int p = where.at(rec.glued[0]);
            rec.preparations.push_back(
                prepare_cycles(pieces[p], {open_label(rec.glued[0])}, false, step_seed, opts.budget));
            RibbonGraph y = labeled_theta(
                {"glue:a", open_label(rec.opened[0]), open_label(rec.opened[1])});
            int doff = 0, voff = 0;
            RibbonGraph x = ribbon::disjoint_union(pieces[p], y, &doff, &voff);
            Subgraph pants = appended_side(y, doff, voff);
            std::vector<Subgraph> circles;
            glue_once(x, pants, circles, open_label(rec.glued[0]), "glue:a");
            rec.cover = certify(x, pants, circles);
            pieces[p] = std::move(x);
            where.erase(rec.glued[0]);
            for (int id : rec.opened) where[id] = p;
        } else {
            rec.pants = "dumbbell";
            rec.offsets = {0, 0};
            require(rec.glued.size() == 2 && rec.opened.size() == 1,
                    "synthesize: two-edge step glues two and opens one");
            int p = where.at(rec.glued[0]);
            int q = where.at(rec.glued[1]);
            RibbonGraph y = labeled_dumbbell("glue:a", "glue:b", open_label(rec.opened[0]));
            RibbonGraph x;
            Subgraph pants;
            std::vector<Subgraph> circles;
            if (p == q) {
                rec.preparations.push_back(prepare_cycles(
                    pieces[p], {open_label(rec.glued[0]), open_label(rec.glued[1])}, true,
                    step_seed, opts.budget));
                int doff = 0, voff = 0;
                x = ribbon::disjoint_union(pieces[p], y, &doff, &voff);
                pants = appended_side(y, doff, voff);
                glue_once(x, pants, circles, open_label(rec.glued[0]), "glue:a");
                glue_once(x, pants, circles, open_label(rec.glued[1]), "glue:b");
            } else {
                rec.merged_pieces = true;
                rec.preparations.push_back(
                    prepare_cycles(pieces[p], {open_label(rec.glued[0])}, false, step_seed, opts.budget));
                rec.preparations.push_back(
                    prepare_cycles(pieces[q], {open_label(rec.glued[1])}, false, step_seed, opts.budget));
                int doff = 0, voff = 0;
                x = ribbon::disjoint_union(pieces[p], y, &doff, &voff);
                pants = appended_side(y, doff, voff);
                glue_once(x, pants, circles, open_label(rec.glued[0]), "glue:a");
                // The second circle joins the other piece; ids on the first
                // side survive the union unchanged.
                x = ribbon::disjoint_union(x, pieces[q], nullptr, nullptr);
                glue_once(x, pants, circles, open_label(rec.glued[1]), "glue:b");
            }
            rec.cover = certify(x, pants, circles);
            where.erase(rec.glued[0]);
            where.erase(rec.glued[1]);
            pieces[p] = std::move(x);
            where[rec.opened[0]] = p;
            if (p != q) {
                pieces.erase(pieces.begin() + q);
                for (auto& [id, pc] : where) {
                    if (pc == q) pc = p;
                    if (pc > q) --pc;
                }
            }
        }

        audit_labels(pieces, where);
        for (const auto& entry : where) rec.open_after.push_back(entry.first);
        cert.steps.push_back(std::move(rec));
    }

    std::string failure;
    for (std::size_t si = 0; si < cert.steps.size(); ++si) {
        const auto& cover = cert.steps[si].cover;
        if (!cover) continue;
        if (!cover->ok) {
            failure = "step " + std::to_string(si) + " cover check failed: " + cover->failure;
            break;
        }
        if (!cover->spoke_sides_match) {
            failure = "step " + std::to_string(si) + " cover check failed: spoke sides mixed";
            break;
        }
    }

    if (pieces.size() != 1) {
        for (const auto& piece : pieces)
            out.graph = out.graph.dart_count() == 0 && out.graph.vertex_count() == 0
                            ? piece
                            : ribbon::disjoint_union(out.graph, piece, nullptr, nullptr);
        if (failure.empty()) failure = "skeleton is disconnected";
    } else {
        out.graph = std::move(pieces.front());
        cert.surface = ribbon::surface_invariants(out.graph);
        cert.invariants_match = cert.surface == cert.mirror;
        if (failure.empty() && !cert.invariants_match)
            failure = "surface invariants differ from the mirror invariants";
    }

    const int nfinite = static_cast<int>(g.finite_edges.size());
    const int nrays = static_cast<int>(g.infinite_edges.size());
    cert.labels_match = static_cast<int>(where.size()) == nrays;
    for (const auto& entry : where)
        if (entry.first < nfinite || entry.first >= nfinite + nrays) cert.labels_match = false;
    if (failure.empty() && !cert.labels_match)
        failure = "final open labels do not match the rays";

    cert.failure = failure;
    cert.ok = failure.empty();
    return out;
}

}  // namespace tropmir::skeleton
