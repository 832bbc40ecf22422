#include "tropmir/charts.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>

namespace tropmir::charts {

std::string product_label(const std::vector<int>& ids) {
    std::string label;
    for (int id : ids) {
        if (!label.empty()) label += "*";
        label += "t" + std::to_string(id);
    }
    return label;
}

std::string restriction_label(const std::vector<int>& kept_ids, int inverted) {
    std::string label;
    for (int id : kept_ids)
        label += "t" + std::to_string(id) + " -> t" + std::to_string(id) + ", ";
    label += "t" + std::to_string(inverted) + " -> u";
    return label;
}

namespace {

const char* kVertexChart = "affine-3-space";
const char* kEdgeChart = "torus-affine-2-space";

ChartObject make_vertex_object(int source_id, std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    ChartObject o;
    o.kind = ObjectKind::Vertex;
    o.source_id = source_id;
    o.chart_type = kVertexChart;
    o.function_label = product_label(ids);
    o.ids = std::move(ids);
    return o;
}

ChartObject make_edge_object(int source_id, std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    ChartObject o;
    o.kind = ObjectKind::Edge;
    o.source_id = source_id;
    o.chart_type = kEdgeChart;
    o.function_label = product_label(ids);
    o.ids = std::move(ids);
    return o;
}

// Arrow from the vertex object into the edge object; the vertex coordinate
// off the edge becomes the inverted variable.
RestrictionArrow make_arrow(const ChartDiagram& d, int from, int to) {
    const auto& vertex_ids = d.objects[from].ids;
    const auto& edge_ids = d.objects[to].ids;
    std::vector<int> extra;
    for (int id : vertex_ids)
        if (std::find(edge_ids.begin(), edge_ids.end(), id) == edge_ids.end())
            extra.push_back(id);
    if (extra.size() != 1)
        throw std::invalid_argument("chart incidence does not invert exactly one coordinate");
    RestrictionArrow a;
    a.from = from;
    a.to = to;
    a.inverted = extra.front();
    a.mapping_label = restriction_label(edge_ids, a.inverted);
    return a;
}

}  // namespace

ChartDiagram build_B_diagram(const tropical::TropicalGraph& g) {
    for (std::size_t k = 0; k < g.finite_edges.size(); ++k)
        if (g.finite_edges[k].a == g.finite_edges[k].b)
            throw std::invalid_argument("build_B_diagram: finite edge " + std::to_string(k) +
                                        " is a loop");
    auto regions = tropical::planar_regions(g);
    const int V = static_cast<int>(g.vertices.size());
    const int F = static_cast<int>(g.finite_edges.size());
    const int I = static_cast<int>(g.infinite_edges.size());

    ChartDiagram d;
    for (int v = 0; v < V; ++v) {
        const auto& around = regions.vertex_regions[v];
        std::set<int> distinct(around.begin(), around.end());
        if (distinct.size() != 3)
            throw std::invalid_argument("build_B_diagram: vertex " + std::to_string(v) +
                                        " does not see three distinct regions");
        d.objects.push_back(make_vertex_object(v, {around[0], around[1], around[2]}));
    }
    for (int k = 0; k < F; ++k) {
        const auto& sides = regions.finite_edge_regions[k];
        if (sides[0] == sides[1])
            throw std::invalid_argument("build_B_diagram: finite edge " + std::to_string(k) +
                                        " has the same region on both sides");
        d.objects.push_back(make_edge_object(k, {sides[0], sides[1]}));
    }
    for (int j = 0; j < I; ++j) {
        const auto& sides = regions.infinite_edge_regions[j];
        if (sides[0] == sides[1])
            throw std::invalid_argument("build_B_diagram: infinite edge " + std::to_string(j) +
                                        " has the same region on both sides");
        d.objects.push_back(make_edge_object(F + j, {sides[0], sides[1]}));
    }
    for (int k = 0; k < F; ++k) {
        d.arrows.push_back(make_arrow(d, g.finite_edges[k].a, V + k));
        d.arrows.push_back(make_arrow(d, g.finite_edges[k].b, V + k));
    }
    for (int j = 0; j < I; ++j)
        d.arrows.push_back(make_arrow(d, g.infinite_edges[j].v, V + F + j));
    return d;
}

ChartDiagram build_cech_diagram(const lattice::Triangulation& t) {
    auto report = lattice::validate_triangulation(t);
    if (!report.ok)
        throw std::invalid_argument("build_cech_diagram: invalid triangulation: " +
                                    report.errors.front());

    ChartDiagram d;
    const int T = static_cast<int>(t.triangles.size());
    for (int k = 0; k < T; ++k) {
        const auto& tri = t.triangles[k];
        d.objects.push_back(make_vertex_object(k, {tri[0], tri[1], tri[2]}));
    }

    // Triangles around each primal edge, keyed by ascending point pair; this
    // is the order in which dual_tropical_graph numbers its edges.
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> uses;
    for (int k = 0; k < T; ++k) {
        const auto& tri = t.triangles[k];
        for (int i = 0; i < 3; ++i) {
            int u = tri[i], v = tri[(i + 1) % 3], w = tri[(i + 2) % 3];
            uses[{std::min(u, v), std::max(u, v)}].push_back({k, w});
        }
    }
    struct Incidence {
        std::pair<int, int> edge;
        std::vector<std::pair<int, int>> list;
    };
    std::vector<Incidence> interior, boundary;
    for (const auto& [edge, list] : uses)
        (list.size() == 2 ? interior : boundary).push_back({edge, list});

    const int FI = static_cast<int>(interior.size());
    for (int k = 0; k < FI; ++k)
        d.objects.push_back(make_edge_object(k, {interior[k].edge.first, interior[k].edge.second}));
    for (std::size_t j = 0; j < boundary.size(); ++j)
        d.objects.push_back(make_edge_object(FI + static_cast<int>(j),
                                             {boundary[j].edge.first, boundary[j].edge.second}));
    for (int k = 0; k < FI; ++k)
        for (const auto& [tri, opposite] : interior[k].list) {
            (void)opposite;
            d.arrows.push_back(make_arrow(d, tri, T + k));
        }
    for (std::size_t j = 0; j < boundary.size(); ++j)
        d.arrows.push_back(make_arrow(d, boundary[j].list.front().first,
                                      T + FI + static_cast<int>(j)));
    return d;
}

namespace {

struct IdBinder {
    std::map<int, int> fwd, rev;

    bool bind(int a, int b) {
        auto it = fwd.find(a);
        if (it != fwd.end()) return it->second == b;
        auto rit = rev.find(b);
        if (rit != rev.end()) return false;
        fwd.emplace(a, b);
        rev.emplace(b, a);
        return true;
    }
};

// Pin the id renaming from arrow inverted-variables, then propagate through
// object id sets until every id is matched. Fails on conflict or ambiguity.
std::optional<IdBinder> derive_id_map(const ChartDiagram& d1, const ChartDiagram& d2,
                                      const std::vector<int>& object_map, std::string* why) {
    std::map<std::pair<int, int>, int> d2_arrows;
    for (std::size_t i = 0; i < d2.arrows.size(); ++i)
        d2_arrows[{d2.arrows[i].from, d2.arrows[i].to}] = static_cast<int>(i);

    IdBinder binder;
    for (const auto& a1 : d1.arrows) {
        auto it = d2_arrows.find({object_map[a1.from], object_map[a1.to]});
        if (it == d2_arrows.end()) {
            *why = "no counterpart for an arrow between mapped objects";
            return std::nullopt;
        }
        if (!binder.bind(a1.inverted, d2.arrows[it->second].inverted)) {
            *why = "inverted coordinates force an inconsistent renaming";
            return std::nullopt;
        }
    }
    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t i = 0; i < d1.objects.size(); ++i) {
            const auto& ids1 = d1.objects[i].ids;
            const auto& ids2 = d2.objects[object_map[i]].ids;
            std::vector<int> u1, u2;
            for (int a : ids1) {
                auto it = binder.fwd.find(a);
                if (it == binder.fwd.end()) u1.push_back(a);
                else if (std::find(ids2.begin(), ids2.end(), it->second) == ids2.end()) {
                    *why = "renamed coordinate falls outside the matched object";
                    return std::nullopt;
                }
            }
            for (int b : ids2)
                if (!binder.rev.count(b)) u2.push_back(b);
            if (u1.size() != u2.size()) {
                *why = "matched objects have different coordinate counts left";
                return std::nullopt;
            }
            if (u1.size() == 1) {
                if (!binder.bind(u1.front(), u2.front())) {
                    *why = "coordinate propagation hit a conflict";
                    return std::nullopt;
                }
                progress = true;
            }
        }
    }
    for (const auto& o : d1.objects)
        for (int a : o.ids)
            if (!binder.fwd.count(a)) {
                *why = "coordinate " + std::to_string(a) + " could not be pinned";
                return std::nullopt;
            }
    return binder;
}

std::string verify_match(const ChartDiagram& d1, const ChartDiagram& d2,
                         const std::vector<int>& object_map, const IdBinder& binder) {
    std::vector<char> used(d2.objects.size(), 0);
    for (std::size_t i = 0; i < d1.objects.size(); ++i) {
        int m = object_map[i];
        if (m < 0 || m >= static_cast<int>(d2.objects.size()) || used[m])
            return "object map is not a bijection";
        used[m] = 1;
        const auto& o1 = d1.objects[i];
        const auto& o2 = d2.objects[m];
        if (o1.kind != o2.kind) return "object kinds differ";
        if (o1.chart_type != o2.chart_type) return "chart types differ";
        std::vector<int> mapped;
        for (int a : o1.ids) mapped.push_back(binder.fwd.at(a));
        std::sort(mapped.begin(), mapped.end());
        if (mapped != o2.ids) return "coordinate sets do not correspond";
        if (product_label(mapped) != o2.function_label) return "function labels differ";
    }
    std::map<std::pair<int, int>, const RestrictionArrow*> d2_arrows;
    for (const auto& a : d2.arrows) d2_arrows[{a.from, a.to}] = &a;
    if (d1.arrows.size() != d2.arrows.size() || d2_arrows.size() != d2.arrows.size())
        return "arrow counts differ";
    for (const auto& a1 : d1.arrows) {
        auto it = d2_arrows.find({object_map[a1.from], object_map[a1.to]});
        if (it == d2_arrows.end()) return "an arrow has no counterpart";
        const auto& a2 = *it->second;
        if (binder.fwd.at(a1.inverted) != a2.inverted) return "inverted coordinates differ";
        if (restriction_label(d2.objects[a2.to].ids, a2.inverted) != a2.mapping_label)
            return "mapping labels differ";
    }
    return {};
}

// Degree signature used to prune the backtracking search.
std::vector<int> arrow_degrees(const ChartDiagram& d) {
    std::vector<int> deg(d.objects.size(), 0);
    for (const auto& a : d.arrows) {
        ++deg[a.from];
        ++deg[a.to];
    }
    return deg;
}

bool compatible(const ChartObject& o1, const ChartObject& o2, int deg1, int deg2) {
    return o1.kind == o2.kind && o1.ids.size() == o2.ids.size() &&
           o1.chart_type == o2.chart_type && deg1 == deg2;
}

bool backtrack(const ChartDiagram& d1, const ChartDiagram& d2, const std::vector<int>& deg1,
               const std::vector<int>& deg2,
               const std::map<std::pair<int, int>, int>& d2_arrow_at, std::size_t next,
               std::vector<int>& object_map, std::vector<char>& used,
               std::string& why) {
    if (next == d1.objects.size()) {
        auto derived = derive_id_map(d1, d2, object_map, &why);
        if (!derived) return false;
        why = verify_match(d1, d2, object_map, *derived);
        return why.empty();
    }
    for (std::size_t m = 0; m < d2.objects.size(); ++m) {
        if (used[m]) continue;
        if (!compatible(d1.objects[next], d2.objects[m], deg1[next], deg2[m])) continue;
        // Arrows touching already-assigned objects must have counterparts.
        bool consistent = true;
        for (const auto& a : d1.arrows) {
            int other = -1;
            if (a.from == static_cast<int>(next)) other = a.to;
            else if (a.to == static_cast<int>(next)) other = a.from;
            else continue;
            if (other > static_cast<int>(next) || object_map[other] < 0) continue;
            int from2 = a.from == static_cast<int>(next) ? static_cast<int>(m)
                                                         : object_map[a.from];
            int to2 = a.to == static_cast<int>(next) ? static_cast<int>(m) : object_map[a.to];
            if (!d2_arrow_at.count({from2, to2})) {
                consistent = false;
                break;
            }
        }
        if (!consistent) continue;
        object_map[next] = static_cast<int>(m);
        used[m] = 1;
        if (backtrack(d1, d2, deg1, deg2, d2_arrow_at, next + 1, object_map, used, why))
            return true;
        object_map[next] = -1;
        used[m] = 0;
    }
    return false;
}

}  // namespace

DiagramMatch diagram_isomorphic(const ChartDiagram& d1, const ChartDiagram& d2) {
    DiagramMatch result;
    auto count_kind = [](const ChartDiagram& d, ObjectKind k) {
        int n = 0;
        for (const auto& o : d.objects) n += o.kind == k;
        return n;
    };
    int v1 = count_kind(d1, ObjectKind::Vertex), v2 = count_kind(d2, ObjectKind::Vertex);
    int e1 = count_kind(d1, ObjectKind::Edge), e2 = count_kind(d2, ObjectKind::Edge);
    if (v1 != v2 || e1 != e2) {
        result.failure = "object counts differ: " + std::to_string(v1) + " vertex / " +
                         std::to_string(e1) + " edge objects vs " + std::to_string(v2) +
                         " vertex / " + std::to_string(e2) + " edge objects";
        return result;
    }
    if (d1.arrows.size() != d2.arrows.size()) {
        result.failure = "arrow counts differ: " + std::to_string(d1.arrows.size()) + " vs " +
                         std::to_string(d2.arrows.size());
        return result;
    }

    auto finish = [&](const std::vector<int>& object_map, const IdBinder& binder) {
        result.ok = true;
        result.object_map = object_map;
        result.id_map.assign(binder.fwd.begin(), binder.fwd.end());
        result.failure.clear();
        return result;
    };

    // Positional candidate first: it is the canonical triangle/dual-vertex
    // bijection when both diagrams come from the same triangulation.
    std::string why = "no label-preserving bijection exists";
    std::vector<int> positional(d1.objects.size());
    for (std::size_t i = 0; i < positional.size(); ++i) positional[i] = static_cast<int>(i);
    bool aligned = true;
    for (std::size_t i = 0; i < d1.objects.size() && aligned; ++i)
        aligned = d1.objects[i].kind == d2.objects[i].kind;
    if (aligned) {
        std::string local;
        if (auto binder = derive_id_map(d1, d2, positional, &local)) {
            local = verify_match(d1, d2, positional, *binder);
            if (local.empty()) return finish(positional, *binder);
        }
    }

    auto deg1 = arrow_degrees(d1), deg2 = arrow_degrees(d2);
    std::map<std::pair<int, int>, int> d2_arrow_at;
    for (std::size_t i = 0; i < d2.arrows.size(); ++i)
        d2_arrow_at[{d2.arrows[i].from, d2.arrows[i].to}] = static_cast<int>(i);
    std::vector<int> object_map(d1.objects.size(), -1);
    std::vector<char> used(d2.objects.size(), 0);
    if (backtrack(d1, d2, deg1, deg2, d2_arrow_at, 0, object_map, used, why)) {
        std::string local;
        auto binder = derive_id_map(d1, d2, object_map, &local);
        return finish(object_map, *binder);
    }
    result.failure = why;
    return result;
}

ChartDiagram restrict_diagram(const ChartDiagram& d, const SubgraphSpec& sub) {
    std::set<int> keep_vertices(sub.vertices.begin(), sub.vertices.end());
    std::set<int> keep_edges(sub.edges.begin(), sub.edges.end());
    std::set<int> have_vertices, have_edges;
    for (const auto& o : d.objects)
        (o.kind == ObjectKind::Vertex ? have_vertices : have_edges).insert(o.source_id);
    for (int v : keep_vertices)
        if (!have_vertices.count(v))
            throw std::invalid_argument("restrict_diagram: unknown vertex id " +
                                        std::to_string(v));
    for (int e : keep_edges)
        if (!have_edges.count(e))
            throw std::invalid_argument("restrict_diagram: unknown edge id " + std::to_string(e));
    // Subgraph rule: an edge meeting a kept vertex must itself be kept.
    for (const auto& a : d.arrows) {
        int v = d.objects[a.from].source_id;
        int e = d.objects[a.to].source_id;
        if (keep_vertices.count(v) && !keep_edges.count(e))
            throw std::invalid_argument("restrict_diagram: not a subgraph: vertex " +
                                        std::to_string(v) + " keeps edge " + std::to_string(e) +
                                        " outside");
    }
    ChartDiagram out;
    std::vector<int> new_index(d.objects.size(), -1);
    for (std::size_t i = 0; i < d.objects.size(); ++i) {
        const auto& o = d.objects[i];
        bool keep = o.kind == ObjectKind::Vertex ? keep_vertices.count(o.source_id) > 0
                                                 : keep_edges.count(o.source_id) > 0;
        if (!keep) continue;
        new_index[i] = static_cast<int>(out.objects.size());
        out.objects.push_back(o);
    }
    for (const auto& a : d.arrows) {
        if (new_index[a.from] < 0 || new_index[a.to] < 0) continue;
        RestrictionArrow copy = a;
        copy.from = new_index[a.from];
        copy.to = new_index[a.to];
        out.arrows.push_back(copy);
    }
    return out;
}

}  // namespace tropmir::charts
