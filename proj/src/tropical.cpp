#include "tropmir/tropical.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>

namespace tropmir::tropical {

namespace {

void require_structure(const TropicalGraph& g) {
    const int V = static_cast<int>(g.vertices.size());
    for (std::size_t k = 0; k < g.finite_edges.size(); ++k) {
        const auto& e = g.finite_edges[k];
        if (e.a < 0 || e.a >= V || e.b < 0 || e.b >= V)
            throw std::invalid_argument("finite edge " + std::to_string(k) +
                                        ": endpoint out of range");
    }
    for (std::size_t j = 0; j < g.infinite_edges.size(); ++j) {
        const auto& e = g.infinite_edges[j];
        if (e.v < 0 || e.v >= V)
            throw std::invalid_argument("infinite edge " + std::to_string(j) +
                                        ": vertex out of range");
    }
}

// Outward momenta of the edges incident to each vertex; loops contribute both
// orientations, so valency and balancing stay consistent.
std::vector<std::vector<IVec2>> outward_momenta(const TropicalGraph& g) {
    std::vector<std::vector<IVec2>> out(g.vertices.size());
    for (const auto& e : g.finite_edges) {
        out[e.a].push_back(e.momentum);
        out[e.b].push_back(-e.momentum);
    }
    for (const auto& e : g.infinite_edges) out[e.v].push_back(e.momentum);
    return out;
}

void require_trivalent(const TropicalGraph& g, const std::vector<std::vector<IVec2>>& out,
                       const char* who) {
    for (std::size_t v = 0; v < out.size(); ++v)
        if (out[v].size() != 3)
            throw std::invalid_argument(std::string(who) + ": vertex " + std::to_string(v) +
                                        " has valency " + std::to_string(out[v].size()));
    (void)g;
}

}  // namespace

int edge_id_count(const TropicalGraph& g) {
    return static_cast<int>(g.finite_edges.size() + g.infinite_edges.size());
}

ValidationReport check_balanced(const TropicalGraph& g) {
    require_structure(g);
    auto out = outward_momenta(g);
    require_trivalent(g, out, "check_balanced");
    ValidationReport report;
    for (std::size_t v = 0; v < out.size(); ++v) {
        IVec2 sum{0, 0};
        for (const auto& m : out[v]) sum = sum + m;
        if (!sum.is_zero())
            report.fail("vertex " + std::to_string(v) + ": outward momentum sum " +
                        to_string(sum));
    }
    if (report.ok)
        report.note("balanced at all " + std::to_string(g.vertices.size()) + " vertices");
    return report;
}

Int momenta_span_index(const std::vector<IVec2>& momenta) {
    Int g = 0;
    for (std::size_t i = 0; i < momenta.size(); ++i)
        for (std::size_t j = i + 1; j < momenta.size(); ++j)
            g = gcd(g, abs(cross(momenta[i], momenta[j])));
    return g;
}

ValidationReport check_nondegenerate(const TropicalGraph& g) {
    require_structure(g);
    auto out = outward_momenta(g);
    require_trivalent(g, out, "check_nondegenerate");
    ValidationReport report;
    for (std::size_t v = 0; v < out.size(); ++v) {
        Int index = momenta_span_index(out[v]);
        if (index == 0) {
            report.fail("vertex " + std::to_string(v) + ": all momenta proportional");
            continue;
        }
        if (index != 1)
            report.note("vertex " + std::to_string(v) + ": momenta span a sublattice of index " +
                        index.str());
    }
    return report;
}

namespace {

// A drawn piece: segment (t in [0,1] of base + t * dir) or ray (t >= 0).
struct DrawnEdge {
    bool is_ray = false;
    int index = 0;
    QVec2 base;
    QVec2 dir;
    std::vector<int> ends;  // incident vertex ids

    std::string name() const {
        return (is_ray ? "infinite edge " : "finite edge ") + std::to_string(index);
    }
};

// Parameter interval of a drawn edge measured as tau = dot(P - origin, axis),
// along a shared line. Unbounded sides are flagged.
struct Interval {
    bool lo_open_ended = false;  // extends to -infinity
    bool hi_open_ended = false;  // extends to +infinity
    Rat lo, hi;
};

Interval project_onto(const DrawnEdge& e, const QVec2& origin, const QVec2& axis) {
    Rat at = dot(e.base - origin, axis);
    Rat step = dot(e.dir, axis);
    Interval iv;
    if (e.is_ray) {
        if (step > 0) {
            iv.lo = at;
            iv.hi_open_ended = true;
        } else {
            iv.hi = at;
            iv.lo_open_ended = true;
        }
    } else {
        Rat other = at + step;
        iv.lo = std::min(at, other);
        iv.hi = std::max(at, other);
    }
    return iv;
}

// True when the two edges may touch at x: they share a vertex drawn there.
bool touch_allowed(const TropicalGraph& g, const DrawnEdge& e1, const DrawnEdge& e2,
                   const QVec2& x) {
    for (int v : e1.ends)
        for (int w : e2.ends)
            if (v == w && g.vertices[v].pos == x) return true;
    return false;
}

void check_pair(const TropicalGraph& g, const DrawnEdge& e1, const DrawnEdge& e2,
                ValidationReport& report) {
    QVec2 w = e2.base - e1.base;
    Rat denom = cross(e1.dir, e2.dir);
    if (denom != 0) {
        Rat t = cross(w, e2.dir) / denom;
        Rat s = cross(w, e1.dir) / denom;
        if (t < 0 || (!e1.is_ray && t > 1)) return;
        if (s < 0 || (!e2.is_ray && s > 1)) return;
        QVec2 x{e1.base.x + t * e1.dir.x, e1.base.y + t * e1.dir.y};
        if (!touch_allowed(g, e1, e2, x))
            report.fail(e1.name() + " and " + e2.name() + " cross at " + to_string(x));
        return;
    }
    if (cross(w, e1.dir) != 0) return;  // parallel, different lines
    // Collinear: compare parameter intervals along e1's direction.
    Interval i1 = project_onto(e1, e1.base, e1.dir);
    Interval i2 = project_onto(e2, e1.base, e1.dir);
    bool lo_open = i1.lo_open_ended && i2.lo_open_ended;
    bool hi_open = i1.hi_open_ended && i2.hi_open_ended;
    Rat lo, hi;
    if (!lo_open) {
        if (i1.lo_open_ended) lo = i2.lo;
        else if (i2.lo_open_ended) lo = i1.lo;
        else lo = std::max(i1.lo, i2.lo);
    }
    if (!hi_open) {
        if (i1.hi_open_ended) hi = i2.hi;
        else if (i2.hi_open_ended) hi = i1.hi;
        else hi = std::min(i1.hi, i2.hi);
    }
    if (!lo_open && !hi_open && lo > hi) return;
    if (!lo_open && !hi_open && lo == hi) {
        Rat scale = dot(e1.dir, e1.dir);
        QVec2 x{e1.base.x + lo / scale * e1.dir.x, e1.base.y + lo / scale * e1.dir.y};
        if (!touch_allowed(g, e1, e2, x))
            report.fail(e1.name() + " and " + e2.name() + " touch at " + to_string(x));
        return;
    }
    report.fail(e1.name() + " and " + e2.name() + " overlap along a segment");
}

}  // namespace

ValidationReport check_embedding(const TropicalGraph& g) {
    require_structure(g);
    ValidationReport report;
    for (std::size_t v = 0; v < g.vertices.size(); ++v)
        for (std::size_t w = v + 1; w < g.vertices.size(); ++w)
            if (g.vertices[v].pos == g.vertices[w].pos)
                report.fail("vertices " + std::to_string(v) + " and " + std::to_string(w) +
                            " share position " + to_string(g.vertices[v].pos));
    std::vector<DrawnEdge> drawn;
    for (std::size_t k = 0; k < g.finite_edges.size(); ++k) {
        const auto& e = g.finite_edges[k];
        std::string name = "finite edge " + std::to_string(k);
        if (e.a == e.b) {
            report.fail(name + ": joins vertex " + std::to_string(e.a) + " to itself");
            continue;
        }
        if (e.momentum.is_zero()) {
            report.fail(name + ": zero momentum");
            continue;
        }
        QVec2 dir = g.vertices[e.b].pos - g.vertices[e.a].pos;
        if (dir.is_zero()) continue;  // coincident endpoints already reported
        QVec2 m = to_qvec(e.momentum);
        if (cross(dir, m) != 0 || dot(dir, m) <= 0)
            report.fail(name + ": drawn direction " + to_string(dir) +
                        " is not positively proportional to momentum " + to_string(e.momentum));
        drawn.push_back(
            {false, static_cast<int>(k), g.vertices[e.a].pos, dir, {e.a, e.b}});
    }
    for (std::size_t j = 0; j < g.infinite_edges.size(); ++j) {
        const auto& e = g.infinite_edges[j];
        if (e.momentum.is_zero()) {
            report.fail("infinite edge " + std::to_string(j) + ": zero momentum");
            continue;
        }
        drawn.push_back(
            {true, static_cast<int>(j), g.vertices[e.v].pos, to_qvec(e.momentum), {e.v}});
    }
    for (std::size_t i = 0; i < drawn.size(); ++i)
        for (std::size_t j = i + 1; j < drawn.size(); ++j)
            check_pair(g, drawn[i], drawn[j], report);
    return report;
}

ValidationReport validate_tropical(const TropicalGraph& g) {
    ValidationReport report;
    report.merge(check_balanced(g));
    report.merge(check_nondegenerate(g));
    report.merge(check_embedding(g));
    return report;
}

InfiniteEdgeCount infinite_edge_count(const TropicalGraph& g) {
    InfiniteEdgeCount result;
    result.count = g.infinite_edges.size();
    result.at_least_two = result.count >= 2;
    return result;
}

// --- sweep decomposition ----------------------------------------------------

std::string to_string(VertexCase c) {
    switch (c) {
        case VertexCase::OneInfinite: return "one-infinite";
        case VertexCase::TwoInfinite: return "two-infinite";
        default: return "three-infinite";
    }
}

SweepDecomposition sweep_decompose(const TropicalGraph& g, const IVec2& direction) {
    if (direction.is_zero()) throw std::invalid_argument("sweep_decompose: zero direction");
    auto report = validate_tropical(g);
    if (!report.ok)
        throw std::invalid_argument("sweep_decompose: invalid graph: " + report.errors.front());

    const int V = static_cast<int>(g.vertices.size());
    const int F = static_cast<int>(g.finite_edges.size());
    QVec2 d = to_qvec(direction);
    auto height = [&](int v) { return dot(d, g.vertices[v].pos); };
    // The lexicographic tail (x, then y) stands in for an irrational tilt of
    // the direction; positions are distinct, so the order is total.
    auto key_less = [&](int v, int w) {
        Rat hv = height(v), hw = height(w);
        if (hv != hw) return hv < hw;
        const QVec2 &pv = g.vertices[v].pos, &pw = g.vertices[w].pos;
        if (pv.x != pw.x) return pv.x < pw.x;
        return pv.y < pw.y;
    };
    std::vector<int> order(V);
    for (int v = 0; v < V; ++v) order[v] = v;
    std::sort(order.begin(), order.end(), key_less);
    std::vector<int> rank(V);
    for (int i = 0; i < V; ++i) rank[order[i]] = i;

    std::vector<std::vector<int>> finite_at(V), rays_at(V);
    for (int k = 0; k < F; ++k) {
        finite_at[g.finite_edges[k].a].push_back(k);
        finite_at[g.finite_edges[k].b].push_back(k);
    }
    for (std::size_t j = 0; j < g.infinite_edges.size(); ++j)
        rays_at[g.infinite_edges[j].v].push_back(static_cast<int>(j));

    SweepDecomposition sweep;
    sweep.direction = direction;
    for (int v : order) {
        GluingStep step;
        step.vertex = v;
        step.height = height(v);
        step.position = g.vertices[v].pos;
        for (int k : finite_at[v]) {
            const auto& e = g.finite_edges[k];
            int other = e.a == v ? e.b : e.a;
            if (rank[other] < rank[v]) step.glue_edges.push_back({k, e});
            else step.new_open_edges.push_back(k);
        }
        for (int j : rays_at[v]) {
            step.new_rays.push_back({F + j, g.infinite_edges[j]});
            step.new_open_edges.push_back(F + j);
        }
        std::sort(step.new_open_edges.begin(), step.new_open_edges.end());
        switch (step.glue_edges.size()) {
            case 0: step.vertex_case = VertexCase::ThreeInfinite; break;
            case 1: step.vertex_case = VertexCase::TwoInfinite; break;
            case 2: step.vertex_case = VertexCase::OneInfinite; break;
            default:
                throw std::logic_error("sweep_decompose: balanced vertex with three downward edges");
        }
        sweep.steps.push_back(std::move(step));
    }
    return sweep;
}

TropicalGraph replay_sweep(const SweepDecomposition& sweep) {
    const int V = static_cast<int>(sweep.steps.size());
    int F = 0, I = 0;
    for (const auto& step : sweep.steps) {
        F += static_cast<int>(step.glue_edges.size());
        I += static_cast<int>(step.new_rays.size());
    }
    TropicalGraph g;
    g.vertices.resize(V);
    g.finite_edges.resize(F);
    g.infinite_edges.resize(I);
    std::vector<char> vertex_set(V, 0), finite_set(F, 0), ray_set(I, 0);
    for (const auto& step : sweep.steps) {
        if (step.vertex < 0 || step.vertex >= V || vertex_set[step.vertex])
            throw std::invalid_argument("replay_sweep: bad vertex id " +
                                        std::to_string(step.vertex));
        vertex_set[step.vertex] = 1;
        g.vertices[step.vertex].pos = step.position;
        for (const auto& rec : step.glue_edges) {
            if (rec.id < 0 || rec.id >= F || finite_set[rec.id])
                throw std::invalid_argument("replay_sweep: bad finite edge id " +
                                            std::to_string(rec.id));
            finite_set[rec.id] = 1;
            g.finite_edges[rec.id] = rec.edge;
        }
        for (const auto& rec : step.new_rays) {
            if (rec.id < F || rec.id >= F + I || ray_set[rec.id - F])
                throw std::invalid_argument("replay_sweep: bad infinite edge id " +
                                            std::to_string(rec.id));
            ray_set[rec.id - F] = 1;
            g.infinite_edges[rec.id - F] = rec.edge;
        }
    }
    return g;
}

std::vector<RaySurvival> ray_survival_diagnostic(const TropicalGraph& g) {
    require_structure(g);
    const int V = static_cast<int>(g.vertices.size());
    const int F = static_cast<int>(g.finite_edges.size());
    std::vector<std::vector<int>> adjacent(V);
    for (const auto& e : g.finite_edges) {
        adjacent[e.a].push_back(e.b);
        adjacent[e.b].push_back(e.a);
    }
    std::vector<int> rays_at(V, 0);
    for (const auto& e : g.infinite_edges) ++rays_at[e.v];

    // component ids over finite edges
    std::vector<int> component(V, -1);
    int comps = 0;
    for (int v = 0; v < V; ++v) {
        if (component[v] >= 0) continue;
        std::vector<int> stack{v};
        component[v] = comps;
        while (!stack.empty()) {
            int u = stack.back();
            stack.pop_back();
            for (int w : adjacent[u])
                if (component[w] < 0) {
                    component[w] = comps;
                    stack.push_back(w);
                }
        }
        ++comps;
    }

    std::vector<RaySurvival> out;
    for (std::size_t j = 0; j < g.infinite_edges.size(); ++j) {
        RaySurvival r;
        r.ray_id = F + static_cast<int>(j);
        r.vertex = g.infinite_edges[j].v;
        if (rays_at[r.vertex] >= 3) {
            r.vacuous = true;
            r.survives = true;
        } else {
            for (const auto& e : g.infinite_edges)
                if (e.v != r.vertex && component[e.v] == component[r.vertex]) {
                    r.survives = true;
                    break;
                }
        }
        out.push_back(r);
    }
    return out;
}

// --- complement regions -----------------------------------------------------

namespace {

// One-point compactification: every ray ends at an extra vertex (id V). Its
// rotation is the order in which a huge clockwise circle crosses the rays;
// parallel rays tie-break by their perpendicular offset.
ribbon::RibbonGraph compactified_map(const TropicalGraph& g) {
    using ribbon::Dart;
    const int V = static_cast<int>(g.vertices.size());
    const int F = static_cast<int>(g.finite_edges.size());
    const int I = static_cast<int>(g.infinite_edges.size());
    ribbon::RibbonGraph m;
    m.sigma.resize(2 * F + 2 * I);
    m.vertex_of.resize(2 * F + 2 * I);
    m.cyclic_order.assign(V + 1, {});
    for (int k = 0; k < F; ++k) {
        m.sigma[2 * k] = 2 * k + 1;
        m.sigma[2 * k + 1] = 2 * k;
        m.vertex_of[2 * k] = g.finite_edges[k].a;
        m.vertex_of[2 * k + 1] = g.finite_edges[k].b;
    }
    for (int j = 0; j < I; ++j) {
        Dart h = 2 * F + 2 * j;
        m.sigma[h] = h + 1;
        m.sigma[h + 1] = h;
        m.vertex_of[h] = g.infinite_edges[j].v;
        m.vertex_of[h + 1] = V;
    }
    auto out_dir = [&](Dart h) -> IVec2 {
        if (h < 2 * F) {
            const auto& e = g.finite_edges[h / 2];
            return h % 2 == 0 ? e.momentum : -e.momentum;
        }
        return g.infinite_edges[(h - 2 * F) / 2].momentum;
    };
    for (Dart h = 0; h < 2 * F + 2 * I; ++h)
        if (m.vertex_of[h] != V) m.cyclic_order[m.vertex_of[h]].push_back(h);
    for (int v = 0; v < V; ++v)
        std::sort(m.cyclic_order[v].begin(), m.cyclic_order[v].end(),
                  [&](Dart x, Dart y) { return angle_less(out_dir(x), out_dir(y)); });
    std::vector<int> rays(I);
    for (int j = 0; j < I; ++j) rays[j] = j;
    std::sort(rays.begin(), rays.end(), [&](int a, int b) {
        int c = angle_compare(g.infinite_edges[a].momentum, g.infinite_edges[b].momentum);
        if (c != 0) return c < 0;
        QVec2 prim = to_qvec(primitive(g.infinite_edges[a].momentum));
        return cross(prim, g.vertices[g.infinite_edges[a].v].pos) <
               cross(prim, g.vertices[g.infinite_edges[b].v].pos);
    });
    std::reverse(rays.begin(), rays.end());
    for (int j : rays) m.cyclic_order[V].push_back(2 * F + 2 * j + 1);
    return m;
}

}  // namespace

PlanarRegions planar_regions(const TropicalGraph& g) {
    auto report = validate_tropical(g);
    if (!report.ok)
        throw std::invalid_argument("planar_regions: invalid graph: " + report.errors.front());
    const int V = static_cast<int>(g.vertices.size());
    const int F = static_cast<int>(g.finite_edges.size());
    const int I = static_cast<int>(g.infinite_edges.size());
    auto m = compactified_map(g);
    auto fs = ribbon::faces(m);
    PlanarRegions regions;
    regions.region_count = static_cast<int>(fs.size());
    regions.bounded.assign(fs.size(), true);
    for (std::size_t f = 0; f < fs.size(); ++f) {
        if (fs[f].isolated_vertex == V) regions.bounded[f] = false;
        for (ribbon::Dart h : fs[f].walk)
            if (m.vertex_of[h] == V) regions.bounded[f] = false;
    }
    for (int v = 0; v < V; ++v) {
        std::array<int, 3> around{};
        for (int i = 0; i < 3; ++i)
            around[i] = ribbon::face_of_dart(fs, m.cyclic_order[v][i]);
        regions.vertex_regions.push_back(around);
    }
    for (int k = 0; k < F; ++k)
        regions.finite_edge_regions.push_back(
            {ribbon::face_of_dart(fs, 2 * k), ribbon::face_of_dart(fs, 2 * k + 1)});
    for (int j = 0; j < I; ++j)
        regions.infinite_edge_regions.push_back({ribbon::face_of_dart(fs, 2 * F + 2 * j),
                                                 ribbon::face_of_dart(fs, 2 * F + 2 * j + 1)});
    return regions;
}

ribbon::SurfaceInvariants mirror_invariants(const TropicalGraph& g) {
    auto regions = planar_regions(g);
    ribbon::SurfaceInvariants inv;
    for (bool b : regions.bounded)
        if (b) ++inv.genus;
    inv.punctures = static_cast<int>(g.infinite_edges.size());
    return inv;
}

}  // namespace tropmir::tropical
