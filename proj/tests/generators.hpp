#pragma once

// Deterministic random instances for property tests. Everything is driven by
// a caller-owned std::mt19937_64 so failures reproduce from the seed.

#include <algorithm>
#include <array>
#include <random>
#include <vector>

#include "tropmir/numeric.hpp"
#include "tropmir/ribbon.hpp"

namespace gen {

using tropmir::Int;
using tropmir::IVec2;

// Connected ribbon graph with no external darts: a random spanning tree plus
// extra edges (loops allowed), with shuffled cyclic orders.
inline tropmir::ribbon::RibbonGraph random_ribbon(std::mt19937_64& rng, int max_vertices = 6,
                                                  int max_extra_edges = 5) {
    using tropmir::ribbon::Dart;
    using tropmir::ribbon::RibbonGraph;
    const int V = 1 + static_cast<int>(rng() % max_vertices);
    int extra = static_cast<int>(rng() % (max_extra_edges + 1));
    if (V == 1 && extra == 0) extra = 1;
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < V; ++v) edges.emplace_back(v, static_cast<int>(rng() % v));
    for (int i = 0; i < extra; ++i)
        edges.emplace_back(static_cast<int>(rng() % V), static_cast<int>(rng() % V));
    RibbonGraph g;
    g.cyclic_order.assign(V, {});
    for (auto [u, v] : edges) {
        Dart h1 = g.dart_count(), h2 = h1 + 1;
        g.sigma.push_back(h2);
        g.sigma.push_back(h1);
        g.vertex_of.push_back(u);
        g.vertex_of.push_back(v);
        g.cyclic_order[u].push_back(h1);
        g.cyclic_order[v].push_back(h2);
    }
    for (auto& word : g.cyclic_order) std::shuffle(word.begin(), word.end(), rng);
    return g;
}

// A legal random move on g (contract a non-loop edge, expand a vertex along a
// random split, or subdivide an edge).
inline tropmir::ribbon::Move random_move(std::mt19937_64& rng, const tropmir::ribbon::RibbonGraph& g) {
    using tropmir::ribbon::Dart;
    using tropmir::ribbon::Move;
    for (;;) {
        switch (rng() % 3) {
            case 0: {
                std::vector<Dart> nonloop;
                for (Dart h = 0; h < g.dart_count(); ++h)
                    if (g.edge_of(h) == h && !g.is_external(h) &&
                        g.vertex_of[h] != g.vertex_of[g.sigma[h]])
                        nonloop.push_back(h);
                if (nonloop.empty()) break;
                Move m;
                m.kind = Move::Kind::contract;
                m.edge_dart = nonloop[rng() % nonloop.size()];
                return m;
            }
            case 1: {
                if (g.vertex_count() == 0) break;
                int v = static_cast<int>(rng() % g.vertex_count());
                const auto& word = g.cyclic_order[v];
                Move m;
                m.kind = Move::Kind::expand;
                m.vertex = v;
                if (!word.empty()) {
                    const int k = static_cast<int>(word.size());
                    int p1 = static_cast<int>(rng() % k);
                    int p2 = static_cast<int>(rng() % k);
                    for (int i = p1; i != p2; i = (i + 1) % k) m.arc_a.push_back(word[i]);
                    for (int i = p2; i != p1; i = (i + 1) % k) m.arc_b.push_back(word[i]);
                    if (p1 == p2)
                        for (int i = 0; i < k; ++i) m.arc_b.push_back(word[(p2 + i) % k]);
                }
                return m;
            }
            default: {
                std::vector<Dart> internal;
                for (Dart h = 0; h < g.dart_count(); ++h)
                    if (g.edge_of(h) == h && !g.is_external(h)) internal.push_back(h);
                if (internal.empty()) break;
                Move m;
                m.kind = Move::Kind::subdivide;
                m.edge_dart = internal[rng() % internal.size()];
                return m;
            }
        }
    }
}

// --- random unimodular triangulations ----------------------------------------

struct GeneratedTriangulation {
    std::vector<IVec2> points;
    std::vector<std::array<int, 3>> triangles;  // counterclockwise index triples
};

namespace detail {

inline Int area2(const IVec2& a, const IVec2& b, const IVec2& c) {
    return cross(b - a, c - a);
}

inline std::vector<IVec2> convex_hull(std::vector<IVec2> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const int n = static_cast<int>(pts.size());
    if (n < 3) return pts;
    std::vector<IVec2> hull(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && area2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (int i = n - 2, lower = k + 1; i >= 0; --i) {
        while (k >= lower && area2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;  // counterclockwise, no collinear vertices
}

inline Int polygon_area2(const std::vector<IVec2>& poly) {
    Int s = 0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        s += cross(poly[i], poly[(i + 1) % poly.size()]);
    return s;
}

inline bool in_hull(const std::vector<IVec2>& hull, const IVec2& p) {
    for (std::size_t i = 0; i < hull.size(); ++i)
        if (area2(hull[i], hull[(i + 1) % hull.size()], p) < 0) return false;
    return true;
}

// Lex-order incremental triangulation of all the points; every triangle is an
// empty lattice triangle, hence unimodular.
inline std::vector<std::array<int, 3>> lex_triangulate(const std::vector<IVec2>& pts) {
    const int n = static_cast<int>(pts.size());
    std::vector<std::array<int, 3>> tris;
    auto push_tri = [&](int i, int j, int k) {
        if (area2(pts[i], pts[j], pts[k]) < 0) std::swap(j, k);
        tris.push_back({i, j, k});
    };
    // Initial collinear run.
    int m = 2;
    while (m < n && area2(pts[0], pts[1], pts[m]) == 0) ++m;
    std::vector<int> hull;  // counterclockwise chain of indices
    {
        for (int i = 0; i + 1 < m; ++i) push_tri(i, i + 1, m);
        bool left = area2(pts[0], pts[m - 1], pts[m]) > 0;
        if (left) {
            for (int i = 0; i < m; ++i) hull.push_back(i);
            hull.push_back(m);
        } else {
            for (int i = m - 1; i >= 0; --i) hull.push_back(i);
            hull.push_back(m);
        }
    }
    for (int p = m + 1; p < n; ++p) {
        const int hs = static_cast<int>(hull.size());
        std::vector<char> vis(hs, 0);
        for (int i = 0; i < hs; ++i)
            vis[i] = area2(pts[hull[i]], pts[hull[(i + 1) % hs]], pts[p]) < 0;
        // Rotate so edge 0 is not visible, making the visible run contiguous.
        int rot = 0;
        while (vis[rot]) ++rot;
        auto at = [&](int i) { return (rot + i) % hs; };
        int s = -1, e = -1;
        for (int i = 0; i < hs; ++i) {
            if (!vis[at(i)]) continue;
            if (s < 0) s = i;
            e = i;
        }
        if (s < 0) throw std::logic_error("lex_triangulate: interior point");
        for (int i = s; i <= e; ++i)
            push_tri(hull[at(i)], hull[at((i + 1) % hs)], p);
        std::vector<int> next_hull;
        for (int i = e + 1; i < hs + s + 1; ++i) next_hull.push_back(hull[at(i % hs)]);
        next_hull.push_back(p);
        hull = std::move(next_hull);
    }
    return tris;
}

// Sign of the lifted orientation: positive when d sits above the plane
// through a, b, c (heights h*).
inline Int lifted_orient(const IVec2& a, Int ha, const IVec2& b, Int hb, const IVec2& c, Int hc,
                         const IVec2& d, Int hd) {
    Int bx = b.x - a.x, by = b.y - a.y, bh = hb - ha;
    Int cx = c.x - a.x, cy = c.y - a.y, ch = hc - ha;
    Int dx = d.x - a.x, dy = d.y - a.y, dh = hd - ha;
    return bx * (cy * dh - ch * dy) - by * (cx * dh - ch * dx) + bh * (cx * dy - cy * dx);
}

// Lawson flips towards the regular triangulation of jittered convex heights.
inline void lawson_flips(const std::vector<IVec2>& pts, std::vector<std::array<int, 3>>& tris,
                         std::mt19937_64& rng) {
    std::vector<Int> h(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        h[i] = 64 * (pts[i].x * pts[i].x + pts[i].y * pts[i].y) + static_cast<int>(rng() % 16);
    for (int round = 0; round < 1000; ++round) {
        bool flipped = false;
        for (std::size_t t1 = 0; t1 < tris.size() && !flipped; ++t1) {
            for (std::size_t t2 = t1 + 1; t2 < tris.size() && !flipped; ++t2) {
                // Shared edge?
                std::vector<int> shared;
                for (int i : tris[t1])
                    for (int j : tris[t2])
                        if (i == j) shared.push_back(i);
                if (shared.size() != 2) continue;
                int a = shared[0], b = shared[1], c = -1, d = -1;
                for (int i : tris[t1])
                    if (i != a && i != b) c = i;
                for (int j : tris[t2])
                    if (j != a && j != b) d = j;
                // Orient (a,b,c) counterclockwise for the lifted test.
                if (area2(pts[a], pts[b], pts[c]) < 0) std::swap(a, b);
                if (lifted_orient(pts[a], h[a], pts[b], h[b], pts[c], h[c], pts[d], h[d]) >= 0)
                    continue;
                // Flip only across a strictly convex quad.
                Int o1 = area2(pts[c], pts[d], pts[a]);
                Int o2 = area2(pts[c], pts[d], pts[b]);
                if (!((o1 > 0 && o2 < 0) || (o1 < 0 && o2 > 0))) continue;
                auto fix = [&](int i, int j, int k) {
                    std::array<int, 3> t{i, j, k};
                    if (area2(pts[t[0]], pts[t[1]], pts[t[2]]) < 0) std::swap(t[1], t[2]);
                    return t;
                };
                tris[t1] = fix(c, d, a);
                tris[t2] = fix(c, d, b);
                flipped = true;
            }
        }
        if (!flipped) return;
    }
    throw std::logic_error("lawson_flips: did not settle");
}

}  // namespace detail

// Maximal lattice triangulation of a random small convex lattice polygon: the
// lex-order triangulation of all its lattice points, stirred by exact Lawson
// flips towards a jittered regular triangulation. Every triangle has lattice
// area 1/2.
inline GeneratedTriangulation random_unimodular_triangulation(std::mt19937_64& rng,
                                                              int max_triangles = 20) {
    for (;;) {
        const int box = 4;
        const int npts = 3 + static_cast<int>(rng() % 3);
        std::vector<IVec2> raw;
        for (int i = 0; i < npts; ++i)
            raw.push_back({Int(static_cast<int>(rng() % (box + 1))),
                           Int(static_cast<int>(rng() % (box + 1)))});
        auto hull = detail::convex_hull(raw);
        if (hull.size() < 3) continue;
        Int a2 = detail::polygon_area2(hull);
        if (a2 <= 0 || a2 > max_triangles) continue;
        GeneratedTriangulation out;
        for (int x = 0; x <= box; ++x)
            for (int y = 0; y <= box; ++y) {
                IVec2 p{Int(x), Int(y)};
                if (detail::in_hull(hull, p)) out.points.push_back(p);
            }
        std::sort(out.points.begin(), out.points.end());
        out.triangles = detail::lex_triangulate(out.points);
        detail::lawson_flips(out.points, out.triangles, rng);
        return out;
    }
}

}  // namespace gen
