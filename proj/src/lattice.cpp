#include "tropmir/lattice.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>

namespace tropmir::lattice {

namespace {

Int det2(const IVec2& a, const IVec2& b, const IVec2& c) { return cross(b - a, c - a); }

void require_structure(const Triangulation& t) {
    const int P = static_cast<int>(t.points.size());
    for (std::size_t k = 0; k < t.triangles.size(); ++k)
        for (int idx : t.triangles[k])
            if (idx < 0 || idx >= P)
                throw std::invalid_argument("triangle " + std::to_string(k) +
                                            ": point index out of range");
}

ValidationReport validate_polytope(const LatticePolytope& p) {
    ValidationReport report;
    const int n = static_cast<int>(p.vertices.size());
    if (n < 3) {
        report.fail("polytope has fewer than three vertices");
        return report;
    }
    for (int i = 0; i < n; ++i) {
        IVec2 d1 = p.vertices[(i + 1) % n] - p.vertices[i];
        IVec2 d2 = p.vertices[(i + 2) % n] - p.vertices[(i + 1) % n];
        if (cross(d1, d2) <= 0)
            report.fail("polytope is not strictly convex counterclockwise at vertex " +
                        std::to_string((i + 1) % n));
    }
    if (!report.ok) return report;
    // All left turns still allow a doubly wound boundary; a simple convex
    // polygon's edge directions wrap around the circle exactly once.
    int wraps = 0;
    for (int i = 0; i < n; ++i) {
        IVec2 d1 = p.vertices[(i + 1) % n] - p.vertices[i];
        IVec2 d2 = p.vertices[(i + 2) % n] - p.vertices[(i + 1) % n];
        if (angle_compare(d2, d1) < 0) ++wraps;
    }
    if (wraps != 1) report.fail("polytope boundary winds more than once");
    return report;
}

bool in_polytope(const LatticePolytope& p, const IVec2& q) {
    const int n = static_cast<int>(p.vertices.size());
    for (int i = 0; i < n; ++i)
        if (cross(p.vertices[(i + 1) % n] - p.vertices[i], q - p.vertices[i]) < 0) return false;
    return true;
}

Int polygon_area2(const LatticePolytope& p) {
    Int s = 0;
    const int n = static_cast<int>(p.vertices.size());
    for (int i = 0; i < n; ++i) s += cross(p.vertices[i], p.vertices[(i + 1) % n]);
    return s;
}

using QPoly = std::vector<QVec2>;

QPoly clip_halfplane(const QPoly& poly, const QVec2& a, const QVec2& b) {
    QPoly out;
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
        const QVec2& cur = poly[i];
        const QVec2& nxt = poly[(i + 1) % n];
        Rat sc = cross(b - a, cur - a);
        Rat sn = cross(b - a, nxt - a);
        if (sc >= 0) out.push_back(cur);
        if ((sc > 0 && sn < 0) || (sc < 0 && sn > 0)) {
            Rat u = sc / (sc - sn);
            out.push_back({cur.x + u * (nxt.x - cur.x), cur.y + u * (nxt.y - cur.y)});
        }
    }
    return out;
}

Rat qarea2(const QPoly& poly) {
    Rat s = 0;
    for (std::size_t i = 0; i < poly.size(); ++i)
        s += cross(poly[i], poly[(i + 1) % poly.size()]);
    return s;
}

// Doubled area of the intersection of two counterclockwise lattice triangles.
Rat triangle_overlap_area2(const std::array<IVec2, 3>& a, const std::array<IVec2, 3>& b) {
    QPoly poly{to_qvec(a[0]), to_qvec(a[1]), to_qvec(a[2])};
    for (int i = 0; i < 3 && poly.size() >= 3; ++i)
        poly = clip_halfplane(poly, to_qvec(b[i]), to_qvec(b[(i + 1) % 3]));
    if (poly.size() < 3) return 0;
    return qarea2(poly);
}

std::array<int, 3> ccw_triangle(const Triangulation& t, std::size_t k) {
    std::array<int, 3> tri = t.triangles[k];
    Int d = det2(t.points[tri[0]], t.points[tri[1]], t.points[tri[2]]);
    if (d == 0)
        throw std::invalid_argument("triangle " + std::to_string(k) + " is degenerate");
    if (d < 0) std::swap(tri[1], tri[2]);
    return tri;
}

// Triangles around each undirected primal edge, with the outward momentum of
// the dual edge leaving that triangle (clockwise quarter turn of the edge as
// traversed counterclockwise around the triangle).
struct EdgeUse {
    int triangle = 0;
    int third = 0;
    IVec2 momentum;
};

std::map<std::pair<int, int>, std::vector<EdgeUse>> edge_uses(const Triangulation& t) {
    std::map<std::pair<int, int>, std::vector<EdgeUse>> uses;
    for (std::size_t k = 0; k < t.triangles.size(); ++k) {
        auto tri = ccw_triangle(t, k);
        for (int i = 0; i < 3; ++i) {
            int u = tri[i], v = tri[(i + 1) % 3], w = tri[(i + 2) % 3];
            IVec2 m = rotate_cw(t.points[v] - t.points[u]);
            uses[{std::min(u, v), std::max(u, v)}].push_back({static_cast<int>(k), w, m});
        }
    }
    return uses;
}

}  // namespace

LatticePolytope convex_hull_polytope(const std::vector<IVec2>& points) {
    std::vector<IVec2> pts = points;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    const int n = static_cast<int>(pts.size());
    if (n < 3) return {pts};
    std::vector<IVec2> hull(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {
        while (k >= 2 && det2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (int i = n - 2, lower = k + 1; i >= 0; --i) {
        while (k >= lower && det2(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return {hull};
}

ValidationReport validate_triangulation(const Triangulation& t) {
    require_structure(t);
    ValidationReport report = validate_polytope(t.polytope);
    const bool poly_ok = report.ok;
    for (std::size_t v = 0; v < t.points.size(); ++v)
        for (std::size_t w = v + 1; w < t.points.size(); ++w)
            if (t.points[v] == t.points[w])
                report.fail("points " + std::to_string(v) + " and " + std::to_string(w) +
                            " coincide at " + to_string(t.points[v]));
    if (poly_ok)
        for (std::size_t v = 0; v < t.points.size(); ++v)
            if (!in_polytope(t.polytope, t.points[v]))
                report.fail("point " + std::to_string(v) + " at " + to_string(t.points[v]) +
                            " lies outside the polytope");
    // Points inside a convex polytope put every triangle inside it too.
    std::vector<Int> dets;
    for (std::size_t k = 0; k < t.triangles.size(); ++k) {
        const auto& tri = t.triangles[k];
        Int d = det2(t.points[tri[0]], t.points[tri[1]], t.points[tri[2]]);
        dets.push_back(d);
        report.note("triangle " + std::to_string(k) + ": determinant " + d.str());
        if (abs(d) != 1)
            report.fail("triangle " + std::to_string(k) + ": determinant " + d.str() +
                        ", not unimodular");
    }
    for (std::size_t k1 = 0; k1 < t.triangles.size(); ++k1) {
        if (dets[k1] == 0) continue;
        auto a = ccw_triangle(t, k1);
        std::array<IVec2, 3> pa{t.points[a[0]], t.points[a[1]], t.points[a[2]]};
        for (std::size_t k2 = k1 + 1; k2 < t.triangles.size(); ++k2) {
            if (dets[k2] == 0) continue;
            auto b = ccw_triangle(t, k2);
            std::array<IVec2, 3> pb{t.points[b[0]], t.points[b[1]], t.points[b[2]]};
            if (triangle_overlap_area2(pa, pb) > 0)
                report.fail("triangles " + std::to_string(k1) + " and " + std::to_string(k2) +
                            " overlap");
        }
    }
    if (poly_ok) {
        Int covered = 0;
        for (const Int& d : dets) covered += abs(d);
        Int area = polygon_area2(t.polytope);
        if (covered != area)
            report.fail("triangles cover area " + covered.str() + "/2 but the polytope has area " +
                        area.str() + "/2");
        else
            report.note("triangles cover the polytope exactly");
    }
    return report;
}

namespace {

// Phase-1 simplex with Bland's rule, exact rationals: find x with
// rows . x >= 1 (x free, encoded as a difference of nonnegatives).
std::optional<std::vector<Rat>> feasible_point(const std::vector<std::vector<Rat>>& rows,
                                               int nvar) {
    const int R = static_cast<int>(rows.size());
    if (R == 0) return std::vector<Rat>(nvar, Rat(0));
    const int cols = 2 * nvar + 2 * R;  // x+, x-, surplus, artificial
    std::vector<std::vector<Rat>> tableau(R, std::vector<Rat>(cols + 1, Rat(0)));
    std::vector<int> basis(R);
    for (int r = 0; r < R; ++r) {
        for (int z = 0; z < nvar; ++z) {
            tableau[r][z] = rows[r][z];
            tableau[r][nvar + z] = -rows[r][z];
        }
        tableau[r][2 * nvar + r] = -1;
        tableau[r][2 * nvar + R + r] = 1;
        tableau[r][cols] = 1;
        basis[r] = 2 * nvar + R + r;
    }
    auto artificial = [&](int j) { return j >= 2 * nvar + R; };
    for (;;) {
        int enter = -1;
        for (int j = 0; j < cols && enter < 0; ++j) {
            Rat reduced = artificial(j) ? Rat(1) : Rat(0);
            for (int r = 0; r < R; ++r)
                if (artificial(basis[r])) reduced -= tableau[r][j];
            if (reduced < 0) enter = j;
        }
        if (enter < 0) break;
        int leave = -1;
        Rat best;
        for (int r = 0; r < R; ++r) {
            if (tableau[r][enter] <= 0) continue;
            Rat ratio = tableau[r][cols] / tableau[r][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[r] < basis[leave])) {
                leave = r;
                best = ratio;
            }
        }
        if (leave < 0) return std::nullopt;
        Rat scale = tableau[leave][enter];
        for (int j = 0; j <= cols; ++j) tableau[leave][j] /= scale;
        for (int r = 0; r < R; ++r) {
            if (r == leave || tableau[r][enter] == 0) continue;
            Rat factor = tableau[r][enter];
            for (int j = 0; j <= cols; ++j) tableau[r][j] -= factor * tableau[leave][j];
        }
        basis[leave] = enter;
    }
    Rat left_over = 0;
    for (int r = 0; r < R; ++r)
        if (artificial(basis[r])) left_over += tableau[r][cols];
    if (left_over != 0) return std::nullopt;
    std::vector<Rat> full(cols, Rat(0));
    for (int r = 0; r < R; ++r) full[basis[r]] = tableau[r][cols];
    std::vector<Rat> x(nvar);
    for (int z = 0; z < nvar; ++z) x[z] = full[z] - full[nvar + z];
    return x;
}

// Affine gradient of the lift over one counterclockwise triangle.
QVec2 lift_gradient(const Triangulation& t, const std::array<int, 3>& tri,
                    const std::vector<Rat>& h) {
    IVec2 d1 = t.points[tri[1]] - t.points[tri[0]];
    IVec2 d2 = t.points[tri[2]] - t.points[tri[0]];
    Rat dh1 = h[tri[1]] - h[tri[0]];
    Rat dh2 = h[tri[2]] - h[tri[0]];
    Rat delta{cross(d1, d2)};
    return {(dh1 * Rat(d2.y) - dh2 * Rat(d1.y)) / delta,
            (Rat(d1.x) * dh2 - Rat(d2.x) * dh1) / delta};
}

}  // namespace

std::optional<std::vector<Rat>> regular_lift(const Triangulation& t) {
    require_structure(t);
    const int P = static_cast<int>(t.points.size());
    auto uses = edge_uses(t);
    std::vector<std::vector<Rat>> rows;
    for (const auto& [edge, list] : uses) {
        for (std::size_t u1 = 0; u1 < list.size(); ++u1) {
            for (std::size_t u2 = u1 + 1; u2 < list.size(); ++u2) {
                // Strict convexity across the fold: the opposite point of one
                // triangle lifts strictly above the other's plane. Barycentric
                // weights extend that plane affinely.
                auto tri = ccw_triangle(t, list[u1].triangle);
                int y = list[u2].third;
                const IVec2 &p0 = t.points[tri[0]], &p1 = t.points[tri[1]], &p2 = t.points[tri[2]];
                Rat delta{det2(p0, p1, p2)};
                Rat w1 = Rat(det2(p0, t.points[y], p2)) / delta;
                Rat w2 = Rat(det2(p0, p1, t.points[y])) / delta;
                Rat w0 = Rat(1) - w1 - w2;
                std::vector<Rat> row(P, Rat(0));
                row[y] += 1;
                row[tri[0]] -= w0;
                row[tri[1]] -= w1;
                row[tri[2]] -= w2;
                rows.push_back(std::move(row));
            }
        }
    }
    auto h = feasible_point(rows, P);
    if (!h) return std::nullopt;
    if (!t.triangles.empty()) {
        // Normalize so the first triangle lifts to the zero plane.
        auto tri = ccw_triangle(t, 0);
        QVec2 g = lift_gradient(t, tri, *h);
        Rat base = (*h)[tri[0]];
        const IVec2& origin = t.points[tri[0]];
        for (int z = 0; z < P; ++z)
            (*h)[z] -= base + g.x * Rat(t.points[z].x - origin.x) +
                       g.y * Rat(t.points[z].y - origin.y);
    }
    return h;
}

tropical::TropicalGraph dual_tropical_graph(const Triangulation& t) {
    auto report = validate_triangulation(t);
    if (!report.ok)
        throw std::invalid_argument("dual_tropical_graph: invalid triangulation: " +
                                    report.errors.front());
    auto lift = regular_lift(t);
    if (!lift)
        throw std::invalid_argument(
            "dual_tropical_graph: the triangulation admits no convex lift (not regular)");
    tropical::TropicalGraph g;
    for (std::size_t k = 0; k < t.triangles.size(); ++k)
        g.vertices.push_back({lift_gradient(t, ccw_triangle(t, k), *lift)});
    for (const auto& [edge, list] : edge_uses(t)) {
        (void)edge;
        if (list.size() == 1) {
            g.infinite_edges.push_back({list.front().triangle, list.front().momentum});
            continue;
        }
        if (list.size() != 2)
            throw std::logic_error("dual_tropical_graph: primal edge in more than two triangles");
        const EdgeUse& lo = list[0].triangle < list[1].triangle ? list[0] : list[1];
        const EdgeUse& hi = list[0].triangle < list[1].triangle ? list[1] : list[0];
        g.finite_edges.push_back({lo.triangle, hi.triangle, lo.momentum});
    }
    return g;
}

ChartSet fan_charts(const Triangulation& t) {
    auto report = validate_triangulation(t);
    if (!report.ok)
        throw std::invalid_argument("fan_charts: invalid triangulation: " +
                                    report.errors.front());
    ChartSet set;
    for (const auto& tri : t.triangles) {
        Chart c{{tri[0], tri[1], tri[2]}};
        std::sort(c.points.begin(), c.points.end());
        set.charts.push_back(c);
    }
    for (const auto& [edge, list] : edge_uses(t)) {
        if (list.size() != 2) continue;
        ChartAdjacency adj;
        adj.a = std::min(list[0].triangle, list[1].triangle);
        adj.b = std::max(list[0].triangle, list[1].triangle);
        adj.shared = {edge.first, edge.second};
        set.adjacencies.push_back(adj);
    }
    std::sort(set.adjacencies.begin(), set.adjacencies.end(),
              [](const ChartAdjacency& l, const ChartAdjacency& r) {
                  return std::pair(l.a, l.b) < std::pair(r.a, r.b);
              });
    return set;
}

}  // namespace tropmir::lattice
