#include "tropmir/viz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

namespace tropmir::viz {

namespace {

std::string momentum_label(const IVec2& m) {
    return "(" + m.x.str() + "," + m.y.str() + ")";
}

std::string rat_text(const Rat& r) {
    Int den = denominator(r);
    if (den == 1) return numerator(r).str();
    return numerator(r).str() + "/" + den.str();
}

double to_double(const Rat& r) { return r.convert_to<double>(); }

struct Point {
    double x = 0, y = 0;
};

void emit_svg_header(std::ostringstream& os, double x0, double y0, double w, double h) {
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << x0 << " " << y0 << " " << w
       << " " << h << "\">\n";
}

// y axis flipped so the drawing matches the usual plane orientation.
void emit_line(std::ostringstream& os, Point a, Point b, const char* style) {
    os << "  <line x1=\"" << a.x << "\" y1=\"" << -a.y << "\" x2=\"" << b.x << "\" y2=\""
       << -b.y << "\" " << style << "/>\n";
}

void emit_dot(std::ostringstream& os, Point p, double r) {
    os << "  <circle cx=\"" << p.x << "\" cy=\"" << -p.y << "\" r=\"" << r
       << "\" fill=\"black\"/>\n";
}

}  // namespace

std::string tropical_dot(const tropical::TropicalGraph& g) {
    std::ostringstream os;
    os << "graph tropical {\n";
    for (std::size_t v = 0; v < g.vertices.size(); ++v) {
        const auto& p = g.vertices[v].pos;
        os << "  v" << v << " [label=\"v" << v << " (" << rat_text(p.x) << "," << rat_text(p.y)
           << ")\"];\n";
    }
    for (std::size_t k = 0; k < g.finite_edges.size(); ++k) {
        const auto& e = g.finite_edges[k];
        os << "  v" << e.a << " -- v" << e.b << " [label=\"e" << k << " "
           << momentum_label(e.momentum) << "\"];\n";
    }
    const std::size_t F = g.finite_edges.size();
    for (std::size_t j = 0; j < g.infinite_edges.size(); ++j) {
        const auto& e = g.infinite_edges[j];
        os << "  r" << j << " [shape=point, label=\"\"];\n";
        os << "  v" << e.v << " -- r" << j << " [style=dashed, label=\"e" << F + j << " "
           << momentum_label(e.momentum) << "\"];\n";
    }
    os << "}\n";
    return os.str();
}

std::string ribbon_dot(const ribbon::RibbonGraph& x) {
    std::ostringstream os;
    os << "graph ribbon {\n";
    for (int v = 0; v < x.vertex_count(); ++v) {
        os << "  v" << v << " [label=\"v" << v << "\"];\n";
    }
    int stub = 0;
    for (int h = 0; h < x.dart_count(); ++h) {
        if (x.edge_of(h) != h) continue;
        if (x.is_external(h)) {
            os << "  x" << stub << " [shape=point, label=\"\"];\n";
            os << "  v" << x.vertex_of[h] << " -- x" << stub << " [style=dashed, label=\"d" << h
               << "\"];\n";
            ++stub;
        } else {
            os << "  v" << x.vertex_of[h] << " -- v" << x.vertex_of[x.sigma[h]] << " [label=\"d"
               << h << "|d" << x.sigma[h] << "\"];\n";
        }
    }
    auto fs = ribbon::faces(x);
    for (std::size_t f = 0; f < fs.size(); ++f) {
        os << "  // face " << f << ":";
        if (fs[f].walk.empty()) {
            os << " isolated vertex v" << fs[f].isolated_vertex;
        } else {
            for (ribbon::Dart h : fs[f].walk) os << " d" << h;
        }
        if (fs[f].is_cycle) os << " (cycle)";
        for (const auto& name : fs[f].labels) os << " [" << name << "]";
        os << "\n";
    }
    os << "}\n";
    return os.str();
}

std::string quiver_dot(const quiver::Quiver& q) {
    std::ostringstream os;
    os << "digraph quiver {\n";
    for (int v = 0; v < q.vertex_count; ++v) os << "  q" << v << " [label=\"" << v << "\"];\n";
    for (const auto& [s, t] : q.arrows) os << "  q" << s << " -> q" << t << ";\n";
    os << "}\n";
    return os.str();
}

std::string diagram_dot(const charts::ChartDiagram& d) {
    std::ostringstream os;
    os << "digraph diagram {\n";
    for (std::size_t i = 0; i < d.objects.size(); ++i) {
        const auto& o = d.objects[i];
        const bool vertex = o.kind == charts::ObjectKind::Vertex;
        os << "  o" << i << " [shape=" << (vertex ? "ellipse" : "box") << ", label=\""
           << (vertex ? "V" : "E") << o.source_id << ": " << o.function_label << "\"];\n";
    }
    for (const auto& a : d.arrows)
        os << "  o" << a.from << " -> o" << a.to << " [label=\"" << a.mapping_label << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string tropical_svg(const tropical::TropicalGraph& g) {
    std::vector<Point> pos;
    pos.reserve(g.vertices.size());
    for (const auto& v : g.vertices) pos.push_back({to_double(v.pos.x), to_double(v.pos.y)});
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    if (!pos.empty()) {
        xmin = xmax = pos[0].x;
        ymin = ymax = pos[0].y;
        for (const auto& p : pos) {
            xmin = std::min(xmin, p.x);
            xmax = std::max(xmax, p.x);
            ymin = std::min(ymin, p.y);
            ymax = std::max(ymax, p.y);
        }
    }
    const double pad = std::max({1.0, 0.25 * (xmax - xmin), 0.25 * (ymax - ymin)});
    xmin -= pad;
    xmax += pad;
    ymin -= pad;
    ymax += pad;

    // Clip a ray from p along m to the padded box.
    auto clip = [&](Point p, double mx, double my) {
        double t = std::numeric_limits<double>::infinity();
        if (mx > 0) t = std::min(t, (xmax - p.x) / mx);
        if (mx < 0) t = std::min(t, (xmin - p.x) / mx);
        if (my > 0) t = std::min(t, (ymax - p.y) / my);
        if (my < 0) t = std::min(t, (ymin - p.y) / my);
        if (!std::isfinite(t) || t < 0) t = 0;
        return Point{p.x + t * mx, p.y + t * my};
    };

    std::ostringstream os;
    emit_svg_header(os, xmin, -ymax, xmax - xmin, ymax - ymin);
    const char* solid = "stroke=\"black\" stroke-width=\"0.05\"";
    const char* dashed = "stroke=\"black\" stroke-width=\"0.05\" stroke-dasharray=\"0.2,0.1\"";
    for (const auto& e : g.finite_edges) emit_line(os, pos[e.a], pos[e.b], solid);
    for (const auto& e : g.infinite_edges) {
        Point base = pos[e.v];
        Point tip = clip(base, e.momentum.x.convert_to<double>(),
                         e.momentum.y.convert_to<double>());
        emit_line(os, base, tip, dashed);
    }
    for (const auto& p : pos) emit_dot(os, p, 0.08);
    os << "</svg>\n";
    return os.str();
}

std::string ribbon_svg(const ribbon::RibbonGraph& x) {
    // Circular layout, display-only: vertices on a circle, parallel edges
    // separated by bowing, loops as small circles, external darts as stubs.
    const int V = std::max(1, x.vertex_count());
    const double R = 10.0;
    std::vector<Point> pos(x.vertex_count());
    for (int v = 0; v < x.vertex_count(); ++v) {
        double a = 2.0 * 3.14159265358979323846 * v / V;
        pos[v] = {R * std::cos(a), R * std::sin(a)};
    }
    std::ostringstream os;
    emit_svg_header(os, -R - 3, -R - 3, 2 * R + 6, 2 * R + 6);
    const char* solid = "stroke=\"black\" stroke-width=\"0.1\" fill=\"none\"";
    std::map<std::pair<int, int>, int> seen;
    for (int h = 0; h < x.dart_count(); ++h) {
        if (x.edge_of(h) != h) continue;
        int a = x.vertex_of[h];
        if (x.is_external(h)) {
            Point p = pos[a];
            double len = std::hypot(p.x, p.y);
            double ux = len > 0 ? p.x / len : 1.0, uy = len > 0 ? p.y / len : 0.0;
            emit_line(os, p, {p.x + 2 * ux, p.y + 2 * uy},
                      "stroke=\"black\" stroke-width=\"0.1\" stroke-dasharray=\"0.4,0.2\"");
            continue;
        }
        int b = x.vertex_of[x.sigma[h]];
        if (a == b) {
            Point p = pos[a];
            double rank = 1.0 + seen[{a, a}]++;
            os << "  <circle cx=\"" << p.x * (R + rank) / R << "\" cy=\""
               << -p.y * (R + rank) / R << "\" r=\"" << rank << "\" " << solid << "/>\n";
            continue;
        }
        int lo = std::min(a, b), hi = std::max(a, b);
        int rank = seen[{lo, hi}]++;
        Point pa = pos[a], pb = pos[b];
        Point mid{(pa.x + pb.x) / 2, (pa.y + pb.y) / 2};
        double nx = -(pb.y - pa.y), ny = pb.x - pa.x;
        double nl = std::hypot(nx, ny);
        double bow = 0.8 * rank;
        Point ctrl{mid.x + (nl > 0 ? bow * nx / nl : 0), mid.y + (nl > 0 ? bow * ny / nl : 0)};
        os << "  <path d=\"M " << pa.x << " " << -pa.y << " Q " << ctrl.x << " " << -ctrl.y
           << " " << pb.x << " " << -pb.y << "\" " << solid << "/>\n";
    }
    for (const auto& p : pos) emit_dot(os, p, 0.3);
    os << "</svg>\n";
    return os.str();
}

}  // namespace tropmir::viz
