#include <array>
#include <iostream>
#include <string>
#include <vector>

#include "tropmir/charts.hpp"
#include "tropmir/json_io.hpp"
#include "tropmir/lattice.hpp"
#include "tropmir/skeleton.hpp"
#include "tropmir/viz.hpp"

#include "test_util.hpp"

using namespace tropmir;
using io::json;

namespace {

QVec2 qpos(int x, int y) { return {Rat(x), Rat(y)}; }

lattice::Triangulation make_triangulation(std::vector<IVec2> points,
                                          std::vector<std::array<int, 3>> triangles) {
    lattice::Triangulation t;
    t.points = std::move(points);
    t.triangles = std::move(triangles);
    t.polytope = lattice::convex_hull_polytope(t.points);
    return t;
}

lattice::Triangulation split_square() {
    return make_triangulation({{0, 0}, {1, 0}, {0, 1}, {1, 1}}, {{0, 1, 2}, {1, 3, 2}});
}

lattice::Triangulation skew_fan() {
    return make_triangulation({{0, 0}, {1, 0}, {0, -1}, {5, 1}, {2, 0}},
                              {{0, 1, 2}, {0, 1, 3}, {1, 2, 4}, {2, 3, 4}, {3, 1, 4}});
}

tropical::TropicalGraph w_graph() {
    tropical::TropicalGraph g;
    g.vertices = {{qpos(0, 0)}, {qpos(4, 0)}, {qpos(2, 2)}};
    g.finite_edges = {{0, 2, {1, 1}}, {1, 2, {-1, 1}}};
    g.infinite_edges = {{0, {0, -1}}, {0, {-1, 0}}, {1, {0, -1}}, {1, {1, 0}}, {2, {0, 2}}};
    return g;
}

int count_of(const std::string& text, const std::string& needle) {
    int n = 0;
    for (std::size_t at = text.find(needle); at != std::string::npos;
         at = text.find(needle, at + needle.size()))
        ++n;
    return n;
}

void test_atoms() {
    REQUIRE(io::int_to_json(Int(42)).is_number_integer(), "small integers stay numbers");
    REQUIRE_EQ(io::int_from_json(io::int_to_json(Int(-7))), Int(-7), "integer round trip");
    Int big("123456789012345678901234567890");
    REQUIRE(io::int_to_json(big).is_string(), "huge integers become strings");
    REQUIRE_EQ(io::int_from_json(io::int_to_json(big)), big, "huge integer round trip");

    REQUIRE(io::rat_to_json(Rat(5)).is_number_integer(), "whole rationals stay numbers");
    Rat frac(Int(5), Int(3));
    REQUIRE_EQ(io::rat_to_json(frac).get<std::string>(), std::string("5/3"), "fraction text");
    REQUIRE_EQ(io::rat_from_json(io::rat_to_json(frac)), frac, "fraction round trip");
    REQUIRE_EQ(io::rat_from_json(json("-3/4")), Rat(Int(-3), Int(4)), "signed fraction parses");
    REQUIRE_EQ(io::rat_from_json(json(7)), Rat(7), "plain number parses");
    REQUIRE_THROWS(io::rat_from_json(json("abc")), "garbage rejected");
    REQUIRE_THROWS(io::rat_from_json(json("1/0")), "zero denominator rejected");
    REQUIRE_THROWS(io::int_from_json(json(1.5)), "non-integer number rejected");
}

void test_parse() {
    REQUIRE_THROWS(io::parse("{nope"), "malformed JSON rejected");
    json j = io::parse("{\"points\": []}");
    REQUIRE(j.contains("points"), "parse returns the document");
}

void test_triangulation_roundtrip() {
    auto t = split_square();
    auto j = io::to_json(t);
    auto back = io::triangulation_from_json(io::parse(j.dump()));
    REQUIRE(back.points == t.points, "points survive");
    REQUIRE(back.triangles == t.triangles, "triangles survive");
    REQUIRE(back.polytope.vertices == t.polytope.vertices, "explicit hull survives");

    json no_hull = j;
    no_hull.erase("hull");
    auto inferred = io::triangulation_from_json(no_hull);
    REQUIRE(inferred.polytope.vertices == t.polytope.vertices, "hull inferred when absent");

    REQUIRE_THROWS(io::triangulation_from_json(io::parse("{\"triangles\": []}")),
                   "missing points rejected");
    REQUIRE_THROWS(io::triangulation_from_json(io::parse("{\"points\": [], \"triangles\": [[0,1]]}")),
                   "short triangle rejected");
}

void test_tropical_roundtrip() {
    auto g = w_graph();
    auto back = io::tropical_from_json(io::parse(io::to_json(g).dump()));
    REQUIRE(back == g, "integer graph round trips");

    auto dual = lattice::dual_tropical_graph(skew_fan());
    auto dual_back = io::tropical_from_json(io::parse(io::to_json(dual).dump()));
    REQUIRE(dual_back == dual, "rational positions round trip");

    REQUIRE_THROWS(io::tropical_from_json(io::parse("{\"vertices\": [{}]}")),
                   "vertex without position rejected");
}

void test_ribbon_roundtrip() {
    auto x = ribbon::theta();
    auto fs = ribbon::faces(x);
    x.face_labels["a"] = {fs[0].walk.front(), -1};
    x.face_labels["b"] = {fs[1].walk.front(), -1};
    auto back = io::ribbon_from_json(io::parse(io::to_json(x).dump()));
    REQUIRE(back.sigma == x.sigma, "sigma survives");
    REQUIRE(back.vertex_of == x.vertex_of, "vertex_of survives");
    REQUIRE(back.cyclic_order == x.cyclic_order, "cyclic order survives");
    REQUIRE(back.face_labels == x.face_labels, "labels survive");

    json no_labels = io::to_json(ribbon::theta());
    no_labels.erase("face_labels");
    auto plain = io::ribbon_from_json(no_labels);
    REQUIRE(plain.face_labels.empty(), "labels are optional");
}

void test_quiver_rep_roundtrip() {
    quiver::Quiver q;
    q.vertex_count = 2;
    q.arrows = {{0, 1}, {0, 1}};
    quiver::QuiverRep rep;
    rep.dims = {2, 1};
    rep.matrices = {{{Rat(1), Rat(0)}}, {{Rat(Int(1), Int(2)), Rat(-3)}}};
    auto j = io::rep_to_json(q, rep);
    auto [q2, rep2] = io::rep_from_json(io::parse(j.dump()));
    REQUIRE(q2.vertex_count == q.vertex_count && q2.arrows == q.arrows, "quiver survives");
    REQUIRE(rep2.dims == rep.dims, "dims survive");
    REQUIRE(rep2.matrices == rep.matrices, "matrices survive");

    auto q3 = io::quiver_from_json(io::parse(io::to_json(q).dump()));
    REQUIRE(q3.arrows == q.arrows, "bare quiver round trips");
}

void test_diagram_roundtrip() {
    auto t = make_triangulation({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}});
    auto d = charts::build_cech_diagram(t);
    auto back = io::diagram_from_json(io::parse(io::to_json(d).dump()));
    REQUIRE(back == d, "chart diagram round trips");
}

void test_detect() {
    REQUIRE(io::detect_kind(io::to_json(split_square())) == io::FileKind::triangulation,
            "triangulation detected");
    REQUIRE(io::detect_kind(io::to_json(w_graph())) == io::FileKind::tropical,
            "tropical graph detected");
    REQUIRE(io::detect_kind(io::to_json(ribbon::theta())) == io::FileKind::ribbon,
            "ribbon graph detected");
    REQUIRE_THROWS(io::detect_kind(io::parse("{\"foo\": 1}")), "unknown input rejected");
    REQUIRE_THROWS(io::detect_kind(io::parse("[1,2]")), "non-object rejected");
}

void test_reports() {
    ValidationReport r;
    r.fail("broken");
    r.note("hint");
    auto j = io::to_json(r);
    REQUIRE(!j["ok"].get<bool>() && j["errors"].size() == 1 && j["notes"].size() == 1,
            "validation report fields");

    auto inv = io::to_json(ribbon::SurfaceInvariants{2, 5});
    REQUIRE(inv["genus"] == 2 && inv["punctures"] == 5, "invariants fields");

    auto g = w_graph();
    auto sweep = io::to_json(tropical::sweep_decompose(g, {0, 1}));
    REQUIRE_EQ(sweep["steps"].size(), std::size_t(3), "sweep steps serialized");
    REQUIRE(sweep["steps"][0].contains("case") && sweep["steps"][0].contains("height"),
            "step fields present");

    auto res = skeleton::synthesize(g);
    auto cert = io::to_json(res.certificate);
    REQUIRE(cert["ok"].get<bool>(), "certificate serialized");
    REQUIRE(cert["steps"][0]["cover"].is_null(), "base case cover is null");
    REQUIRE(cert["steps"][2]["cover"]["ok"].get<bool>(), "gluing cover serialized");
    auto again = io::to_json(skeleton::synthesize(g).certificate);
    REQUIRE_EQ(cert.dump(2), again.dump(2), "reports are byte identical across runs");
}

void test_dot() {
    auto g = w_graph();
    auto dot = viz::tropical_dot(g);
    REQUIRE(dot.find("graph tropical {") == 0, "tropical DOT header");
    REQUIRE(dot.find("v0 -- v2") != std::string::npos, "finite edge listed");
    REQUIRE_EQ(count_of(dot, "style=dashed"), 5, "one dashed ray edge per ray");
    REQUIRE(dot.find("(1,1)") != std::string::npos, "momentum label present");

    auto rdot = viz::ribbon_dot(ribbon::theta());
    REQUIRE_EQ(count_of(rdot, "v0 -- v1"), 3, "three parallel theta edges");
    REQUIRE_EQ(count_of(rdot, "// face"), 3, "face annotations present");
    REQUIRE_EQ(count_of(rdot, "(cycle)"), 3, "every theta face is a cycle");

    auto w = ribbon::wheel(1, 1, "+-");
    auto qdot = viz::quiver_dot(quiver::wheel_to_quiver(w));
    REQUIRE(qdot.find("digraph quiver {") == 0, "quiver DOT header");
    REQUIRE_EQ(count_of(qdot, "q1 -> q0"), 2, "both Kronecker arrows");

    auto d = charts::build_cech_diagram(make_triangulation({{0, 0}, {1, 0}, {0, 1}}, {{0, 1, 2}}));
    auto ddot = viz::diagram_dot(d);
    REQUIRE_EQ(count_of(ddot, "-> o"), 3, "three restriction arrows");
    REQUIRE(ddot.find("t0*t1*t2") != std::string::npos, "function label in the node");
}

void test_svg() {
    auto g = w_graph();
    auto svg = viz::tropical_svg(g);
    REQUIRE(svg.find("<svg") == 0 && svg.rfind("</svg>\n") == svg.size() - 7, "svg wrapping");
    REQUIRE_EQ(count_of(svg, "<line"), 7, "two segments plus five clipped rays");
    REQUIRE_EQ(count_of(svg, "stroke-dasharray"), 5, "rays dashed");
    REQUIRE(svg.find("inf") == std::string::npos && svg.find("nan") == std::string::npos,
            "ray clipping produced finite coordinates");

    auto rsvg = viz::ribbon_svg(ribbon::theta());
    REQUIRE(rsvg.find("<svg") == 0, "ribbon svg wrapping");
    REQUIRE_EQ(count_of(rsvg, "<path"), 3, "parallel edges drawn as bowed paths");
}

}  // namespace

int main() {
    test_atoms();
    test_parse();
    test_triangulation_roundtrip();
    test_tropical_roundtrip();
    test_ribbon_roundtrip();
    test_quiver_rep_roundtrip();
    test_diagram_roundtrip();
    test_detect();
    test_reports();
    test_dot();
    test_svg();
    std::cout << "test_io: all checks passed\n";
    return 0;
}
