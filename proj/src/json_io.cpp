#include "tropmir/json_io.hpp"

#include <limits>

namespace tropmir::io {

namespace {

void check(bool cond, const std::string& msg) {
    if (!cond) throw ParseError(msg);
}

const json& field(const json& j, const char* name) {
    check(j.is_object(), "expected an object with a '" + std::string(name) + "' field");
    auto it = j.find(name);
    check(it != j.end(), "missing field '" + std::string(name) + "'");
    return *it;
}

int small_int(const json& j, const char* what) {
    check(j.is_number_integer(), std::string(what) + " must be an integer");
    return j.get<int>();
}

Int parse_integer_text(const std::string& s) {
    check(!s.empty(), "empty number string");
    std::size_t start = s[0] == '-' ? 1 : 0;
    check(start < s.size(), "malformed number '" + s + "'");
    for (std::size_t i = start; i < s.size(); ++i)
        check(s[i] >= '0' && s[i] <= '9', "malformed number '" + s + "'");
    return Int(s);
}

json ivec_to_json(const IVec2& v) { return json::array({int_to_json(v.x), int_to_json(v.y)}); }

IVec2 ivec_from_json(const json& j, const char* what) {
    check(j.is_array() && j.size() == 2, std::string(what) + " must be a pair");
    return {int_from_json(j[0]), int_from_json(j[1])};
}

json qvec_to_json(const QVec2& v) { return json::array({rat_to_json(v.x), rat_to_json(v.y)}); }

QVec2 qvec_from_json(const json& j, const char* what) {
    check(j.is_array() && j.size() == 2, std::string(what) + " must be a pair");
    return {rat_from_json(j[0]), rat_from_json(j[1])};
}

std::vector<int> int_list(const json& j, const char* what) {
    check(j.is_array(), std::string(what) + " must be an array");
    std::vector<int> out;
    for (const auto& e : j) out.push_back(small_int(e, what));
    return out;
}

}  // namespace

json parse(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    check(!j.is_discarded(), "input is not valid JSON");
    return j;
}

json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<std::int64_t>::min();
    static const Int hi = std::numeric_limits<std::int64_t>::max();
    if (v >= lo && v <= hi) return v.convert_to<std::int64_t>();
    return v.str();
}

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) return parse_integer_text(j.get<std::string>());
    throw ParseError("expected an integer or a number string");
}

json rat_to_json(const Rat& v) {
    Int den = denominator(v);
    if (den == 1) return int_to_json(numerator(v));
    return numerator(v).str() + "/" + den.str();
}

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(parse_integer_text(s));
        Int num = parse_integer_text(s.substr(0, slash));
        Int den = parse_integer_text(s.substr(slash + 1));
        check(den != 0, "zero denominator in '" + s + "'");
        return Rat(num, den);
    }
    throw ParseError("expected a rational as integer or 'p/q' string");
}

json to_json(const lattice::Triangulation& t) {
    json j;
    j["points"] = json::array();
    for (const auto& p : t.points) j["points"].push_back(ivec_to_json(p));
    j["triangles"] = json::array();
    for (const auto& tri : t.triangles) j["triangles"].push_back({tri[0], tri[1], tri[2]});
    j["hull"] = json::array();
    for (const auto& p : t.polytope.vertices) j["hull"].push_back(ivec_to_json(p));
    return j;
}

lattice::Triangulation triangulation_from_json(const json& j) {
    lattice::Triangulation t;
    for (const auto& p : field(j, "points")) t.points.push_back(ivec_from_json(p, "point"));
    for (const auto& tri : field(j, "triangles")) {
        check(tri.is_array() && tri.size() == 3, "a triangle must list three point ids");
        t.triangles.push_back(
            {small_int(tri[0], "point id"), small_int(tri[1], "point id"),
             small_int(tri[2], "point id")});
    }
    if (j.contains("hull"))
        for (const auto& p : j["hull"]) t.polytope.vertices.push_back(ivec_from_json(p, "hull"));
    else
        t.polytope = lattice::convex_hull_polytope(t.points);
    return t;
}

json to_json(const tropical::TropicalGraph& g) {
    json j;
    j["vertices"] = json::array();
    for (const auto& v : g.vertices) j["vertices"].push_back({{"pos", qvec_to_json(v.pos)}});
    j["finite_edges"] = json::array();
    for (const auto& e : g.finite_edges)
        j["finite_edges"].push_back(
            {{"v", json::array({e.a, e.b})}, {"p", ivec_to_json(e.momentum)}});
    j["infinite_edges"] = json::array();
    for (const auto& e : g.infinite_edges)
        j["infinite_edges"].push_back({{"v", e.v}, {"p", ivec_to_json(e.momentum)}});
    return j;
}

tropical::TropicalGraph tropical_from_json(const json& j) {
    tropical::TropicalGraph g;
    for (const auto& v : field(j, "vertices"))
        g.vertices.push_back({qvec_from_json(field(v, "pos"), "pos")});
    for (const auto& e : field(j, "finite_edges")) {
        const json& ends = field(e, "v");
        check(ends.is_array() && ends.size() == 2, "a finite edge needs two endpoints");
        g.finite_edges.push_back({small_int(ends[0], "endpoint"), small_int(ends[1], "endpoint"),
                                  ivec_from_json(field(e, "p"), "momentum")});
    }
    for (const auto& e : field(j, "infinite_edges"))
        g.infinite_edges.push_back(
            {small_int(field(e, "v"), "endpoint"), ivec_from_json(field(e, "p"), "momentum")});
    return g;
}

json to_json(const ribbon::RibbonGraph& x) {
    json j;
    j["sigma"] = x.sigma;
    j["vertex_of"] = x.vertex_of;
    j["cyclic_order"] = json::array();
    for (const auto& word : x.cyclic_order) j["cyclic_order"].push_back(word);
    j["face_labels"] = json::object();
    for (const auto& [name, anc] : x.face_labels) {
        if (anc.dart != ribbon::kNoDart)
            j["face_labels"][name] = {{"dart", anc.dart}};
        else
            j["face_labels"][name] = {{"vertex", anc.isolated_vertex}};
    }
    return j;
}

ribbon::RibbonGraph ribbon_from_json(const json& j) {
    ribbon::RibbonGraph x;
    x.sigma = int_list(field(j, "sigma"), "sigma");
    x.vertex_of = int_list(field(j, "vertex_of"), "vertex_of");
    const json& words = field(j, "cyclic_order");
    check(words.is_array(), "cyclic_order must be an array");
    for (const auto& word : words) x.cyclic_order.push_back(int_list(word, "cyclic_order"));
    if (j.contains("face_labels")) {
        const json& labels = j["face_labels"];
        check(labels.is_object(), "face_labels must be an object");
        for (const auto& [name, anc] : labels.items()) {
            ribbon::FaceAnchor a;
            if (anc.contains("dart"))
                a.dart = small_int(anc["dart"], "label dart");
            else
                a.isolated_vertex = small_int(field(anc, "vertex"), "label vertex");
            x.face_labels[name] = a;
        }
    }
    return x;
}

json to_json(const quiver::Quiver& q) {
    json j;
    j["vertex_count"] = q.vertex_count;
    j["arrows"] = json::array();
    for (const auto& [s, t] : q.arrows) j["arrows"].push_back({s, t});
    return j;
}

quiver::Quiver quiver_from_json(const json& j) {
    quiver::Quiver q;
    q.vertex_count = small_int(field(j, "vertex_count"), "vertex_count");
    for (const auto& a : field(j, "arrows")) {
        check(a.is_array() && a.size() == 2, "an arrow needs a source and a target");
        q.arrows.emplace_back(small_int(a[0], "arrow end"), small_int(a[1], "arrow end"));
    }
    return q;
}

json rep_to_json(const quiver::Quiver& q, const quiver::QuiverRep& rep) {
    json j;
    j["quiver"] = to_json(q);
    j["dims"] = rep.dims;
    j["matrices"] = json::array();
    for (const auto& mat : rep.matrices) {
        json rows = json::array();
        for (const auto& row : mat) {
            json cells = json::array();
            for (const auto& x : row) cells.push_back(rat_to_json(x));
            rows.push_back(std::move(cells));
        }
        j["matrices"].push_back(std::move(rows));
    }
    return j;
}

std::pair<quiver::Quiver, quiver::QuiverRep> rep_from_json(const json& j) {
    quiver::Quiver q = quiver_from_json(field(j, "quiver"));
    quiver::QuiverRep rep;
    rep.dims = int_list(field(j, "dims"), "dims");
    const json& mats = field(j, "matrices");
    check(mats.is_array(), "matrices must be an array");
    for (const auto& mat : mats) {
        check(mat.is_array(), "a matrix must be an array of rows");
        std::vector<std::vector<Rat>> rows;
        for (const auto& row : mat) {
            check(row.is_array(), "a matrix row must be an array");
            std::vector<Rat> cells;
            for (const auto& x : row) cells.push_back(rat_from_json(x));
            rows.push_back(std::move(cells));
        }
        rep.matrices.push_back(std::move(rows));
    }
    return {std::move(q), std::move(rep)};
}

json to_json(const charts::ChartDiagram& d) {
    json j;
    j["objects"] = json::array();
    for (const auto& o : d.objects)
        j["objects"].push_back({{"kind", o.kind == charts::ObjectKind::Vertex ? "vertex" : "edge"},
                                {"source_id", o.source_id},
                                {"ids", o.ids},
                                {"chart_type", o.chart_type},
                                {"function_label", o.function_label}});
    j["arrows"] = json::array();
    for (const auto& a : d.arrows)
        j["arrows"].push_back({{"from", a.from},
                               {"to", a.to},
                               {"inverted", a.inverted},
                               {"mapping_label", a.mapping_label}});
    return j;
}

charts::ChartDiagram diagram_from_json(const json& j) {
    charts::ChartDiagram d;
    for (const auto& o : field(j, "objects")) {
        charts::ChartObject obj;
        const std::string kind = field(o, "kind").get<std::string>();
        check(kind == "vertex" || kind == "edge", "object kind must be vertex or edge");
        obj.kind = kind == "vertex" ? charts::ObjectKind::Vertex : charts::ObjectKind::Edge;
        obj.source_id = small_int(field(o, "source_id"), "source_id");
        obj.ids = int_list(field(o, "ids"), "ids");
        obj.chart_type = field(o, "chart_type").get<std::string>();
        obj.function_label = field(o, "function_label").get<std::string>();
        d.objects.push_back(std::move(obj));
    }
    for (const auto& a : field(j, "arrows")) {
        charts::RestrictionArrow arrow;
        arrow.from = small_int(field(a, "from"), "from");
        arrow.to = small_int(field(a, "to"), "to");
        arrow.inverted = small_int(field(a, "inverted"), "inverted");
        arrow.mapping_label = field(a, "mapping_label").get<std::string>();
        d.arrows.push_back(std::move(arrow));
    }
    return d;
}

json to_json(const ValidationReport& r) {
    return {{"ok", r.ok}, {"errors", r.errors}, {"notes", r.notes}};
}

json to_json(const ribbon::SurfaceInvariants& inv) {
    return {{"genus", inv.genus}, {"punctures", inv.punctures}};
}

json to_json(const tropical::SweepDecomposition& sweep) {
    json j;
    j["direction"] = ivec_to_json(sweep.direction);
    j["steps"] = json::array();
    for (const auto& st : sweep.steps) {
        json s;
        s["vertex"] = st.vertex;
        s["height"] = rat_to_json(st.height);
        s["position"] = qvec_to_json(st.position);
        s["case"] = tropical::to_string(st.vertex_case);
        s["glued"] = json::array();
        for (const auto& e : st.glue_edges)
            s["glued"].push_back({{"id", e.id},
                                  {"v", json::array({e.edge.a, e.edge.b})},
                                  {"p", ivec_to_json(e.edge.momentum)}});
        s["new_rays"] = json::array();
        for (const auto& r : st.new_rays)
            s["new_rays"].push_back(
                {{"id", r.id}, {"v", r.edge.v}, {"p", ivec_to_json(r.edge.momentum)}});
        s["opened"] = st.new_open_edges;
        j["steps"].push_back(std::move(s));
    }
    return j;
}

json to_json(const ribbon::MoveLog& log) {
    return {{"moves", log.moves.size()},
            {"resynthesized", log.resynthesized},
            {"note", log.note}};
}

json to_json(const ribbon::GluingCertificate& cert) {
    json wheels = json::array();
    for (const auto& w : cert.u12_wheels)
        wheels.push_back({{"n1", w.n1}, {"n2", w.n2}, {"pattern", w.pattern}});
    auto piece = [](const ribbon::PieceSummary& p) {
        return json{{"vertices", p.vertices}, {"edges", p.edges}, {"components", p.components}};
    };
    return {{"ok", cert.ok},
            {"failure", cert.failure},
            {"u1", piece(cert.u1)},
            {"u2", piece(cert.u2)},
            {"wheels", wheels},
            {"spoke_sides_match", cert.spoke_sides_match}};
}

json to_json(const skeleton::SynthCertificate& cert) {
    json steps = json::array();
    for (const auto& st : cert.steps) {
        json s;
        s["vertex"] = st.vertex;
        s["pants"] = st.pants;
        s["glued"] = st.glued;
        s["opened"] = st.opened;
        s["offsets"] = st.offsets;
        s["merged_pieces"] = st.merged_pieces;
        s["preparations"] = json::array();
        for (const auto& log : st.preparations) s["preparations"].push_back(to_json(log));
        s["cover"] = st.cover ? to_json(*st.cover) : json(nullptr);
        s["open_after"] = st.open_after;
        steps.push_back(std::move(s));
    }
    return {{"ok", cert.ok},
            {"failure", cert.failure},
            {"seed", cert.seed},
            {"direction", ivec_to_json(cert.direction)},
            {"surface", to_json(cert.surface)},
            {"mirror", to_json(cert.mirror)},
            {"invariants_match", cert.invariants_match},
            {"labels_match", cert.labels_match},
            {"steps", std::move(steps)}};
}

json to_json(const charts::DiagramMatch& m) {
    json ids = json::array();
    for (const auto& [from, to] : m.id_map) ids.push_back({from, to});
    return {{"ok", m.ok},
            {"object_map", m.object_map},
            {"id_map", std::move(ids)},
            {"failure", m.failure}};
}

FileKind detect_kind(const json& j) {
    check(j.is_object(), "input must be a JSON object");
    if (j.contains("points")) return FileKind::triangulation;
    if (j.contains("sigma")) return FileKind::ribbon;
    if (j.contains("vertices")) return FileKind::tropical;
    throw ParseError("unrecognized input: expected a triangulation, tropical graph, or ribbon graph");
}

json pipeline_report(const lattice::Triangulation& t, const PipelineOptions& opts) {
    json out;
    out["seed"] = opts.seed;
    out["direction"] = ivec_to_json(opts.direction);
    json stages = json::array();
    bool all_ok = true;
    auto record = [&](const std::string& name, bool ok, const std::string& detail) {
        stages.push_back({{"name", name}, {"ok", ok}, {"detail", detail}});
        if (!ok) all_ok = false;
        return ok;
    };
    auto report_detail = [](const ValidationReport& r) {
        std::string detail;
        for (const auto& e : r.errors) detail += (detail.empty() ? "" : "; ") + e;
        return detail;
    };
    auto invariant_text = [](const ribbon::SurfaceInvariants& inv) {
        return "(g, n) = (" + std::to_string(inv.genus) + ", " +
               std::to_string(inv.punctures) + ")";
    };
    auto finish = [&]() {
        out["stages"] = std::move(stages);
        out["ok"] = all_ok;
        return out;
    };

    auto valid = lattice::validate_triangulation(t);
    if (!record("validate", valid.ok, report_detail(valid))) return finish();

    auto g = lattice::dual_tropical_graph(t);
    auto dual_valid = tropical::validate_tropical(g);
    if (!record("dual", dual_valid.ok, report_detail(dual_valid))) return finish();

    auto mirror = tropical::mirror_invariants(g);
    out["mirror"] = to_json(mirror);
    record("mirror-invariants", true, invariant_text(mirror));

    skeleton::SynthOptions synth;
    synth.seed = opts.seed;
    synth.direction = opts.direction;
    synth.budget = opts.budget;
    auto res = skeleton::synthesize(g, synth);
    if (!record("synthesize", res.certificate.ok, res.certificate.failure)) return finish();

    auto surface = ribbon::surface_invariants(res.graph);
    out["surface"] = to_json(surface);
    if (!record("surface-invariants", surface == mirror,
                invariant_text(surface) + " vs mirror " + invariant_text(mirror)))
        return finish();

    auto b = charts::build_B_diagram(g);
    auto cech = charts::build_cech_diagram(t);
    record("diagrams", true, std::to_string(b.objects.size()) + " objects each side");

    auto match = charts::diagram_isomorphic(b, cech);
    out["diagram_match"] = to_json(match);
    record("diagram-isomorphic", match.ok, match.failure);
    return finish();
}

}  // namespace tropmir::io
