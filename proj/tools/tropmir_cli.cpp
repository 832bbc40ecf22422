#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"

#include "tropmir/charts.hpp"
#include "tropmir/json_io.hpp"
#include "tropmir/lattice.hpp"
#include "tropmir/quiver.hpp"
#include "tropmir/ribbon.hpp"
#include "tropmir/skeleton.hpp"
#include "tropmir/tropical.hpp"
#include "tropmir/viz.hpp"

namespace {

using namespace tropmir;
using io::json;

struct RunConfig {
    std::uint64_t seed = 0;
    IVec2 direction{0, 1};
    std::string format = "text";
    int budget = 256;
    int verbosity = 0;
};

json read_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io::ParseError("cannot open input file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return io::parse(buf.str());
}

IVec2 parse_direction(const std::string& text) {
    std::istringstream iss(text);
    long long x = 0, y = 0;
    char comma = 0;
    if (!(iss >> x >> comma >> y) || comma != ',' || !(iss >> std::ws).eof())
        throw io::ParseError("direction must be two integers \"x,y\", got \"" + text + "\"");
    if (x == 0 && y == 0) throw io::ParseError("direction must be nonzero");
    return {Int(x), Int(y)};
}

skeleton::SynthOptions synth_options(const RunConfig& cfg) {
    skeleton::SynthOptions opts;
    opts.seed = cfg.seed;
    opts.direction = cfg.direction;
    opts.budget = cfg.budget;
    return opts;
}

// Any input kind resolves to a tropical graph: a triangulation goes through
// its dual, a tropical file is taken as is.
tropical::TropicalGraph load_tropical(const json& j, const RunConfig& cfg) {
    switch (io::detect_kind(j)) {
        case io::FileKind::triangulation: {
            auto t = io::triangulation_from_json(j);
            auto report = lattice::validate_triangulation(t);
            if (!report.ok) {
                for (const auto& e : report.errors) std::cerr << "error: " << e << "\n";
                throw std::runtime_error("invalid triangulation");
            }
            if (cfg.verbosity > 0) std::cerr << "took the dual tropical graph\n";
            return lattice::dual_tropical_graph(t);
        }
        case io::FileKind::tropical:
            return io::tropical_from_json(j);
        default:
            throw io::ParseError("expected a triangulation or tropical graph file");
    }
}

void print_report_text(const ValidationReport& report, const std::string& what) {
    for (const auto& e : report.errors) std::cout << "error: " << e << "\n";
    for (const auto& n : report.notes) std::cout << "note: " << n << "\n";
    std::cout << (report.ok ? "valid " : "invalid ") << what << "\n";
}

int cmd_validate(const std::string& path, const RunConfig& cfg) {
    json j = read_input(path);
    ValidationReport report;
    std::string what;
    switch (io::detect_kind(j)) {
        case io::FileKind::triangulation:
            report = lattice::validate_triangulation(io::triangulation_from_json(j));
            what = "triangulation";
            break;
        case io::FileKind::tropical:
            report = tropical::validate_tropical(io::tropical_from_json(j));
            what = "tropical graph";
            break;
        default:
            report = ribbon::validate_ribbon(io::ribbon_from_json(j));
            what = "ribbon graph";
            break;
    }
    if (cfg.format == "json")
        std::cout << io::to_json(report).dump(2) << "\n";
    else
        print_report_text(report, what);
    return report.ok ? 0 : 1;
}

int cmd_dual(const std::string& path, const RunConfig& cfg) {
    json j = read_input(path);
    if (io::detect_kind(j) != io::FileKind::triangulation)
        throw io::ParseError("dual expects a triangulation file");
    auto g = load_tropical(j, cfg);
    if (cfg.format == "json")
        std::cout << io::to_json(g).dump(2) << "\n";
    else if (cfg.format == "dot")
        std::cout << viz::tropical_dot(g);
    else if (cfg.format == "svg")
        std::cout << viz::tropical_svg(g);
    else
        std::cout << "dual tropical graph: " << g.vertices.size() << " vertices, "
                  << g.finite_edges.size() << " finite edges, " << g.infinite_edges.size()
                  << " rays\n";
    return 0;
}

int cmd_invariants(const std::string& path, const RunConfig& cfg) {
    json j = read_input(path);
    ribbon::SurfaceInvariants inv;
    if (io::detect_kind(j) == io::FileKind::ribbon) {
        auto x = io::ribbon_from_json(j);
        auto report = ribbon::validate_ribbon(x);
        if (!report.ok) {
            for (const auto& e : report.errors) std::cerr << "error: " << e << "\n";
            return 1;
        }
        inv = ribbon::surface_invariants(x);
    } else {
        inv = tropical::mirror_invariants(load_tropical(j, cfg));
    }
    if (cfg.format == "json")
        std::cout << io::to_json(inv).dump(2) << "\n";
    else
        std::cout << "(g, n) = (" << inv.genus << ", " << inv.punctures << ")\n";
    return 0;
}

int cmd_sweep(const std::string& path, const RunConfig& cfg, bool diagnostics) {
    auto g = load_tropical(read_input(path), cfg);
    auto sweep = tropical::sweep_decompose(g, cfg.direction);
    std::vector<tropical::RaySurvival> survival;
    bool survival_ok = true;
    if (diagnostics) {
        survival = tropical::ray_survival_diagnostic(g);
        for (const auto& r : survival) survival_ok = survival_ok && r.survives;
    }
    if (cfg.format == "json") {
        if (!diagnostics) {
            std::cout << io::to_json(sweep).dump(2) << "\n";
            return 0;
        }
        json out;
        out["sweep"] = io::to_json(sweep);
        out["diagnostics"] = json::array();
        for (const auto& r : survival)
            out["diagnostics"].push_back({{"ray", r.ray_id},
                                          {"vertex", r.vertex},
                                          {"vacuous", r.vacuous},
                                          {"survives", r.survives}});
        std::cout << out.dump(2) << "\n";
        return survival_ok ? 0 : 1;
    }
    std::cout << "sweep direction " << to_string(sweep.direction) << ", " << sweep.steps.size()
              << " steps\n";
    for (std::size_t i = 0; i < sweep.steps.size(); ++i) {
        const auto& s = sweep.steps[i];
        std::cout << "step " << i << ": vertex " << s.vertex << ", " << to_string(s.vertex_case)
                  << ", glues [";
        for (std::size_t k = 0; k < s.glue_edges.size(); ++k)
            std::cout << (k ? " " : "") << s.glue_edges[k].id;
        std::cout << "], opens [";
        for (std::size_t k = 0; k < s.new_open_edges.size(); ++k)
            std::cout << (k ? " " : "") << s.new_open_edges[k];
        std::cout << "]\n";
    }
    for (const auto& r : survival)
        std::cout << "ray " << r.ray_id << " at vertex " << r.vertex << ": "
                  << (r.vacuous ? "whole component, nothing to check"
                      : r.survives ? "survivor ray present"
                                   : "no survivor ray")
                  << "\n";
    return survival_ok ? 0 : 1;
}

int cmd_synthesize(const std::string& path, const RunConfig& cfg) {
    auto g = load_tropical(read_input(path), cfg);
    auto res = skeleton::synthesize(g, synth_options(cfg));
    const auto& cert = res.certificate;
    if (cfg.format == "json") {
        json out;
        out["graph"] = io::to_json(res.graph);
        out["certificate"] = io::to_json(cert);
        std::cout << out.dump(2) << "\n";
    } else if (cfg.format == "dot") {
        std::cout << viz::ribbon_dot(res.graph);
    } else if (cfg.format == "svg") {
        std::cout << viz::ribbon_svg(res.graph);
    } else {
        std::cout << "skeleton: " << res.graph.vertex_count() << " vertices, "
                  << res.graph.edge_count() << " edges, " << cert.steps.size() << " steps\n";
        std::cout << "surface (g, n) = (" << cert.surface.genus << ", " << cert.surface.punctures
                  << "), mirror (g, n) = (" << cert.mirror.genus << ", " << cert.mirror.punctures
                  << ")\n";
        std::cout << "certificate: " << (cert.ok ? "ok" : "failed: " + cert.failure) << "\n";
    }
    return cert.ok ? 0 : 1;
}

int cmd_quiver(const std::string& pattern, const RunConfig& cfg) {
    int n1 = 0, n2 = 0;
    for (char c : pattern) {
        if (c == '+')
            ++n1;
        else if (c == '-')
            ++n2;
        else
            throw io::ParseError("wheel pattern must use only '+' and '-'");
    }
    if (pattern.empty()) throw io::ParseError("wheel pattern must be nonempty");
    auto q = quiver::wheel_to_quiver(ribbon::wheel(n1, n2, pattern));
    if (cfg.format == "dot")
        std::cout << viz::quiver_dot(q);
    else if (cfg.format == "json")
        std::cout << io::to_json(q).dump(2) << "\n";
    else
        std::cout << "quiver of wheel (" << n1 << "," << n2 << "): " << q.vertex_count
                  << " vertices, " << q.arrows.size() << " arrows, K0 rank "
                  << quiver::k0_rank(q) << "\n";
    return 0;
}

int cmd_hom(const std::string& path_m, const std::string& path_n, const RunConfig& cfg) {
    auto [qm, m] = io::rep_from_json(read_input(path_m));
    auto [qn, n] = io::rep_from_json(read_input(path_n));
    if (!(qm == qn)) throw std::runtime_error("representation files use different quivers");
    auto h = quiver::hom_complex(qm, m, n);
    long long euler = quiver::euler_form(qm, m.dims, n.dims);
    if (cfg.format == "json") {
        json out;
        out["c0"] = h.c0;
        out["c1"] = h.c1;
        out["h0"] = h.h0;
        out["h1"] = h.h1;
        out["euler"] = euler;
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "(C0, C1, H0, H1) = (" << h.c0 << ", " << h.c1 << ", " << h.h0 << ", "
                  << h.h1 << ")\n";
        std::cout << "euler form = " << euler << "\n";
    }
    return 0;
}

int cmd_diagram(const std::string& path, const RunConfig& cfg) {
    json j = read_input(path);
    if (io::detect_kind(j) == io::FileKind::tropical) {
        auto b = charts::build_B_diagram(io::tropical_from_json(j));
        if (cfg.format == "dot")
            std::cout << viz::diagram_dot(b);
        else
            std::cout << io::to_json(b).dump(2) << "\n";
        return 0;
    }
    if (io::detect_kind(j) != io::FileKind::triangulation)
        throw io::ParseError("diagram expects a triangulation or tropical graph file");
    auto t = io::triangulation_from_json(j);
    auto report = lattice::validate_triangulation(t);
    if (!report.ok) {
        for (const auto& e : report.errors) std::cerr << "error: " << e << "\n";
        return 1;
    }
    auto b = charts::build_B_diagram(lattice::dual_tropical_graph(t));
    auto cech = charts::build_cech_diagram(t);
    auto match = charts::diagram_isomorphic(b, cech);
    if (cfg.format == "dot") {
        std::cout << viz::diagram_dot(b);
    } else if (cfg.format == "json") {
        json out;
        out["b_diagram"] = io::to_json(b);
        out["cech_diagram"] = io::to_json(cech);
        out["match"] = io::to_json(match);
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "B diagram: " << b.objects.size() << " objects, " << b.arrows.size()
                  << " arrows\n";
        std::cout << "Cech diagram: " << cech.objects.size() << " objects, "
                  << cech.arrows.size() << " arrows\n";
        std::cout << "match: " << (match.ok ? "isomorphic" : "failed: " + match.failure) << "\n";
    }
    return match.ok ? 0 : 1;
}

// Full pipeline on a triangulation, one verdict per stage; later stages are
// skipped after the first failure.
int cmd_check(const std::string& path, const RunConfig& cfg) {
    json j = read_input(path);
    if (io::detect_kind(j) != io::FileKind::triangulation)
        throw io::ParseError("check expects a triangulation file");
    auto t = io::triangulation_from_json(j);

    io::PipelineOptions opts;
    opts.seed = cfg.seed;
    opts.direction = cfg.direction;
    opts.budget = cfg.budget;
    json report = io::pipeline_report(t, opts);
    bool ok = report["ok"].get<bool>();
    if (cfg.format == "json") {
        report["input"] = path;
        std::cout << report.dump(2) << "\n";
    } else {
        for (const auto& stage : report["stages"]) {
            std::string detail = stage["detail"].get<std::string>();
            std::cout << stage["name"].get<std::string>() << ": "
                      << (stage["ok"].get<bool>() ? "pass" : "fail")
                      << (detail.empty() ? "" : " (" + detail + ")") << "\n";
        }
        std::cout << (ok ? "check passed" : "check failed") << "\n";
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"combinatorial mirror symmetry workbench"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string direction_text = "0,1";
    app.add_option("--seed", cfg.seed, "seed for randomized move search");
    app.add_option("--direction", direction_text, "sweep direction as \"x,y\"");
    app.add_option("--format", cfg.format, "output format")
        ->check(CLI::IsMember({"dot", "svg", "json", "text"}));
    app.add_option("--budget", cfg.budget, "move search budget per cycle preparation");
    app.add_flag("-v,--verbose", cfg.verbosity, "more diagnostics on stderr");

    std::string file, file2, pattern;
    auto* validate = app.add_subcommand("validate", "check a file against its format rules");
    validate->add_option("file", file, "input file")->required();
    auto* dual = app.add_subcommand("dual", "dual tropical graph of a triangulation");
    dual->add_option("file", file, "triangulation file")->required();
    auto* invariants = app.add_subcommand("invariants", "genus and puncture count");
    invariants->add_option("file", file, "input file")->required();
    auto* sweep = app.add_subcommand("sweep", "sweep decomposition of a tropical graph");
    sweep->add_option("file", file, "triangulation or tropical graph file")->required();
    bool sweep_diagnostics = false;
    sweep->add_flag("--diagnostics", sweep_diagnostics,
                    "also check that deleting any ray's vertex leaves a ray elsewhere");
    auto* synthesize = app.add_subcommand("synthesize", "build a skeleton with certificate");
    synthesize->add_option("file", file, "triangulation or tropical graph file")->required();
    auto* quiver_cmd = app.add_subcommand("quiver", "quiver of a wheel pattern");
    quiver_cmd->add_option("pattern", pattern, "cyclic word over +/-")->required();
    auto* hom = app.add_subcommand("hom", "Hom complex between two representations");
    hom->add_option("rep_m", file, "first representation file")->required();
    hom->add_option("rep_n", file2, "second representation file")->required();
    auto* diagram = app.add_subcommand("diagram", "chart diagrams and their bijection");
    diagram->add_option("file", file, "triangulation or tropical graph file")->required();
    auto* check = app.add_subcommand("check", "end-to-end pipeline on a triangulation");
    check->add_option("file", file, "triangulation file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        cfg.direction = parse_direction(direction_text);
        if (validate->parsed()) return cmd_validate(file, cfg);
        if (dual->parsed()) return cmd_dual(file, cfg);
        if (invariants->parsed()) return cmd_invariants(file, cfg);
        if (sweep->parsed()) return cmd_sweep(file, cfg, sweep_diagnostics);
        if (synthesize->parsed()) return cmd_synthesize(file, cfg);
        if (quiver_cmd->parsed()) return cmd_quiver(pattern, cfg);
        if (hom->parsed()) return cmd_hom(file, file2, cfg);
        if (diagram->parsed()) return cmd_diagram(file, cfg);
        if (check->parsed()) return cmd_check(file, cfg);
    } catch (const io::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
