// Python bindings: thin wrappers over the library that speak the same JSON
// documents as the file formats, so everything round-trips with the CLI.

#include <cstdint>
#include <string>
#include <utility>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tropmir/charts.hpp"
#include "tropmir/json_io.hpp"
#include "tropmir/lattice.hpp"
#include "tropmir/quiver.hpp"
#include "tropmir/ribbon.hpp"
#include "tropmir/skeleton.hpp"
#include "tropmir/tropical.hpp"
#include "tropmir/viz.hpp"

namespace py = pybind11;

namespace {

using namespace tropmir;
using io::json;

using Direction = std::pair<long long, long long>;

IVec2 to_ivec(const Direction& d) { return {Int(d.first), Int(d.second)}; }

tropical::TropicalGraph load_tropical(const json& j) {
    if (io::detect_kind(j) == io::FileKind::triangulation) {
        auto t = io::triangulation_from_json(j);
        auto report = lattice::validate_triangulation(t);
        if (!report.ok)
            throw std::invalid_argument(report.errors.empty() ? "invalid triangulation"
                                                              : report.errors.front());
        return lattice::dual_tropical_graph(t);
    }
    if (io::detect_kind(j) == io::FileKind::tropical) return io::tropical_from_json(j);
    throw io::ParseError("expected a triangulation or tropical graph document");
}

std::string validate_text(const std::string& text) {
    json j = io::parse(text);
    ValidationReport report;
    switch (io::detect_kind(j)) {
        case io::FileKind::triangulation:
            report = lattice::validate_triangulation(io::triangulation_from_json(j));
            break;
        case io::FileKind::tropical:
            report = tropical::validate_tropical(io::tropical_from_json(j));
            break;
        default:
            report = ribbon::validate_ribbon(io::ribbon_from_json(j));
            break;
    }
    return io::to_json(report).dump(2);
}

std::string dual_text(const std::string& text) {
    json j = io::parse(text);
    if (io::detect_kind(j) != io::FileKind::triangulation)
        throw io::ParseError("dual expects a triangulation document");
    return io::to_json(load_tropical(j)).dump(2);
}

std::pair<int, int> invariants_of(const std::string& text) {
    json j = io::parse(text);
    ribbon::SurfaceInvariants inv;
    if (io::detect_kind(j) == io::FileKind::ribbon) {
        auto x = io::ribbon_from_json(j);
        auto report = ribbon::validate_ribbon(x);
        if (!report.ok)
            throw std::invalid_argument(report.errors.empty() ? "invalid ribbon graph"
                                                              : report.errors.front());
        inv = ribbon::surface_invariants(x);
    } else {
        inv = tropical::mirror_invariants(load_tropical(j));
    }
    return {inv.genus, inv.punctures};
}

std::string sweep_text(const std::string& text, const Direction& direction) {
    auto g = load_tropical(io::parse(text));
    return io::to_json(tropical::sweep_decompose(g, to_ivec(direction))).dump(2);
}

std::string synthesize_text(const std::string& text, std::uint64_t seed,
                            const Direction& direction, int budget) {
    auto g = load_tropical(io::parse(text));
    skeleton::SynthOptions opts;
    opts.seed = seed;
    opts.direction = to_ivec(direction);
    opts.budget = budget;
    auto res = skeleton::synthesize(g, opts);
    json out;
    out["graph"] = io::to_json(res.graph);
    out["certificate"] = io::to_json(res.certificate);
    return out.dump(2);
}

std::string wheel_quiver_text(const std::string& pattern) {
    int n1 = 0, n2 = 0;
    for (char c : pattern) {
        if (c == '+')
            ++n1;
        else if (c == '-')
            ++n2;
        else
            throw std::invalid_argument("wheel pattern must use only '+' and '-'");
    }
    if (pattern.empty()) throw std::invalid_argument("wheel pattern must be nonempty");
    return io::to_json(quiver::wheel_to_quiver(ribbon::wheel(n1, n2, pattern))).dump(2);
}

py::tuple hom_of(const std::string& rep_m, const std::string& rep_n) {
    auto [qm, m] = io::rep_from_json(io::parse(rep_m));
    auto [qn, n] = io::rep_from_json(io::parse(rep_n));
    if (!(qm == qn)) throw std::invalid_argument("representations use different quivers");
    auto h = quiver::hom_complex(qm, m, n);
    long long euler = quiver::euler_form(qm, m.dims, n.dims);
    return py::make_tuple(h.c0, h.c1, h.h0, h.h1, euler);
}

std::string diagram_text(const std::string& text) {
    json j = io::parse(text);
    if (io::detect_kind(j) == io::FileKind::tropical) {
        json out;
        out["b_diagram"] = io::to_json(charts::build_B_diagram(io::tropical_from_json(j)));
        return out.dump(2);
    }
    if (io::detect_kind(j) != io::FileKind::triangulation)
        throw io::ParseError("diagram expects a triangulation or tropical graph document");
    auto t = io::triangulation_from_json(j);
    auto b = charts::build_B_diagram(lattice::dual_tropical_graph(t));
    auto cech = charts::build_cech_diagram(t);
    json out;
    out["b_diagram"] = io::to_json(b);
    out["cech_diagram"] = io::to_json(cech);
    out["match"] = io::to_json(charts::diagram_isomorphic(b, cech));
    return out.dump(2);
}

std::string check_text(const std::string& text, std::uint64_t seed, const Direction& direction,
                       int budget) {
    json j = io::parse(text);
    if (io::detect_kind(j) != io::FileKind::triangulation)
        throw io::ParseError("check expects a triangulation document");
    io::PipelineOptions opts;
    opts.seed = seed;
    opts.direction = to_ivec(direction);
    opts.budget = budget;
    return io::pipeline_report(io::triangulation_from_json(j), opts).dump(2);
}

std::string tropical_dot_text(const std::string& text) {
    return viz::tropical_dot(load_tropical(io::parse(text)));
}

std::string tropical_svg_text(const std::string& text) {
    return viz::tropical_svg(load_tropical(io::parse(text)));
}

std::string ribbon_dot_text(const std::string& text) {
    return viz::ribbon_dot(io::ribbon_from_json(io::parse(text)));
}

std::string ribbon_svg_text(const std::string& text) {
    return viz::ribbon_svg(io::ribbon_from_json(io::parse(text)));
}

}  // namespace

PYBIND11_MODULE(_tropmir, m) {
    m.doc() = "combinatorial mirror symmetry workbench";
    py::register_exception<io::ParseError>(m, "ParseError", PyExc_ValueError);

    m.def("validate", &validate_text, py::arg("text"),
          "Validation report (JSON) for a triangulation, tropical graph, or ribbon graph");
    m.def("dual", &dual_text, py::arg("text"),
          "Dual tropical graph (JSON) of a triangulation");
    m.def("invariants", &invariants_of, py::arg("text"),
          "(genus, punctures) of the input's surface");
    m.def("sweep", &sweep_text, py::arg("text"), py::arg("direction") = Direction{0, 1},
          "Sweep decomposition report (JSON)");
    m.def("synthesize", &synthesize_text, py::arg("text"), py::arg("seed") = 0,
          py::arg("direction") = Direction{0, 1}, py::arg("budget") = 256,
          "Skeleton and synthesis certificate (JSON)");
    m.def("wheel_quiver", &wheel_quiver_text, py::arg("pattern"),
          "Quiver (JSON) of a wheel pattern over '+'/'-'");
    m.def("hom", &hom_of, py::arg("rep_m"), py::arg("rep_n"),
          "(C0, C1, H0, H1, euler) between two representations (JSON documents)");
    m.def("diagram", &diagram_text, py::arg("text"),
          "Chart diagrams and their bijection (JSON)");
    m.def("check", &check_text, py::arg("text"), py::arg("seed") = 0,
          py::arg("direction") = Direction{0, 1}, py::arg("budget") = 256,
          "Staged end-to-end report (JSON) for a triangulation");
    m.def("tropical_dot", &tropical_dot_text, py::arg("text"));
    m.def("tropical_svg", &tropical_svg_text, py::arg("text"));
    m.def("ribbon_dot", &ribbon_dot_text, py::arg("text"));
    m.def("ribbon_svg", &ribbon_svg_text, py::arg("text"));
}
