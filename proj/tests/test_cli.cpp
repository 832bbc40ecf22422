// Spawns the command line binary against the sample data files. Expects the
// binary path and the data directory as arguments.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include "tropmir/json_io.hpp"
#include "tropmir/lattice.hpp"
#include "tropmir/ribbon.hpp"
#include "tropmir/tropical.hpp"

#include "test_util.hpp"

namespace {

std::string g_binary;
std::string g_data;

struct RunResult {
    int exit_code = -1;
    std::string output;
};

RunResult run(const std::string& args) {
    std::string cmd = g_binary + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr, "popen failed");
    RunResult r;
    char buf[4096];
    while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) r.output.append(buf, got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string data(const std::string& name) { return g_data + "/" + name; }

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

void test_check_pipeline() {
    auto unit = run("check " + data("unit_triangle.json"));
    REQUIRE_EQ(unit.exit_code, 0, "unit triangle check passes");
    REQUIRE(contains(unit.output, "check passed"), "verdict printed");
    REQUIRE(contains(unit.output, "(g, n) = (0, 3)"), "unit invariants reported");

    auto cubic = run("check " + data("dilated3.json"));
    REQUIRE_EQ(cubic.exit_code, 0, "dilated triangle check passes");
    REQUIRE(contains(cubic.output, "(g, n) = (1, 9)"), "dilated invariants reported");
    REQUIRE(contains(cubic.output, "diagram-isomorphic: pass"), "diagram stage passes");

    auto bad = run("check " + data("bad_det2.json"));
    REQUIRE_EQ(bad.exit_code, 1, "non-unimodular input fails");
    REQUIRE(contains(bad.output, "validate: fail"), "failure at the validate stage");
    REQUIRE(!contains(bad.output, "dual:"), "later stages skipped");
}

void test_parse_errors() {
    REQUIRE_EQ(run("validate " + data("bad_parse.json")).exit_code, 2, "malformed JSON exits 2");
    REQUIRE_EQ(run("check " + data("tent.json")).exit_code, 2, "check rejects tropical input");
    REQUIRE_EQ(run("quiver \"+x\"").exit_code, 2, "bad wheel pattern exits 2");
    REQUIRE_EQ(run("nonsense").exit_code, 2, "unknown subcommand exits 2");
    REQUIRE_EQ(run("--direction 0,0 sweep " + data("tent.json")).exit_code, 2,
               "zero direction rejected");
    REQUIRE_EQ(run("--format yaml check " + data("unit_triangle.json")).exit_code, 2,
               "unknown format rejected");
    REQUIRE_EQ(run("validate /no/such/file.json").exit_code, 2, "missing file exits 2");
}

void test_validate_and_invariants() {
    auto v = run("validate " + data("tent.json"));
    REQUIRE_EQ(v.exit_code, 0, "tropical file validates");
    REQUIRE(contains(v.output, "valid tropical graph"), "kind reported");

    REQUIRE(contains(run("invariants " + data("split_square.json")).output, "(g, n) = (0, 4)"),
            "square invariants");
    REQUIRE(contains(run("invariants " + data("tent.json")).output, "(g, n) = (0, 5)"),
            "tent invariants");

    auto diag = run("sweep --diagnostics " + data("tent.json"));
    REQUIRE_EQ(diag.exit_code, 0, "ray survival diagnostic passes");
    REQUIRE(contains(diag.output, "survivor ray present"), "diagnostic lines printed");
}

void test_exports_roundtrip() {
    using namespace tropmir;
    auto dual = run("--format json dual " + data("split_square.json"));
    REQUIRE_EQ(dual.exit_code, 0, "dual export succeeds");
    auto g = io::tropical_from_json(io::parse(dual.output));
    REQUIRE(tropical::validate_tropical(g).ok, "exported dual parses and validates");

    auto synth = run("--format json synthesize " + data("tent.json"));
    REQUIRE_EQ(synth.exit_code, 0, "synthesize export succeeds");
    auto doc = io::parse(synth.output);
    REQUIRE(doc["certificate"]["ok"].get<bool>(), "certificate ok in export");
    auto x = io::ribbon_from_json(doc["graph"]);
    REQUIRE(ribbon::validate_ribbon(x).ok, "exported skeleton parses and validates");
    auto inv = ribbon::surface_invariants(x);
    REQUIRE(inv.genus == 0 && inv.punctures == 5, "exported skeleton has the tent invariants");

    auto dot = run("--format dot dual " + data("split_square.json"));
    REQUIRE(dot.output.rfind("graph tropical {", 0) == 0, "dot export shape");
    auto svg = run("--format svg dual " + data("split_square.json"));
    REQUIRE(svg.output.rfind("<svg", 0) == 0, "svg export shape");
}

void test_json_reports_deterministic() {
    std::string cmd = "--format json --seed 5 check " + data("split_square.json");
    auto a = run(cmd);
    auto b = run(cmd);
    REQUIRE_EQ(a.exit_code, 0, "json check passes");
    REQUIRE(a.output == b.output, "same input and config give byte identical reports");
    auto doc = tropmir::io::parse(a.output);
    REQUIRE(doc["ok"].get<bool>(), "overall verdict in report");
    REQUIRE_EQ(doc["stages"].size(), std::size_t(7), "all stages recorded");
    REQUIRE_EQ(doc["seed"].get<std::uint64_t>(), std::uint64_t(5), "seed recorded");
}

void test_quiver_and_hom() {
    auto q = run("quiver \"++-+-\"");
    REQUIRE_EQ(q.exit_code, 0, "quiver subcommand runs");
    REQUIRE(contains(q.output, "5 vertices, 5 arrows"), "wheel quiver size");

    auto h = run("hom " + data("kronecker_rep_m.json") + " " + data("kronecker_rep_n.json"));
    REQUIRE_EQ(h.exit_code, 0, "hom subcommand runs");
    REQUIRE(contains(h.output, "(C0, C1, H0, H1) = (0, 2, 0, 2)"), "hom dimensions");
    REQUIRE(contains(h.output, "euler form = -2"), "euler form");
}

void test_diagram_subcommand() {
    auto d = run("--format json diagram " + data("unit_triangle.json"));
    REQUIRE_EQ(d.exit_code, 0, "diagram subcommand runs");
    auto doc = tropmir::io::parse(d.output);
    REQUIRE(doc["match"]["ok"].get<bool>(), "bijection verified");
    REQUIRE_EQ(doc["b_diagram"]["objects"].size(), doc["cech_diagram"]["objects"].size(),
               "object counts agree");

    auto dot = run("--format dot diagram " + data("unit_triangle.json"));
    REQUIRE(dot.output.rfind("digraph diagram {", 0) == 0, "diagram dot shape");
}

void test_direction_flag() {
    auto a = run("--direction 1,0 synthesize " + data("tent.json"));
    REQUIRE_EQ(a.exit_code, 0, "alternate sweep direction certifies");
    auto b = run("--direction -1,-1 synthesize " + data("tent.json"));
    REQUIRE_EQ(b.exit_code, 0, "negative sweep direction certifies");
    REQUIRE(contains(b.output, "certificate: ok"), "certificate reported");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: test_cli <binary> <data dir>\n";
        return 1;
    }
    g_binary = argv[1];
    g_data = argv[2];
    test_check_pipeline();
    test_parse_errors();
    test_validate_and_invariants();
    test_exports_roundtrip();
    test_json_reports_deterministic();
    test_quiver_and_hom();
    test_diagram_subcommand();
    test_direction_flag();
    std::cout << "test_cli: all checks passed\n";
    return 0;
}
