#pragma once

#include "tropmir/charts.hpp"
#include "tropmir/lattice.hpp"
#include "tropmir/quiver.hpp"
#include "tropmir/ribbon.hpp"
#include "tropmir/skeleton.hpp"
#include "tropmir/tropical.hpp"

#include "json.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace tropmir::io {

using json = nlohmann::ordered_json;

// Raised for malformed input files; semantic problems go through the
// validation reports instead.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

json parse(const std::string& text);

// Number atoms: values that fit a JSON integer are written as numbers, larger
// ones and true fractions as "p/q" strings; the parsers accept both forms.
json int_to_json(const Int& v);
Int int_from_json(const json& j);
json rat_to_json(const Rat& v);
Rat rat_from_json(const json& j);

json to_json(const lattice::Triangulation& t);
lattice::Triangulation triangulation_from_json(const json& j);

json to_json(const tropical::TropicalGraph& g);
tropical::TropicalGraph tropical_from_json(const json& j);

json to_json(const ribbon::RibbonGraph& x);
ribbon::RibbonGraph ribbon_from_json(const json& j);

json to_json(const quiver::Quiver& q);
quiver::Quiver quiver_from_json(const json& j);

// Representation file: the quiver together with dims and matrices.
json rep_to_json(const quiver::Quiver& q, const quiver::QuiverRep& rep);
std::pair<quiver::Quiver, quiver::QuiverRep> rep_from_json(const json& j);

json to_json(const charts::ChartDiagram& d);
charts::ChartDiagram diagram_from_json(const json& j);

// Reports, one-way.
json to_json(const ValidationReport& r);
json to_json(const ribbon::SurfaceInvariants& inv);
json to_json(const tropical::SweepDecomposition& sweep);
json to_json(const ribbon::MoveLog& log);
json to_json(const ribbon::GluingCertificate& cert);
json to_json(const skeleton::SynthCertificate& cert);
json to_json(const charts::DiagramMatch& m);

// Which kind of object an input file holds.
enum class FileKind { triangulation, tropical, ribbon };
FileKind detect_kind(const json& j);

struct PipelineOptions {
    std::uint64_t seed = 0;
    IVec2 direction{0, 1};
    int budget = 256;
};

// Staged end-to-end run on a triangulation: validation, dual graph, mirror
// invariants, skeleton synthesis, surface invariants, chart diagrams, and the
// diagram bijection. Stages after the first failure are skipped. The report
// has one entry per executed stage plus an overall verdict, and is byte
// identical across runs with the same input and options.
json pipeline_report(const lattice::Triangulation& t, const PipelineOptions& opts = {});

}  // namespace tropmir::io
