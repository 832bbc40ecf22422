#pragma once

#include "tropmir/numeric.hpp"
#include "tropmir/ribbon.hpp"
#include "tropmir/tropical.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tropmir::skeleton {

// Face label carried by the skeleton face that must eventually host the
// gluing for the tropical edge with this global id.
std::string open_label(int edge_id);

struct SynthOptions {
    std::uint64_t seed = 0;
    IVec2 direction{0, 1};
    int budget = 256;  // move search budget per cycle preparation
};

// One sweep step realized as a pants gluing.
struct SynthStep {
    int vertex = -1;                 // tropical vertex handled by the step
    std::string pants;               // "theta" or "dumbbell"
    std::vector<int> glued;          // tropical edge ids consumed
    std::vector<int> opened;         // tropical edge ids opened
    std::vector<int> offsets;        // rotation offset per identified circle
    bool merged_pieces = false;      // two-edge step joining two skeleton pieces
    std::vector<ribbon::MoveLog> preparations;       // cycle preparations, in call order
    std::optional<ribbon::GluingCertificate> cover;  // absent for the base case
    std::vector<int> open_after;     // open edge ids after the step, ascending
};

struct SynthCertificate {
    std::vector<SynthStep> steps;
    ribbon::SurfaceInvariants surface;  // of the synthesized graph
    ribbon::SurfaceInvariants mirror;   // of the tropical side
    bool invariants_match = false;
    bool labels_match = false;          // final open labels are exactly the rays
    std::uint64_t seed = 0;
    IVec2 direction{0, 1};
    bool ok = false;
    std::string failure;                // empty when ok
};

struct SynthResult {
    ribbon::RibbonGraph graph;
    SynthCertificate certificate;
};

// Pants-gluing induction along a sweep of g: a fresh theta piece per local
// minimum, one-circle theta gluings, two-circle dumbbell gluings (run as two
// one-circle gluings when the step joins two pieces). Every gluing is
// certified by gluing_cover_check on the glued result.
SynthResult synthesize(const tropical::TropicalGraph& g, const SynthOptions& opts = {});

}  // namespace tropmir::skeleton
