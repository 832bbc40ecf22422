#pragma once

#include <string>
#include <utility>
#include <vector>

#include "tropmir/numeric.hpp"
#include "tropmir/ribbon.hpp"

namespace tropmir::quiver {

// Finite quiver on vertices 0..vertex_count-1; parallel arrows and loops are
// allowed.
struct Quiver {
    int vertex_count = 0;
    std::vector<std::pair<int, int>> arrows;  // (source, target)

    bool operator==(const Quiver&) const = default;
};

enum class Orientation { Forward, Reversed };

// Quiver of a wheel: one vertex per arc of the central circle between
// consecutive spokes, one arrow per spoke joining the two arcs that meet
// there, pointing from the incoming arc to the outgoing arc at a '+' spoke
// and the other way at a '-' spoke. Reversing the circle orientation flips
// every arrow. The forward orientation is the default. A spokeless wheel has
// no marked points and no quiver model; it is rejected.
Quiver wheel_to_quiver(const ribbon::Wheel& w, Orientation orientation = Orientation::Forward);

// Finite-dimensional representation: a dimension per vertex and a matrix of
// shape dim(target) x dim(source) per arrow, over the rationals.
struct QuiverRep {
    std::vector<int> dims;
    std::vector<std::vector<std::vector<Rat>>> matrices;  // matrices[a][row][col]
};

struct HomDimensions {
    int c0 = 0, c1 = 0;  // Hom spaces at vertices / along arrows
    int h0 = 0, h1 = 0;  // kernel / cokernel of the differential

    bool operator==(const HomDimensions&) const = default;
};

// Two-term Hom complex between representations: C0 = sum of Hom(M_v, N_v),
// C1 = sum over arrows of Hom(M_source, N_target), differential
// f -> (f_target M_a - N_a f_source)_a; exact rational ranks.
HomDimensions hom_complex(const Quiver& q, const QuiverRep& m, const QuiverRep& n);

// <d, e> = sum_v d_v e_v - sum_a d_source e_target; equals h0 - h1 of the
// Hom complex for any representations with these dimension vectors.
long long euler_form(const Quiver& q, const std::vector<int>& d, const std::vector<int>& e);

// Rank of the Grothendieck group of finite-dimensional representations: the
// vertex count (for a wheel quiver, the number of marked points).
int k0_rank(const Quiver& q);

}  // namespace tropmir::quiver
