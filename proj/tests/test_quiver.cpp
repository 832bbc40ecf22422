#include <algorithm>
#include <iostream>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tropmir/quiver.hpp"

#include "test_util.hpp"

using namespace tropmir;
using namespace tropmir::quiver;

namespace {

std::multiset<std::pair<int, int>> arrow_set(const Quiver& q) {
    return {q.arrows.begin(), q.arrows.end()};
}

Quiver kronecker() {
    Quiver q;
    q.vertex_count = 2;
    q.arrows = {{0, 1}, {0, 1}};
    return q;
}

// Representation with given dims and all-zero matrices.
QuiverRep zero_rep(const Quiver& q, std::vector<int> dims) {
    QuiverRep rep;
    rep.dims = std::move(dims);
    for (const auto& [s, t] : q.arrows)
        rep.matrices.emplace_back(rep.dims[t], std::vector<Rat>(rep.dims[s], Rat(0)));
    return rep;
}

void test_wheel_quivers() {
    auto q11 = wheel_to_quiver(ribbon::wheel(1, 1, "+-"));
    REQUIRE_EQ(q11.vertex_count, 2, "one vertex per arc");
    REQUIRE(arrow_set(q11) == (std::multiset<std::pair<int, int>>{{1, 0}, {1, 0}}),
            "both arrows run the same way: the Kronecker quiver");

    auto q11r = wheel_to_quiver(ribbon::wheel(1, 1, "+-"), Orientation::Reversed);
    REQUIRE(arrow_set(q11r) == (std::multiset<std::pair<int, int>>{{0, 1}, {0, 1}}),
            "reversing the orientation flips every arrow");

    auto loop = wheel_to_quiver(ribbon::wheel(1, 0, "+"));
    REQUIRE_EQ(loop.vertex_count, 1, "single arc");
    REQUIRE(arrow_set(loop) == (std::multiset<std::pair<int, int>>{{0, 0}}), "single loop arrow");

    auto cycle = wheel_to_quiver(ribbon::wheel(4, 0, "++++"));
    REQUIRE(arrow_set(cycle) ==
                (std::multiset<std::pair<int, int>>{{3, 0}, {0, 1}, {1, 2}, {2, 3}}),
            "all-plus wheel gives the cyclically oriented cycle");

    ribbon::Wheel bare;
    REQUIRE_THROWS(wheel_to_quiver(bare), "spokeless wheel has no quiver model");

    REQUIRE_EQ(k0_rank(q11), 2, "rank counts vertices");
    REQUIRE_EQ(k0_rank(wheel_to_quiver(ribbon::wheel(3, 2, "+++--"))), 5, "rank of Q(3,2)");
    REQUIRE_EQ(k0_rank(cycle), 4, "rank of Q(4,0)");
}

void test_hom_kronecker() {
    auto q = kronecker();
    auto src = zero_rep(q, {1, 0});
    auto hom_src = hom_complex(q, src, src);
    REQUIRE(hom_src == (HomDimensions{1, 0, 1, 0}), "simple at the source: only C0");

    auto sink = zero_rep(q, {0, 1});
    auto cross = hom_complex(q, src, sink);
    REQUIRE(cross == (HomDimensions{0, 2, 0, 2}), "source against sink: only C1");

    auto m = zero_rep(q, {1, 1});
    m.matrices[0][0][0] = 1;
    auto both = hom_complex(q, m, m);
    REQUIRE(both == (HomDimensions{2, 2, 1, 1}), "identity plus zero arrow: rank one");
}

void test_euler_form() {
    Quiver point;
    point.vertex_count = 1;
    REQUIRE_EQ(euler_form(point, {3}, {5}), 15LL, "no arrows: plain product");
    auto q = kronecker();
    REQUIRE_EQ(euler_form(q, {1, 0}, {0, 1}), -2LL, "Kronecker source against sink");
    REQUIRE_EQ(euler_form(q, {1, 1}, {1, 1}), 0LL, "Kronecker diagonal");
    REQUIRE_THROWS(euler_form(q, {1}, {0, 1}), "dimension vector length checked");
}

void test_shape_validation() {
    auto q = kronecker();
    auto m = zero_rep(q, {1, 1});
    auto bad = m;
    bad.matrices[0].push_back({Rat(0)});
    REQUIRE_THROWS(hom_complex(q, bad, m), "row count mismatch rejected");
    auto wide = m;
    wide.matrices[1][0].push_back(Rat(0));
    REQUIRE_THROWS(hom_complex(q, m, wide), "column count mismatch rejected");
    auto short_dims = m;
    short_dims.dims.pop_back();
    REQUIRE_THROWS(hom_complex(q, short_dims, m), "dimension vector length checked");
}

void test_random_property() {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> spoke_count(1, 7);
    std::uniform_int_distribution<int> dim(0, 3);
    std::uniform_int_distribution<int> entry(-3, 3);
    std::uniform_int_distribution<int> flip(0, 1);
    for (int trial = 0; trial < 100; ++trial) {
        int k = spoke_count(rng);
        std::string pattern;
        int n1 = 0, n2 = 0;
        for (int i = 0; i < k; ++i) {
            if (flip(rng)) {
                pattern += '+';
                ++n1;
            } else {
                pattern += '-';
                ++n2;
            }
        }
        auto w = ribbon::wheel(n1, n2, pattern);
        auto orientation = flip(rng) ? Orientation::Reversed : Orientation::Forward;
        auto q = wheel_to_quiver(w, orientation);
        REQUIRE_EQ(static_cast<int>(q.arrows.size()), n1 + n2, "one arrow per marked point");
        REQUIRE_EQ(k0_rank(q), n1 + n2, "rank equals the marked point count");

        auto other = wheel_to_quiver(w, orientation == Orientation::Forward
                                            ? Orientation::Reversed
                                            : Orientation::Forward);
        std::multiset<std::pair<int, int>> flipped;
        for (const auto& [s, t] : other.arrows) flipped.insert({t, s});
        REQUIRE(arrow_set(q) == flipped, "opposite orientation reverses all arrows");

        auto random_rep = [&]() {
            QuiverRep rep;
            for (int v = 0; v < q.vertex_count; ++v) rep.dims.push_back(dim(rng));
            for (const auto& [s, t] : q.arrows) {
                std::vector<std::vector<Rat>> mat(rep.dims[t],
                                                  std::vector<Rat>(rep.dims[s], Rat(0)));
                for (auto& row : mat)
                    for (auto& x : row) x = Rat(entry(rng));
                rep.matrices.push_back(std::move(mat));
            }
            return rep;
        };
        auto m = random_rep();
        auto n = random_rep();
        auto hom = hom_complex(q, m, n);
        REQUIRE_EQ(hom.c0 - hom.c1, hom.h0 - hom.h1, "rank-nullity across the complex");
        REQUIRE_EQ(euler_form(q, m.dims, n.dims), static_cast<long long>(hom.h0 - hom.h1),
                   "Euler form computes the homology difference");
    }
}

}  // namespace

int main() {
    test_wheel_quivers();
    test_hom_kronecker();
    test_euler_form();
    test_shape_validation();
    test_random_property();
    std::cout << "test_quiver: all checks passed\n";
    return 0;
}
