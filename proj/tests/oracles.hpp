#pragma once

// Independent reference computations used to cross-check the library. These
// deliberately avoid the library's own face walker and region logic.

#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "tropmir/numeric.hpp"

namespace oracles {

// Count face orbits of the permutation h -> rho(sigma(h)) built from raw
// arrays, without the library's FaceWalk machinery. Isolated vertices are not
// counted here.
inline int face_orbit_count(const std::vector<int>& sigma,
                            const std::vector<std::vector<int>>& cyclic_order) {
    const int H = static_cast<int>(sigma.size());
    std::vector<int> rho(H, -1);
    for (const auto& word : cyclic_order)
        for (std::size_t i = 0; i < word.size(); ++i)
            rho[word[i]] = word[(i + 1) % word.size()];
    std::vector<char> seen(H, 0);
    int orbits = 0;
    for (int h0 = 0; h0 < H; ++h0) {
        if (seen[h0]) continue;
        ++orbits;
        int h = h0;
        do {
            seen[h] = 1;
            h = rho[sigma[h]];
        } while (h != h0);
    }
    return orbits;
}

// First Betti number E - V + C of a multigraph given as index pairs.
inline int first_betti(int vertex_count, const std::vector<std::pair<int, int>>& edges) {
    std::vector<int> parent(vertex_count);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    };
    int components = vertex_count;
    for (auto [a, b] : edges) {
        int ra = find(a), rb = find(b);
        if (ra != rb) {
            parent[ra] = rb;
            --components;
        }
    }
    return static_cast<int>(edges.size()) - vertex_count + components;
}

// Bounded regions of a straight-line plane drawing, via planar face tracing
// on the drawn angular order and the shoelace sign. Edges are segments
// between the given exact positions; the drawing must be non-crossing.
inline int bounded_regions_by_area(const std::vector<tropmir::QVec2>& pos,
                                   const std::vector<std::pair<int, int>>& edges) {
    using tropmir::QVec2;
    using tropmir::Rat;
    struct HalfEdge {
        int from, to;
    };
    std::vector<HalfEdge> darts;
    for (auto [a, b] : edges) {
        darts.push_back({a, b});
        darts.push_back({b, a});
    }
    const int D = static_cast<int>(darts.size());
    // Outgoing darts per vertex, sorted counterclockwise by drawn direction.
    std::map<int, std::vector<int>> out;
    for (int d = 0; d < D; ++d) out[darts[d].from].push_back(d);
    for (auto& [v, list] : out) {
        std::sort(list.begin(), list.end(), [&](int x, int y) {
            QVec2 dx{pos[darts[x].to].x - pos[v].x, pos[darts[x].to].y - pos[v].y};
            QVec2 dy{pos[darts[y].to].x - pos[v].x, pos[darts[y].to].y - pos[v].y};
            return tropmir::angle_less(dx, dy);
        });
    }
    // Next dart of the face with interior on the left: the clockwise
    // predecessor of the reversal among the darts out of the head.
    auto next_in_face = [&](int d) {
        int rev = d ^ 1;
        const auto& list = out.at(darts[d].to);
        for (std::size_t i = 0; i < list.size(); ++i) {
            if (list[i] == rev) return list[(i + list.size() - 1) % list.size()];
        }
        return -1;
    };
    std::vector<char> seen(D, 0);
    int bounded = 0;
    for (int d0 = 0; d0 < D; ++d0) {
        if (seen[d0]) continue;
        Rat doubled_area = 0;
        int d = d0;
        do {
            seen[d] = 1;
            const QVec2& p = pos[darts[d].from];
            const QVec2& q = pos[darts[d].to];
            doubled_area += p.x * q.y - p.y * q.x;
            d = next_in_face(d);
        } while (d != d0);
        if (doubled_area > 0) ++bounded;
    }
    return bounded;
}

}  // namespace oracles
