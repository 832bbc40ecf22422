// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Each criterion is independent and uses its own seeds.

#include <array>
#include <exception>
#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "tropmir/charts.hpp"
#include "tropmir/lattice.hpp"
#include "tropmir/quiver.hpp"
#include "tropmir/ribbon.hpp"
#include "tropmir/skeleton.hpp"
#include "tropmir/tropical.hpp"

#include "generators.hpp"
#include "oracles.hpp"

using namespace tropmir;

namespace {

int failures = 0;

void report(int id, const std::string& title, bool ok) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << id << ": " << title << "\n";
    if (!ok) ++failures;
}

bool guarded(const std::string& title, bool (*body)()) {
    try {
        return body();
    } catch (const std::exception& e) {
        std::cerr << title << ": unexpected exception: " << e.what() << "\n";
        return false;
    }
}

lattice::Triangulation from_generated(const gen::GeneratedTriangulation& g) {
    lattice::Triangulation t;
    t.points = g.points;
    t.triangles = g.triangles;
    t.polytope = lattice::convex_hull_polytope(t.points);
    return t;
}

lattice::Triangulation dilated_triangle(int d) {
    lattice::Triangulation t;
    std::vector<std::vector<int>> index(d + 1, std::vector<int>(d + 1, -1));
    for (int j = 0; j <= d; ++j)
        for (int i = 0; i + j <= d; ++i) {
            index[i][j] = static_cast<int>(t.points.size());
            t.points.push_back({i, j});
        }
    for (int j = 0; j < d; ++j)
        for (int i = 0; i + j < d; ++i) {
            t.triangles.push_back({index[i][j], index[i + 1][j], index[i][j + 1]});
            if (i + j < d - 1)
                t.triangles.push_back({index[i + 1][j], index[i + 1][j + 1], index[i][j + 1]});
        }
    t.polytope = lattice::convex_hull_polytope(t.points);
    return t;
}

std::vector<lattice::Triangulation> corpus() {
    static std::vector<lattice::Triangulation> c = [] {
        std::vector<lattice::Triangulation> out;
        std::mt19937_64 rng(20260814);
        for (int i = 0; i < 200; ++i)
            out.push_back(from_generated(gen::random_unimodular_triangulation(rng)));
        return out;
    }();
    return c;
}

int cycle_face_count(const ribbon::RibbonGraph& x) {
    int n = 0;
    for (const auto& f : ribbon::faces(x))
        if (f.is_cycle) ++n;
    return n;
}

void label_all_faces(ribbon::RibbonGraph& x) {
    auto fs = ribbon::faces(x);
    for (std::size_t i = 0; i < fs.size(); ++i) {
        ribbon::FaceAnchor a;
        if (fs[i].walk.empty())
            a.isolated_vertex = fs[i].isolated_vertex;
        else
            a.dart = fs[i].walk.front();
        x.face_labels["f" + std::to_string(i)] = a;
    }
}

bool criterion_pants() {
    using ribbon::SurfaceInvariants;
    auto th = ribbon::theta();
    auto db = ribbon::dumbbell();
    bool ok = ribbon::surface_invariants(th) == (SurfaceInvariants{0, 3});
    ok = ok && ribbon::surface_invariants(db) == (SurfaceInvariants{0, 3});
    ok = ok && cycle_face_count(th) == 3;
    ok = ok && cycle_face_count(db) == 2;
    return ok;
}

bool criterion_standard_skeleta() {
    for (int g = 1; g <= 3; ++g)
        for (int n = 1; n <= 4; ++n) {
            auto s = ribbon::standard_skeleton(g, n);
            if (!(ribbon::surface_invariants(s) == (ribbon::SurfaceInvariants{g, n})))
                return false;
        }
    return true;
}

bool criterion_duals_valid() {
    for (const auto& t : corpus()) {
        auto g = lattice::dual_tropical_graph(t);
        if (!tropical::check_balanced(g).ok) return false;
        if (!tropical::check_nondegenerate(g).ok) return false;
        if (g.infinite_edges.size() < 2) return false;
    }
    return true;
}

bool criterion_sweep_sound() {
    for (const auto& t : corpus()) {
        auto g = lattice::dual_tropical_graph(t);
        auto sweep = tropical::sweep_decompose(g, {0, 1});
        for (const auto& s : sweep.steps)
            if (s.glue_edges.size() > 2) return false;
        if (!(tropical::replay_sweep(sweep) == g)) return false;
    }
    return true;
}

bool check_synthesis(const tropical::TropicalGraph& g, std::uint64_t seed) {
    skeleton::SynthOptions opts;
    opts.seed = seed;
    auto res = skeleton::synthesize(g, opts);
    if (!res.certificate.ok) {
        std::cerr << "synthesis certificate failed: " << res.certificate.failure << "\n";
        return false;
    }
    if (!(ribbon::surface_invariants(res.graph) == tropical::mirror_invariants(g))) return false;
    for (const auto& step : res.certificate.steps)
        if (step.cover && !(step.cover->ok && step.cover->spoke_sides_match)) return false;
    return true;
}

bool criterion_flagship() {
    const std::array<ribbon::SurfaceInvariants, 4> expected = {
        {{0, 3}, {0, 6}, {1, 9}, {3, 12}}};
    for (int d = 1; d <= 4; ++d) {
        auto t = dilated_triangle(d);
        auto g = lattice::dual_tropical_graph(t);
        auto mirror = tropical::mirror_invariants(g);
        if (!(mirror == expected[d - 1])) return false;
        if (mirror.genus != (d - 1) * (d - 2) / 2) return false;
        std::vector<QVec2> pos;
        for (const auto& v : g.vertices) pos.push_back(v.pos);
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : g.finite_edges) edges.emplace_back(e.a, e.b);
        if (oracles::bounded_regions_by_area(pos, edges) != mirror.genus) return false;
        if (!check_synthesis(g, 0)) return false;
    }
    std::uint64_t seed = 0;
    for (const auto& t : corpus())
        if (!check_synthesis(lattice::dual_tropical_graph(t), seed++)) return false;
    return true;
}

bool criterion_diagrams() {
    for (const auto& t : corpus()) {
        auto b = charts::build_B_diagram(lattice::dual_tropical_graph(t));
        auto cech = charts::build_cech_diagram(t);
        if (!charts::diagram_isomorphic(b, cech).ok) return false;
    }
    return true;
}

bool criterion_quiver_homology() {
    quiver::Quiver kron;
    kron.vertex_count = 2;
    kron.arrows = {{0, 1}, {0, 1}};
    if (quiver::euler_form(kron, {1, 0}, {0, 1}) != -2) return false;
    quiver::QuiverRep m, n;
    m.dims = {1, 0};
    m.matrices = {{}, {}};
    n.dims = {0, 1};
    n.matrices = {{{}}, {{}}};
    auto h = quiver::hom_complex(kron, m, n);
    if (!(h == quiver::HomDimensions{0, 2, 0, 2})) return false;

    std::mt19937_64 rng(424242);
    auto random_rep = [&](const quiver::Quiver& q) {
        quiver::QuiverRep r;
        for (int v = 0; v < q.vertex_count; ++v) r.dims.push_back(static_cast<int>(rng() % 5));
        for (const auto& [s, t] : q.arrows) {
            std::vector<std::vector<Rat>> mat(r.dims[t], std::vector<Rat>(r.dims[s]));
            for (auto& row : mat)
                for (auto& cell : row) cell = Rat(static_cast<int>(rng() % 7) - 3);
            r.matrices.push_back(mat);
        }
        return r;
    };
    for (int trial = 0; trial < 100; ++trial) {
        int len = 1 + static_cast<int>(rng() % 6);
        std::string pattern;
        int n1 = 0, n2 = 0;
        for (int i = 0; i < len; ++i) {
            bool plus = rng() % 2 == 0;
            pattern += plus ? '+' : '-';
            (plus ? n1 : n2)++;
        }
        auto q = quiver::wheel_to_quiver(ribbon::wheel(n1, n2, pattern));
        auto d = random_rep(q);
        auto e = random_rep(q);
        auto hd = quiver::hom_complex(q, d, e);
        if (hd.c0 - hd.c1 != hd.h0 - hd.h1) return false;
        if (quiver::euler_form(q, d.dims, e.dims) != hd.h0 - hd.h1) return false;
    }
    return true;
}

bool criterion_move_invariance() {
    std::mt19937_64 rng(97);
    for (int trial = 0; trial < 500; ++trial) {
        auto g = gen::random_ribbon(rng);
        label_all_faces(g);
        auto before = ribbon::surface_invariants(g);
        auto labels = g.face_labels.size();
        int steps = 1 + static_cast<int>(rng() % 6);
        for (int s = 0; s < steps; ++s) {
            g = ribbon::apply_move(g, gen::random_move(rng, g));
            if (!(ribbon::surface_invariants(g) == before)) return false;
            if (g.face_labels.size() != labels) return false;
        }
    }
    return true;
}

bool criterion_ensure_cycle() {
    auto g = ribbon::dumbbell();
    std::string target;
    auto fs = ribbon::faces(g);
    for (std::size_t i = 0; i < fs.size(); ++i)
        if (!fs[i].is_cycle) {
            g.face_labels["p"] = {fs[i].walk.front(), -1};
            target = "p";
        }
    if (target.empty()) return false;
    auto [h, log] = ribbon::ensure_cycle_at_face(g, {{target}, {}, false, 0, 256});
    if (!(ribbon::surface_invariants(h) == (ribbon::SurfaceInvariants{0, 3}))) return false;
    if (!ribbon::has_cycle_at_face(h, target)) return false;
    if (!log.resynthesized) {
        auto replay = g;
        for (const auto& m : log.moves) {
            replay = ribbon::apply_move(replay, m);
            if (!(ribbon::surface_invariants(replay) == (ribbon::SurfaceInvariants{0, 3})))
                return false;
        }
    }
    return true;
}

}  // namespace

int main() {
    struct Entry {
        int id;
        const char* title;
        bool (*body)();
    };
    const std::vector<Entry> entries = {
        {1, "pants skeleta report (0,3) with 3 and 2 cycle faces", criterion_pants},
        {2, "standard skeleta report (g,n) for g in 1..3 and n in 1..4",
         criterion_standard_skeleta},
        {3, "200 random duals are balanced, nondegenerate, with at least 2 rays",
         criterion_duals_valid},
        {4, "sweep decompositions replay exactly and glue along at most 2 edges",
         criterion_sweep_sound},
        {5, "synthesized skeleta match mirror invariants with certified gluings",
         criterion_flagship},
        {6, "chart diagrams of a triangulation and its dual are isomorphic",
         criterion_diagrams},
        {7, "quiver Euler forms match the Hom complex cohomology", criterion_quiver_homology},
        {8, "500 random move sequences preserve invariants and labels",
         criterion_move_invariance},
        {9, "cycle preparation on the dumbbell yields a verified cycle", criterion_ensure_cycle},
    };
    for (const auto& e : entries) report(e.id, e.title, guarded(e.title, e.body));
    if (failures > 0) {
        std::cout << failures << " criteria failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
