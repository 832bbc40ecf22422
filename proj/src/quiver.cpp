#include "tropmir/quiver.hpp"

#include <stdexcept>

namespace tropmir::quiver {

Quiver wheel_to_quiver(const ribbon::Wheel& w, Orientation orientation) {
    const int k = static_cast<int>(w.pattern.size());
    if (k == 0)
        throw std::invalid_argument(
            "wheel_to_quiver: spokeless wheel has no quiver model; the bare circle is handled "
            "as a special label");
    Quiver q;
    q.vertex_count = k;  // arc j runs from marked point j to marked point j+1
    for (int j = 0; j < k; ++j) {
        int incoming = (j - 1 + k) % k;
        int outgoing = j;
        bool plus = w.pattern[j] == '+';
        if (orientation == Orientation::Reversed) plus = !plus;
        if (plus) q.arrows.emplace_back(incoming, outgoing);
        else q.arrows.emplace_back(outgoing, incoming);
    }
    return q;
}

namespace {

void validate_rep(const Quiver& q, const QuiverRep& rep, const char* who) {
    if (static_cast<int>(rep.dims.size()) != q.vertex_count)
        throw std::invalid_argument(std::string(who) + ": dimension vector has " +
                                    std::to_string(rep.dims.size()) + " entries for " +
                                    std::to_string(q.vertex_count) + " vertices");
    for (int d : rep.dims)
        if (d < 0) throw std::invalid_argument(std::string(who) + ": negative dimension");
    if (rep.matrices.size() != q.arrows.size())
        throw std::invalid_argument(std::string(who) + ": " +
                                    std::to_string(rep.matrices.size()) + " matrices for " +
                                    std::to_string(q.arrows.size()) + " arrows");
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const auto& [s, t] = q.arrows[a];
        const auto& mat = rep.matrices[a];
        if (static_cast<int>(mat.size()) != rep.dims[t])
            throw std::invalid_argument(std::string(who) + ": arrow " + std::to_string(a) +
                                        " matrix has " + std::to_string(mat.size()) +
                                        " rows, want " + std::to_string(rep.dims[t]));
        for (const auto& row : mat)
            if (static_cast<int>(row.size()) != rep.dims[s])
                throw std::invalid_argument(std::string(who) + ": arrow " + std::to_string(a) +
                                            " matrix row has " + std::to_string(row.size()) +
                                            " columns, want " + std::to_string(rep.dims[s]));
    }
}

int rank(std::vector<std::vector<Rat>>& m) {
    int r = 0;
    const int rows = static_cast<int>(m.size());
    const int cols = rows == 0 ? 0 : static_cast<int>(m[0].size());
    for (int c = 0; c < cols && r < rows; ++c) {
        int pivot = -1;
        for (int i = r; i < rows; ++i)
            if (m[i][c] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(m[r], m[pivot]);
        for (int i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Rat factor = m[i][c] / m[r][c];
            for (int j = c; j < cols; ++j) m[i][j] -= factor * m[r][j];
        }
        ++r;
    }
    return r;
}

}  // namespace

HomDimensions hom_complex(const Quiver& q, const QuiverRep& m, const QuiverRep& n) {
    validate_rep(q, m, "hom_complex: left representation");
    validate_rep(q, n, "hom_complex: right representation");
    const int V = q.vertex_count;
    std::vector<int> offset0(V + 1, 0);
    for (int v = 0; v < V; ++v) offset0[v + 1] = offset0[v] + m.dims[v] * n.dims[v];
    const int c0 = offset0[V];
    int c1 = 0;
    for (const auto& [s, t] : q.arrows) c1 += m.dims[s] * n.dims[t];

    // Differential matrix, one row per C1 coordinate, one column per C0
    // coordinate; entry blocks follow d(f)_a = f_t M_a - N_a f_s.
    std::vector<std::vector<Rat>> d(c1, std::vector<Rat>(c0, Rat(0)));
    int row_base = 0;
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const auto& [s, t] = q.arrows[a];
        for (int r = 0; r < n.dims[t]; ++r)
            for (int c = 0; c < m.dims[s]; ++c) {
                int row = row_base + r * m.dims[s] + c;
                for (int k = 0; k < m.dims[t]; ++k)
                    d[row][offset0[t] + r * m.dims[t] + k] += m.matrices[a][k][c];
                for (int k = 0; k < n.dims[s]; ++k)
                    d[row][offset0[s] + k * m.dims[s] + c] -= n.matrices[a][r][k];
            }
        row_base += m.dims[s] * n.dims[t];
    }
    int r = c0 == 0 || c1 == 0 ? 0 : rank(d);
    return {c0, c1, c0 - r, c1 - r};
}

long long euler_form(const Quiver& q, const std::vector<int>& d, const std::vector<int>& e) {
    if (static_cast<int>(d.size()) != q.vertex_count ||
        static_cast<int>(e.size()) != q.vertex_count)
        throw std::invalid_argument("euler_form: dimension vectors must match the vertex count");
    long long total = 0;
    for (int v = 0; v < q.vertex_count; ++v)
        total += static_cast<long long>(d[v]) * e[v];
    for (const auto& [s, t] : q.arrows) total -= static_cast<long long>(d[s]) * e[t];
    return total;
}

int k0_rank(const Quiver& q) { return q.vertex_count; }

}  // namespace tropmir::quiver
