#include "simgrav/constraints.hpp"

#include <gmpxx.h>

#include <Eigen/Dense>

#include <algorithm>

#include "simgrav/detail/union_find.hpp"

namespace simgrav {

ExtendedVariables::ExtendedVariables(const SimplicialComplex& complex) {
    for (std::size_t t = 0; t < complex.count(4); ++t)
        for (const auto& e : complex.four_simplices()[t].faces(1)) {
            index_.emplace(std::pair{t, e}, columns_.size());
            columns_.emplace_back(t, e);
        }
}

std::size_t ExtendedVariables::column(std::size_t four_simplex, const Simplex& edge) const {
    auto it = index_.find({four_simplex, edge});
    if (it == index_.end())
        throw StructureError("edge " + edge.to_string() + " is not in 4-simplex #" + std::to_string(four_simplex));
    return it->second;
}

std::vector<std::vector<std::int64_t>> ConstraintMatrix::dense() const {
    std::vector<std::vector<std::int64_t>> d(rows.size(), std::vector<std::int64_t>(columns, 0));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (const auto& e : rows[r]) d[r][e.column] += e.value;
    return d;
}

std::vector<Constraint> enumerate_constraints(const SimplicialComplex& complex) {
    std::vector<Constraint> out;
    for (std::size_t f : complex.interior_three_faces()) {
        const auto cf = complex.cofacets(3, f);
        const Simplex& face = complex.faces(3)[f];
        for (const auto& e : face.faces(1)) out.push_back(Constraint{face, e, f, cf[0], cf[1]});
    }
    return out;
}

ConstraintMatrix constraint_matrix(const std::vector<Constraint>& constraints, const ExtendedVariables& vars) {
    ConstraintMatrix m;
    m.columns = vars.size();
    m.rows.reserve(constraints.size());
    for (const auto& c : constraints)
        m.rows.push_back({{vars.column(c.plus_simplex, c.edge), +1}, {vars.column(c.minus_simplex, c.edge), -1}});
    return m;
}

std::vector<double> constraint_residuals(const std::vector<Constraint>& constraints,
                                         const PerSimplexLengths& lengths) {
    std::vector<double> r;
    r.reserve(constraints.size());
    for (const auto& c : constraints) r.push_back(lengths.at(c.plus_simplex, c.edge) - lengths.at(c.minus_simplex, c.edge));
    return r;
}

KeptSet select_kept(const SimplicialComplex& complex) {
    KeptSet k;
    k.complex_fingerprint = complex.fingerprint();
    for (const auto& edge : complex.faces(1)) {
        EdgeSelection sel{edge, edge_star_graph(complex, edge), {}, {}};
        // Arcs are already in ascending face order, i.e. lexicographic by vertex tuple.
        detail::UnionFind uf(sel.graph.nodes.size());
        for (std::size_t i = 0; i < sel.graph.arcs.size(); ++i) {
            const auto& arc = sel.graph.arcs[i];
            const auto cf = complex.cofacets(3, arc.face);
            Constraint c{complex.faces(3)[arc.face], edge, arc.face, cf[0], cf[1]};
            if (uf.unite(arc.a, arc.b)) {
                sel.forest_arcs.push_back(i);
                k.kept.push_back(c);
            } else {
                sel.redundant_arcs.push_back(i);
                k.redundant.push_back(c);
            }
        }
        k.per_edge.push_back(std::move(sel));
    }
    return k;
}

std::size_t exact_rank(std::vector<std::vector<std::int64_t>> dense) {
    if (dense.empty()) return 0;
    const std::size_t rows = dense.size();
    const std::size_t cols = dense.front().size();
    std::vector<std::vector<mpz_class>> a(rows, std::vector<mpz_class>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = static_cast<long>(dense[i][j]);

    // Bareiss: after step k every entry is a (k+1)-minor, so divisions are exact.
    mpz_class prev = 1;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && a[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[pivot], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j) {
                a[i][j] = a[rank][col] * a[i][j] - a[i][col] * a[rank][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
            a[i][col] = 0;
        }
        prev = a[rank][col];
        ++rank;
    }
    return rank;
}

std::size_t constraint_rank(const ConstraintMatrix& matrix) {
    if (matrix.rows.empty() || matrix.columns == 0) return 0;
    return exact_rank(matrix.dense());
}

std::size_t floating_rank(const ConstraintMatrix& matrix) {
    if (matrix.rows.empty() || matrix.columns == 0) return 0;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(matrix.rows.size()),
                                              static_cast<Eigen::Index>(matrix.columns));
    for (std::size_t r = 0; r < matrix.rows.size(); ++r)
        for (const auto& e : matrix.rows[r]) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(e.column)) += e.value;
    return static_cast<std::size_t>(m.fullPivLu().rank());
}

DeltaZeroLedger delta_zero_ledger(const SimplicialComplex& complex) {
    DeltaZeroLedger l;
    l.complex_fingerprint = complex.fingerprint();
    for (std::size_t f : complex.interior_three_faces()) l.interior_faces.push_back(complex.faces(3)[f]);

    std::vector<bool> closed(complex.count(2), false);
    for (std::size_t t = 0; t < complex.count(2); ++t) {
        if (triangle_star(complex, complex.faces(2)[t]).closed) {
            closed[t] = true;
            l.closed_triangles.push_back(complex.faces(2)[t]);
        }
    }
    for (std::size_t e = 0; e < complex.count(1); ++e) {
        DeltaZeroLedger::EdgeEntry entry;
        entry.edge = complex.faces(1)[e];
        for (std::size_t t : complex.cofacets(1, e))
            if (closed[t]) ++entry.closed_triangles;
        entry.cycle_rank = edge_star_graph(complex, entry.edge).cycle_rank();
        entry.excess = static_cast<std::ptrdiff_t>(entry.closed_triangles) - entry.cycle_rank;
        l.edges.push_back(entry);
    }
    return l;
}

}  // namespace simgrav
